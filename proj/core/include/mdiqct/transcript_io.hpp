// Copyright 2026 The MDI-QCT Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Line-delimited transcript records. Field names are stable; absent values
// are written as null (JSON) or an empty cell (CSV).

#pragma once

#include <string>
#include <string_view>

#include "mdiqct/protocol.hpp"

namespace mdiqct {

/// One JSON object, no trailing newline.
std::string to_json_line(const Transcript& transcript);

/// Inverse of to_json_line. Throws ParameterError on malformed records.
Transcript from_json_line(std::string_view line);

std::string_view csv_header();
std::string to_csv_row(const Transcript& transcript);

}  // namespace mdiqct
