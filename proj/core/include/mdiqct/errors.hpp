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

#pragma once

#include <stdexcept>
#include <string>

namespace mdiqct {

/// A numeric parameter is outside the range its owning model accepts.
class ParameterError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A caller violated an operation's precondition (e.g. an unnormalized state).
class PreconditionError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// A strategy, mode and configuration do not fit together.
class ConfigurationError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A party tried to act before the protocol reached the matching step.
class ProtocolOrderError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// The restart loop hit its round cap without a successful Bell measurement.
/// Distinct from an abort: nobody was caught cheating.
class RoundsExhausted : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace mdiqct
