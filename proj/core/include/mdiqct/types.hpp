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

#include <array>
#include <cstdint>
#include <string_view>

#include "mdiqct/errors.hpp"

namespace mdiqct {

/// Classical label (basis, bit) of an honest state |phi_{basis,bit}>.
class StateLabel {
   public:
    constexpr StateLabel() = default;
    constexpr StateLabel(int basis, int bit) : basis_(check(basis)), bit_(check(bit)) {}

    constexpr int basis() const noexcept { return basis_; }
    constexpr int bit() const noexcept { return bit_; }

    /// Table row/column order: phi_00, phi_01, phi_10, phi_11.
    constexpr int index() const noexcept { return 2 * basis_ + bit_; }
    static constexpr StateLabel from_index(int index) { return StateLabel(index >> 1, index & 1); }

    friend constexpr bool operator==(const StateLabel&, const StateLabel&) = default;

   private:
    static constexpr std::uint8_t check(int v) {
        if (v != 0 && v != 1) {
            throw ParameterError("state label components must be 0 or 1");
        }
        return static_cast<std::uint8_t>(v);
    }

    std::uint8_t basis_ = 0;
    std::uint8_t bit_ = 0;
};

inline constexpr std::array<StateLabel, 4> kAllLabels = {StateLabel(0, 0), StateLabel(0, 1), StateLabel(1, 0),
                                                         StateLabel(1, 1)};

/// The black box's only output.
enum class BsmOutcome : std::uint8_t { PsiPlus, PsiMinus, Failure };

inline constexpr std::array<BsmOutcome, 2> kBellOutcomes = {BsmOutcome::PsiPlus, BsmOutcome::PsiMinus};

constexpr std::string_view to_string(BsmOutcome outcome) noexcept {
    switch (outcome) {
        case BsmOutcome::PsiPlus:
            return "psi+";
        case BsmOutcome::PsiMinus:
            return "psi-";
        case BsmOutcome::Failure:
            break;
    }
    return "failure";
}

}  // namespace mdiqct
