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

// Reference values written down independently of the library: symbolic
// tables typed in by hand, formulas substituted term by term, and a brute
// force enumeration for the individual attack. Nothing here includes mdiqct.

#pragma once

#include <array>
#include <cmath>

namespace oracle {

// Verification table as symbolic cell codes. Rows are Alice's phi_00, phi_01, phi_10,
// phi_11; columns Bob's in the same order.
enum Code { D, Q, Z, H };  // 2y(1-y), (1-2y)^2/2, 0, 1/2

inline constexpr std::array<std::array<Code, 4>, 4> kPsiPlus = {{
    {D, Q, Z, H},
    {Q, D, H, Z},
    {Z, H, D, Q},
    {H, Z, Q, D},
}};
inline constexpr std::array<std::array<Code, 4>, 4> kPsiMinus = {{
    {Z, H, D, Q},
    {H, Z, Q, D},
    {D, Q, Z, H},
    {Q, D, H, Z},
}};

inline double code_value(Code c, double y) {
    switch (c) {
        case D:
            return 2.0 * y * (1.0 - y);
        case Q:
            return 0.5 * (1.0 - 2.0 * y) * (1.0 - 2.0 * y);
        case Z:
            return 0.0;
        case H:
            break;
    }
    return 0.5;
}

/// outcome 0 = psi+, 1 = psi-.
inline double table_i(int outcome, int alice, int bob, double y) {
    return code_value(outcome == 0 ? kPsiPlus[alice][bob] : kPsiMinus[alice][bob], y);
}

inline bool zero_cell(int outcome, int alice, int bob) {
    return (outcome == 0 ? kPsiPlus[alice][bob] : kPsiMinus[alice][bob]) == Z;
}

/// Normalized table for |+> (sent = 0) or |-> (sent = 1) against Bob's state.
inline double table_ii(int outcome, int sent, int bob, double y) {
    const double s = std::sqrt(y * (1.0 - y));
    const double p = (1.0 + 2.0 * s) / 2.0;
    const double m = (1.0 - 2.0 * s) / 2.0;
    // |+>, psi+: p m m p ; psi- swaps p and m ; |-> swaps again.
    const bool high_first = (outcome == 0) == (sent == 0);
    const bool outer = bob == 0 || bob == 3;
    return (outer == high_first) ? p : m;
}

inline double transmittance(double km, double db_per_km) { return std::pow(10.0, -db_per_km * km / 10.0); }

/// Honest abort per gate, substituted term by term.
inline double eq3(double ta, double tb, double eta, double d) {
    const double t1 = (1 - ta) * (1 - tb) * 2 * d * d;
    const double t2 = ta * (1 - tb) * eta * d;
    const double t3 = tb * (1 - ta) * eta * d;
    const double t4 = ta * (1 - tb) * (1 - eta) * 2 * d * d;
    const double t5 = tb * (1 - ta) * (1 - eta) * 2 * d * d;
    const double t6 = ta * tb * (1 - eta) * (1 - eta) * 2 * d * d;
    return 2.0 * 0.25 * (t1 + t2 + t3 + t4 + t5 + t6);
}

inline double bob_cheat(double y) { return y; }
inline double alice_coherent(double y) { return (3.0 + 2.0 * std::sqrt(y * (1.0 - y))) / 4.0; }
inline constexpr double kFairY = 0.9;
inline constexpr double kFairBias = 0.4;
inline constexpr double kIndividualTarget = 0.75;
inline constexpr double kIndividualWrongGuessTarget = 0.5;

// Real amplitudes (H, V) of |phi_{alpha,a}>.
inline std::array<double, 2> honest_state(int alpha, int a, double y) {
    const double s = alpha == 0 ? 1.0 : -1.0;
    if (a == 0) {
        return {std::sqrt(y), s * std::sqrt(1.0 - y)};
    }
    return {std::sqrt(1.0 - y), -s * std::sqrt(y)};
}

struct IndividualAttack {
    double success;
    double success_given_correct_guess;
    double success_given_wrong_guess;
};

/// Exact enumeration of the individual attack: Bob's label, the box's
/// measurement basis and result, the announced outcome and b'. Alice
/// reveals a = b' XOR target and a basis that is not a zero cell against the
/// box's guess, uniformly when both bases qualify.
inline IndividualAttack individual_attack(double y, int target) {
    double success = 0.0;
    double correct = 0.0;
    double correct_success = 0.0;
    double wrong = 0.0;
    double wrong_success = 0.0;
    for (int bob = 0; bob < 4; ++bob) {
        const auto phi_b = honest_state(bob >> 1, bob & 1, y);
        for (int gamma = 0; gamma < 2; ++gamma) {
            const auto e0 = honest_state(gamma, 0, y);
            const double amp = e0[0] * phi_b[0] + e0[1] * phi_b[1];
            const double p0 = amp * amp;
            for (int g = 0; g < 2; ++g) {
                const double pg = g == 0 ? p0 : 1.0 - p0;
                const int guess = 2 * gamma + g;
                for (int outcome = 0; outcome < 2; ++outcome) {
                    for (int bprime = 0; bprime < 2; ++bprime) {
                        const double w = 0.25 * 0.5 * pg * 0.5 * 0.5;
                        const int a = bprime ^ target;
                        const bool ok0 = !zero_cell(outcome, a, guess);
                        const bool ok1 = !zero_cell(outcome, 2 + a, guess);
                        double pass = 0.0;
                        if (ok0 && ok1) {
                            pass = 0.5 * (!zero_cell(outcome, a, bob) ? 1.0 : 0.0) +
                                   0.5 * (!zero_cell(outcome, 2 + a, bob) ? 1.0 : 0.0);
                        } else {
                            const int alpha = ok0 ? 0 : 1;
                            pass = !zero_cell(outcome, 2 * alpha + a, bob) ? 1.0 : 0.0;
                        }
                        success += w * pass;
                        if (guess == bob) {
                            correct += w;
                            correct_success += w * pass;
                        } else {
                            wrong += w;
                            wrong_success += w * pass;
                        }
                    }
                }
            }
        }
    }
    return {success, correct_success / correct, wrong_success / wrong};
}

}  // namespace oracle
