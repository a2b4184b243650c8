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
#include <memory>
#include <string_view>

#include "mdiqct/protocol.hpp"

namespace mdiqct {

enum class CheatState : std::uint8_t { Plus, Minus };

std::string_view to_string(CheatState state) noexcept;
CheatState parse_cheat_state(std::string_view name);

/// Dishonest Bob: replaces the Bell measurement with the Helstrom measurement
/// for rho_0 vs rho_1 on Alice's photon, then picks b' = a_guess XOR target.
/// Runs in mdi and baseline modes.
std::unique_ptr<AdversaryStrategy> bob_med_attack(double y, int target_coin);

/// Dishonest Alice with a colluding black box. Alice sends nothing; the box
/// discriminates Bob's photon with an optimal four-state measurement (a
/// uniformly random honest basis), leaks the guess to Alice and announces a
/// uniformly random Bell outcome. Alice then reveals a = b' XOR target and a
/// basis that keeps (outcome, reveal, guess) out of the zero cells, choosing
/// uniformly when both bases qualify.
std::unique_ptr<AdversaryStrategy> alice_individual_attack(double y, int target_coin);

/// Dishonest Alice sending |+> (or |->) into an honest Bell measurement and
/// revealing a = b' XOR target with the basis whose state is closest to the
/// sent one: alpha = a for |+>, alpha = 1 - a for |->.
std::unique_ptr<AdversaryStrategy> alice_coherent_attack(double y, int target_coin, CheatState sent = CheatState::Plus);

/// Detector blinding against the baseline protocol: Alice chooses which of
/// Bob's detections succeed, learns his (basis, result) record and reveals a
/// label consistent with it. Rejected in MDI modes.
std::unique_ptr<AdversaryStrategy> alice_blinding_attack(int target_coin);

inline constexpr std::array<std::string_view, 5> kAdversaryNames = {"none", "bob-med", "alice-individual",
                                                                    "alice-coherent", "alice-blinding"};

/// Strategy by CLI name. "none" yields an honest strategy that still records
/// `target_coin`, so honest runs report how often the coin hits it.
std::unique_ptr<AdversaryStrategy> make_adversary(std::string_view name, double y, int target_coin,
                                                  CheatState sent = CheatState::Plus);

}  // namespace mdiqct
