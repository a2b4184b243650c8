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

// Closed forms, the fairness solver and the seeded Monte Carlo harness.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mdiqct/adversaries.hpp"
#include "mdiqct/devices.hpp"
#include "mdiqct/protocol.hpp"

namespace mdiqct {

// ---------------------------------------------------------------------------
// Honest abort probability

/// Per-gate probability that a Bell outcome is produced with dark-count help
/// and lands in a zero cell, evaluated term by term:
///
///   Pr_H = 2 * 1/4 * [ (1-tA)(1-tB) 2d^2 + tA(1-tB) eta d + tB(1-tA) eta d
///                     + tA(1-tB)(1-eta) 2d^2 + tB(1-tA)(1-eta) 2d^2
///                     + tA tB (1-eta)^2 2d^2 ]
double honest_abort_closed_form(const ChannelParams& channel, const DetectorParams& detector);

/// Probability that one gate identifies a Bell state in an honest run,
/// averaged over the uniformly random honest labels (photon pairs succeed
/// with probability 1/2 on average).
double honest_success_per_round(const ChannelParams& channel, const DetectorParams& detector,
                                DarkCountModel model = DarkCountModel::Standard);

/// Per-gate abort probability under `model`; equals honest_abort_closed_form
/// for DarkCountModel::Standard.
double honest_abort_per_round(const ChannelParams& channel, const DetectorParams& detector,
                              DarkCountModel model = DarkCountModel::Standard);

/// Abort probability of a whole honest run with restarts, i.e. conditioned
/// on the gate that finally succeeds: per-round abort / per-round success.
double honest_abort_per_run(const ChannelParams& channel, const DetectorParams& detector,
                            DarkCountModel model = DarkCountModel::Standard);

/// Fraction of dark-count-assisted Bell outcomes caused by two dark counts.
double dark_dark_fraction(const ChannelParams& channel, const DetectorParams& detector,
                          DarkCountModel model = DarkCountModel::Standard);

struct SweepPoint {
    double length_km;            ///< l_A = l_B = L
    double pr_h;                 ///< per-gate closed form
    double pr_h_per_run;         ///< conditioned on the successful gate
    double dark_dark_fraction;
};

/// Closed-form honest-abort curve for symmetric links, L = lmin, lmin+step, ... <= lmax.
/// `model` applies to the per-run and dark-dark columns; pr_h is always the
/// per-gate closed form.
std::vector<SweepPoint> sweep_distance(double lmin, double lmax, double step, const DetectorParams& detector,
                                       double loss_db_per_km = kDefaultLossDbPerKm,
                                       DarkCountModel model = DarkCountModel::Standard);

// ---------------------------------------------------------------------------
// Cheating probabilities and fairness

/// Dishonest Bob, optimal discrimination of Alice's commitment: y.
double cheat_bob(double y);
/// Dishonest Alice, coherent attack: (3 + 2 sqrt(y(1-y))) / 4.
double cheat_alice_coherent(double y);
/// Dishonest Alice, individual attack, reference value 1/2 + 1/2 * 1/2.
double cheat_alice_individual();
/// Exact success of alice_individual_attack as implemented:
/// 3/4 + y(1-y)/2. A wrong guess shares Bob's bit with probability
/// (2y-1)^2 (always caught when Alice needs that bit) and has the other bit
/// with probability 4y(1-y) (caught half the time), giving 1/2 + y(1-y).
double alice_individual_strategy_value(double y);
/// Success of alice_individual_attack conditioned on a wrong guess: 1/2 + y(1-y).
double alice_individual_wrong_guess_value(double y);

struct FairPoint {
    double y;
    double bias;      ///< cheat value - 1/2
    double residual;  ///< cheat_alice_coherent(y) - y
    int iterations;
};

/// Bisection for cheat_alice_coherent(y) = cheat_bob(y) on (1/2, 1).
FairPoint solve_fair_y(double tolerance);

// ---------------------------------------------------------------------------
// Monte Carlo

struct Estimate {
    double mean = 0.0;
    double standard_error = 0.0;  ///< sqrt(mean (1 - mean) / trials)
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;

    static Estimate from_counts(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed);
};

/// |observed - expected| in units of the binomial standard error at the
/// expected probability. Zero when both agree exactly, infinity when the
/// expected value is 0 or 1 and the observation differs.
double z_score(const Estimate& estimate, double expected);

/// Two-sample z statistic for the difference of two estimates.
double z_difference(const Estimate& a, const Estimate& b);

/// p-value of the chi-square test (1 degree of freedom) for a fair coin.
double chi_square_uniform_p_value(std::uint64_t zeros, std::uint64_t ones);

/// Calls classify(streams, index) for trials 0..trials-1, each with streams
/// derived from (seed, index), and counts the returned categories. Counts are
/// summed per worker, so the result does not depend on `workers`.
/// workers == 0 picks std::thread::hardware_concurrency().
using TrialClassifier = std::function<std::size_t(TrialStreams&, std::uint64_t)>;
std::vector<std::uint64_t> tally(std::uint64_t trials, std::uint64_t seed, unsigned workers, std::size_t categories,
                                 const TrialClassifier& classify);

/// Runs `trials` protocol executions; transcript i uses streams derived from (seed, i).
std::vector<Transcript> run_many(const RunConfig& config, const AdversaryStrategy& strategy, std::uint64_t trials,
                                 std::uint64_t seed, unsigned workers = 0);

/// Counts from many runs of one strategy. Guess counts are filled when the
/// strategy leaks a guess of Bob's label (alice-individual).
struct AttackSummary {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t aborts = 0;
    std::uint64_t guess_correct = 0;
    std::uint64_t guess_correct_successes = 0;
    std::uint64_t guess_wrong = 0;
    std::uint64_t guess_wrong_successes = 0;
};

AttackSummary summarize_attack(const RunConfig& config, const AdversaryStrategy& strategy, std::uint64_t trials,
                               std::uint64_t seed, unsigned workers = 0);

/// Named Monte Carlo experiment.
struct Scenario {
    /// One of kScenarioNames.
    std::string name;
    RunConfig config{};
    std::string adversary = "none";
    int target_coin = 0;
    CheatState sent_state = CheatState::Plus;
    /// table-cell scenarios: the cell being sampled.
    BsmOutcome cell_outcome = BsmOutcome::PsiPlus;
    StateLabel cell_alice{};
    StateLabel cell_bob{};
    bool normalize_to_identified = false;
};

/// honest-coin-uniformity: P(coin = 0) over honest runs.
/// honest-abort:           P(abort) over honest runs with restarts.
/// honest-abort-per-round: P(gate yields a zero-cell Bell outcome), one gate per trial.
/// adversary-success:      P(accepted with coin = target) for `adversary`.
/// table-cell:             P(cell_outcome | cell_alice, cell_bob) from the ideal
///                         Bell measurement; with normalize_to_identified the
///                         denominator is the identified outcomes only.
/// weak-coherent-no-success: P(no slot of K succeeds).
inline constexpr std::array<std::string_view, 6> kScenarioNames = {
    "honest-coin-uniformity", "honest-abort",  "honest-abort-per-round", "adversary-success",
    "table-cell",             "weak-coherent-no-success"};

/// Throws ParameterError for an unknown scenario name and ConfigurationError
/// for an adversary/mode mismatch, before any trial runs. Identical
/// (scenario, trials, seed) give identical estimates for any worker count.
Estimate estimate(const Scenario& scenario, std::uint64_t trials, std::uint64_t seed, unsigned workers = 0);

}  // namespace mdiqct
