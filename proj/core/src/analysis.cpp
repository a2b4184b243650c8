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

#include "mdiqct/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace mdiqct {

// ---------------------------------------------------------------------------
// Honest abort

double honest_abort_closed_form(const ChannelParams& channel, const DetectorParams& detector) {
    channel.validate();
    detector.validate();
    const double tA = channel.transmittance_a();
    const double tB = channel.transmittance_b();
    const double eta = detector.efficiency;
    const double d = detector.dark_count;
    return 2.0 * 0.25 *
           ((1 - tA) * (1 - tB) * 2 * d * d + tA * (1 - tB) * eta * d + tB * (1 - tA) * eta * d +
            tA * (1 - tB) * (1 - eta) * 2 * d * d + tB * (1 - tA) * (1 - eta) * 2 * d * d +
            tA * tB * (1 - eta) * (1 - eta) * 2 * d * d);
}

double honest_success_per_round(const ChannelParams& channel, const DetectorParams& detector, DarkCountModel model) {
    const BsmDevice device = BsmDevice::from_channel(channel, detector, model);
    // Each row of the verification table sums to one per outcome, so the
    // uniform honest ensemble identifies psi+ and psi- with 1/4 each.
    return device.event_probabilities().both_detected * 0.5 + 2.0 * device.dark_assisted_outcome_probability();
}

double honest_abort_per_round(const ChannelParams& channel, const DetectorParams& detector, DarkCountModel model) {
    const BsmDevice device = BsmDevice::from_channel(channel, detector, model);
    // Four of sixteen label pairs are zero cells for either outcome.
    return 2.0 * 0.25 * device.dark_assisted_outcome_probability();
}

double honest_abort_per_run(const ChannelParams& channel, const DetectorParams& detector, DarkCountModel model) {
    const double success = honest_success_per_round(channel, detector, model);
    if (success <= 0.0) {
        return 0.0;
    }
    return honest_abort_per_round(channel, detector, model) / success;
}

double dark_dark_fraction(const ChannelParams& channel, const DetectorParams& detector, DarkCountModel model) {
    const BsmDevice device = BsmDevice::from_channel(channel, detector, model);
    const double total = device.dark_assisted_outcome_probability();
    return total > 0.0 ? device.dark_dark_outcome_probability() / total : 0.0;
}

std::vector<SweepPoint> sweep_distance(double lmin, double lmax, double step, const DetectorParams& detector,
                                       double loss_db_per_km, DarkCountModel model) {
    if (!(lmin >= 0.0) || !(lmax >= lmin) || !std::isfinite(lmax)) {
        throw ParameterError("sweep needs 0 <= lmin <= lmax");
    }
    if (!(step > 0.0)) {
        throw ParameterError("sweep step must be positive");
    }
    detector.validate();
    const auto count = static_cast<std::size_t>(std::floor((lmax - lmin) / step + 1e-9)) + 1;
    std::vector<SweepPoint> points;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double length = lmin + static_cast<double>(i) * step;
        const ChannelParams channel{length, length, loss_db_per_km};
        points.push_back(SweepPoint{length, honest_abort_closed_form(channel, detector),
                                    honest_abort_per_run(channel, detector, model),
                                    dark_dark_fraction(channel, detector, model)});
    }
    return points;
}

// ---------------------------------------------------------------------------
// Cheating

double cheat_bob(double y) {
    validate_y(y);
    return y;
}

double cheat_alice_coherent(double y) {
    validate_y(y);
    return (3.0 + 2.0 * std::sqrt(y * (1.0 - y))) / 4.0;
}

double cheat_alice_individual() { return 0.5 + 0.5 * 0.5; }

double alice_individual_wrong_guess_value(double y) {
    validate_y(y);
    return 0.5 + y * (1.0 - y);
}

double alice_individual_strategy_value(double y) { return 0.5 * 1.0 + 0.5 * alice_individual_wrong_guess_value(y); }

FairPoint solve_fair_y(double tolerance) {
    if (!(tolerance > 0.0)) {
        throw ParameterError("tolerance must be positive");
    }
    // g(y) = coherent(y) - y is positive near 1/2 and negative near 1.
    auto g = [](double y) { return (3.0 + 2.0 * std::sqrt(y * (1.0 - y))) / 4.0 - y; };
    double lo = 0.5;
    double hi = 1.0;
    int iterations = 0;
    while (hi - lo > tolerance && iterations < 200) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) {
            break;
        }
        if (g(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        ++iterations;
    }
    const double y = 0.5 * (lo + hi);
    return FairPoint{y, cheat_alice_coherent(y) - 0.5, g(y), iterations};
}

// ---------------------------------------------------------------------------
// Statistics

Estimate Estimate::from_counts(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) {
        throw ParameterError("an estimate needs at least one trial");
    }
    const double mean = static_cast<double>(successes) / static_cast<double>(trials);
    return Estimate{mean, std::sqrt(mean * (1.0 - mean) / static_cast<double>(trials)), successes, trials, seed};
}

double z_score(const Estimate& estimate, double expected) {
    const double diff = std::abs(estimate.mean - expected);
    const double se = std::sqrt(expected * (1.0 - expected) / static_cast<double>(estimate.trials));
    if (se == 0.0) {
        return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return diff / se;
}

double z_difference(const Estimate& a, const Estimate& b) {
    const double se = std::hypot(a.standard_error, b.standard_error);
    const double diff = std::abs(a.mean - b.mean);
    if (se == 0.0) {
        return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return diff / se;
}

double chi_square_uniform_p_value(std::uint64_t zeros, std::uint64_t ones) {
    const double n = static_cast<double>(zeros + ones);
    if (n == 0.0) {
        throw ParameterError("chi-square test needs at least one sample");
    }
    const double expected = n / 2.0;
    const double d0 = static_cast<double>(zeros) - expected;
    const double d1 = static_cast<double>(ones) - expected;
    const double chi2 = (d0 * d0 + d1 * d1) / expected;
    // Survival function of chi-square with one degree of freedom.
    return std::erfc(std::sqrt(chi2 / 2.0));
}

// ---------------------------------------------------------------------------
// Parallel harness

namespace {

unsigned resolve_workers(unsigned workers, std::uint64_t trials) {
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    return static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(trials, 1)));
}

// Runs body(begin, end, worker) over contiguous index chunks.
template <typename Body>
void parallel_chunks(std::uint64_t trials, unsigned workers, Body body) {
    workers = resolve_workers(workers, trials);
    if (workers == 1) {
        body(0, trials, 0u);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = std::min(trials, w * chunk);
        const std::uint64_t end = std::min(trials, begin + chunk);
        threads.emplace_back([&, w, begin, end] {
            try {
                body(begin, end, w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace

std::vector<std::uint64_t> tally(std::uint64_t trials, std::uint64_t seed, unsigned workers, std::size_t categories,
                                 const TrialClassifier& classify) {
    if (categories == 0) {
        throw ParameterError("tally needs at least one category");
    }
    const unsigned n = resolve_workers(workers, trials);
    std::vector<std::vector<std::uint64_t>> partial(n, std::vector<std::uint64_t>(categories, 0));
    parallel_chunks(trials, n, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
        auto& counts = partial[w];
        for (std::uint64_t i = begin; i < end; ++i) {
            TrialStreams streams = TrialStreams::derive(seed, i);
            const std::size_t category = classify(streams, i);
            if (category >= categories) {
                throw PreconditionError("trial classifier returned an out-of-range category");
            }
            ++counts[category];
        }
    });
    std::vector<std::uint64_t> total(categories, 0);
    for (const auto& counts : partial) {
        for (std::size_t c = 0; c < categories; ++c) {
            total[c] += counts[c];
        }
    }
    return total;
}

std::vector<Transcript> run_many(const RunConfig& config, const AdversaryStrategy& strategy, std::uint64_t trials,
                                 std::uint64_t seed, unsigned workers) {
    config.validate();
    check_compatible(config, strategy);
    std::vector<Transcript> out(trials);
    parallel_chunks(trials, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
        for (std::uint64_t i = begin; i < end; ++i) {
            TrialStreams streams = TrialStreams::derive(seed, i);
            out[i] = run_with_adversary(config, strategy, streams);
        }
    });
    return out;
}

AttackSummary summarize_attack(const RunConfig& config, const AdversaryStrategy& strategy, std::uint64_t trials,
                               std::uint64_t seed, unsigned workers) {
    config.validate();
    check_compatible(config, strategy);
    // category = success + 2 * abort + 4 * guess, guess: 0 none, 1 correct, 2 wrong
    const auto counts = tally(trials, seed, workers, 12, [&](TrialStreams& s, std::uint64_t) -> std::size_t {
        const Transcript t = run_with_adversary(config, strategy, s);
        std::size_t guess = 0;
        if (t.leaked_guess) {
            guess = *t.leaked_guess == t.bob_label ? 1 : 2;
        }
        return (t.adversary_succeeded() ? 1 : 0) + (t.accepted() ? 0 : 2) + 4 * guess;
    });
    AttackSummary summary;
    summary.trials = trials;
    for (std::size_t c = 0; c < counts.size(); ++c) {
        const bool success = (c & 1) != 0;
        const bool abort = (c & 2) != 0;
        const std::size_t guess = c / 4;
        summary.successes += success ? counts[c] : 0;
        summary.aborts += abort ? counts[c] : 0;
        if (guess == 1) {
            summary.guess_correct += counts[c];
            summary.guess_correct_successes += success ? counts[c] : 0;
        } else if (guess == 2) {
            summary.guess_wrong += counts[c];
            summary.guess_wrong_successes += success ? counts[c] : 0;
        }
    }
    return summary;
}

Estimate estimate(const Scenario& scenario, std::uint64_t trials, std::uint64_t seed, unsigned workers) {
    if (trials < 1) {
        throw ParameterError("trials must be at least 1");
    }
    const RunConfig& config = scenario.config;
    config.validate();

    const auto& name = scenario.name;
    if (name == "honest-coin-uniformity" || name == "honest-abort") {
        if (config.mode != Mode::Mdi) {
            throw ConfigurationError(name + " needs mdi mode");
        }
        const bool coin = name == "honest-coin-uniformity";
        const HonestStrategy honest;
        // 0: success, 1: other.
        const auto counts = tally(trials, seed, workers, 2, [&](TrialStreams& s, std::uint64_t) -> std::size_t {
            const Transcript t = run_with_adversary(config, honest, s);
            const bool hit = coin ? (t.coin && *t.coin == 0) : !t.accepted();
            return hit ? 0 : 1;
        });
        return Estimate::from_counts(counts[0], trials, seed);
    }
    if (name == "honest-abort-per-round") {
        const BsmDevice device = BsmDevice::from_channel(config.channel, config.detector, config.dark_count_model);
        const HonestStates states(config.y);
        const auto counts = tally(trials, seed, workers, 2, [&](TrialStreams& s, std::uint64_t) -> std::size_t {
            const auto ra = s.alice();
            const auto rb = s.bob();
            const StateLabel alice(static_cast<int>(ra >> 63), static_cast<int>((ra >> 62) & 1));
            const StateLabel bob(static_cast<int>(rb >> 63), static_cast<int>((rb >> 62) & 1));
            const BsmSample sample = device.sample(states[alice], states[bob], s.device);
            const bool abort = sample.outcome != BsmOutcome::Failure &&
                               VerificationTable::is_zero_cell(sample.outcome, alice, bob);
            return abort ? 0 : 1;
        });
        return Estimate::from_counts(counts[0], trials, seed);
    }
    if (name == "adversary-success") {
        const auto strategy = make_adversary(scenario.adversary, config.y, scenario.target_coin, scenario.sent_state);
        check_compatible(config, *strategy);
        const auto counts = tally(trials, seed, workers, 2, [&](TrialStreams& s, std::uint64_t) -> std::size_t {
            return run_with_adversary(config, *strategy, s).adversary_succeeded() ? 0 : 1;
        });
        return Estimate::from_counts(counts[0], trials, seed);
    }
    if (name == "table-cell") {
        if (scenario.cell_outcome == BsmOutcome::Failure) {
            throw ParameterError("table cells exist for psi+ and psi- only");
        }
        const HonestStates states(config.y);
        const PureState& a = states[scenario.cell_alice];
        const PureState& b = states[scenario.cell_bob];
        // 0: requested outcome, 1: other identified outcome, 2: failure.
        const auto counts = tally(trials, seed, workers, 3, [&](TrialStreams& s, std::uint64_t) -> std::size_t {
            const BsmOutcome o = sample_bsm_ideal(a, b, s.device);
            if (o == BsmOutcome::Failure) {
                return 2;
            }
            return o == scenario.cell_outcome ? 0 : 1;
        });
        if (scenario.normalize_to_identified) {
            const std::uint64_t identified = counts[0] + counts[1];
            if (identified == 0) {
                throw RoundsExhausted("no identified Bell outcome in any trial");
            }
            return Estimate::from_counts(counts[0], identified, seed);
        }
        return Estimate::from_counts(counts[0], trials, seed);
    }
    if (name == "weak-coherent-no-success") {
        if (config.mode != Mode::MdiWeakCoherent) {
            throw ConfigurationError(name + " needs mdi-weak-coherent mode");
        }
        const auto counts = tally(trials, seed, workers, 2, [&](TrialStreams& s, std::uint64_t) -> std::size_t {
            return run_weak_coherent(config, s).abort_reason == AbortReason::NoSuccessfulSlot ? 0 : 1;
        });
        return Estimate::from_counts(counts[0], trials, seed);
    }
    throw ParameterError("unknown scenario '" + name + "'");
}

}  // namespace mdiqct
