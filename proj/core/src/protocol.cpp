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

#include "mdiqct/protocol.hpp"

#include <cmath>
#include <string>

namespace mdiqct {

std::string_view to_string(Mode mode) noexcept {
    switch (mode) {
        case Mode::Mdi:
            return "mdi";
        case Mode::MdiWeakCoherent:
            return "mdi-weak-coherent";
        case Mode::Baseline:
            break;
    }
    return "baseline";
}

std::string_view to_string(Verdict verdict) noexcept { return verdict == Verdict::Accept ? "accept" : "abort"; }

std::string_view to_string(AbortReason reason) noexcept {
    switch (reason) {
        case AbortReason::None:
            return "none";
        case AbortReason::CheatingDetected:
            return "cheating-detected";
        case AbortReason::NoSuccessfulSlot:
            break;
    }
    return "no-successful-slot";
}

std::string_view to_string(AdversaryRole role) noexcept {
    switch (role) {
        case AdversaryRole::None:
            return "none";
        case AdversaryRole::Alice:
            return "alice";
        case AdversaryRole::Bob:
            return "bob";
        case AdversaryRole::BlackBoxWithAlice:
            break;
    }
    return "blackbox-colluding-with-alice";
}

Mode parse_mode(std::string_view name) {
    for (Mode m : {Mode::Mdi, Mode::MdiWeakCoherent, Mode::Baseline}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw ParameterError("unknown mode '" + std::string(name) + "'");
}

void RunConfig::validate() const {
    validate_y(y);
    channel.validate();
    detector.validate();
    // Rejects d > 1/2 for every mode that goes through the coincidence model.
    BsmDevice(1.0, 1.0, detector, dark_count_model);
    if (max_rounds < 1) {
        throw ParameterError("max_rounds must be at least 1");
    }
    const bool weak_sources = source_a.kind() == SourceModel::Kind::WeakCoherent &&
                              source_b.kind() == SourceModel::Kind::WeakCoherent;
    const bool single_sources = source_a.kind() == SourceModel::Kind::SinglePhoton &&
                                source_b.kind() == SourceModel::Kind::SinglePhoton;
    switch (mode) {
        case Mode::Mdi:
        case Mode::Baseline:
            if (!single_sources) {
                throw ConfigurationError(std::string(to_string(mode)) + " mode requires single-photon sources");
            }
            break;
        case Mode::MdiWeakCoherent:
            if (!weak_sources) {
                throw ConfigurationError("mdi-weak-coherent mode requires weak coherent sources on both sides");
            }
            if (pulses < 1) {
                throw ParameterError("pulse count K must be at least 1");
            }
            break;
    }
}

Verdict verify(BsmOutcome outcome, StateLabel revealed, StateLabel bob, double y) {
    validate_y(y);
    if (outcome == BsmOutcome::Failure) {
        throw PreconditionError("verification needs an identified Bell state");
    }
    return VerificationTable::is_zero_cell(outcome, revealed, bob) ? Verdict::Abort : Verdict::Accept;
}

// ---------------------------------------------------------------------------
// Session

void Session::require(Phase expected, const char* action) const {
    if (phase_ != expected) {
        throw ProtocolOrderError(std::string("protocol step out of order: ") + action);
    }
}

int Session::challenge() const {
    if (phase_ == Phase::Preparing || phase_ == Phase::Measured) {
        throw ProtocolOrderError("b' is not fixed before step 3");
    }
    return challenge_;
}

BsmOutcome Session::announced_outcome() const {
    if (phase_ == Phase::Preparing) {
        throw ProtocolOrderError("no Bell outcome has been announced yet");
    }
    return outcome_;
}

void Session::announce(BsmOutcome outcome) {
    require(Phase::Preparing, "announce");
    if (outcome == BsmOutcome::Failure) {
        throw PreconditionError("failures restart step 1 and are not announced as results");
    }
    outcome_ = outcome;
    phase_ = Phase::Measured;
}

void Session::issue_challenge(int bit) {
    require(Phase::Measured, "challenge");
    challenge_ = bit & 1;
    phase_ = Phase::Challenged;
}

void Session::receive_reveal(StateLabel) {
    require(Phase::Challenged, "reveal");
    phase_ = Phase::Revealed;
}

void Session::finish() {
    require(Phase::Revealed, "verify");
    phase_ = Phase::Finished;
}

int SessionView::challenge() const { return session_->challenge(); }
BsmOutcome SessionView::announced_outcome() const { return session_->announced_outcome(); }

// ---------------------------------------------------------------------------
// Honest agents

namespace {

StateLabel random_label(Rng& rng) {
    const auto r = rng();
    return StateLabel(static_cast<int>(r >> 63), static_cast<int>((r >> 62) & 1));
}

class HonestAlice final : public AliceAgent {
   public:
    explicit HonestAlice(double y) : states_(y) {}

    std::optional<PureState> prepare(const SessionView&, Rng& rng) override {
        label_ = random_label(rng);
        return states_[label_];
    }

    StateLabel reveal(const SessionView&, const SideChannel&, Rng&) override { return label_; }

   private:
    HonestStates states_;
    StateLabel label_{};
};

class HonestBob final : public BobAgent {
   public:
    explicit HonestBob(double y) : states_(y) {}

    PreparedState prepare(Rng& rng) override {
        const StateLabel label = random_label(rng);
        return {label, states_[label]};
    }

    StateLabel measure(const PureState& photon, Rng& rng) override {
        const int basis = rng.bit();
        const bool zero = sample_projection(states_[StateLabel(basis, 0)], photon, rng);
        return StateLabel(basis, zero ? 0 : 1);
    }

    int challenge(const SideChannel&, Rng& rng) override { return rng.bit(); }

   private:
    HonestStates states_;
};

class DeviceBox final : public BlackBox {
   public:
    explicit DeviceBox(const BsmDevice& device) : device_(device) {}

    BoxResult measure(const std::optional<PureState>& alice_photon, const PureState& bob_photon,
                      Rng& rng) override {
        if (!alice_photon) {
            // Only Bob's photon can arrive; treat Alice's link as dark.
            const BsmDevice lone(0.0, device_.transmittance_b(), device_.detector(), device_.model());
            return {lone.sample(bob_photon, bob_photon, rng), {}};
        }
        return {device_.sample(*alice_photon, bob_photon, rng), {}};
    }

   private:
    BsmDevice device_;
};

struct Agents {
    std::unique_ptr<AliceAgent> alice;
    std::unique_ptr<BobAgent> bob;
    std::unique_ptr<BlackBox> box;
    bool alice_honest;
    bool bob_honest;
    bool box_honest;
};

Agents assemble(const RunConfig& config, const AdversaryStrategy& strategy) {
    Agents agents{strategy.make_alice(config), strategy.make_bob(config), strategy.make_box(config), false, false,
                  false};
    agents.alice_honest = agents.alice == nullptr;
    agents.bob_honest = agents.bob == nullptr;
    agents.box_honest = agents.box == nullptr;
    if (agents.alice_honest) {
        agents.alice = make_honest_alice(config.y);
    }
    if (agents.bob_honest) {
        agents.bob = make_honest_bob(config.y);
    }
    if (agents.box_honest) {
        agents.box = make_device_box(BsmDevice::from_channel(config.channel, config.detector, config.dark_count_model));
    }
    return agents;
}

SideChannel for_alice(const SideChannel& leak) { return SideChannel{leak.bob_state_guess, leak.bob_detection_record, {}}; }
SideChannel for_bob(const SideChannel& leak) { return SideChannel{{}, {}, leak.alice_bit_guess}; }

Transcript finish_run(Session& session, Transcript t, BobAgent& bob, AliceAgent& alice, const SideChannel& leak,
                      Rng& alice_rng, Rng& bob_rng, double y,
                      const std::optional<StateLabel>& baseline_record = std::nullopt) {
    const SessionView view(session);

    session.issue_challenge(bob.challenge(for_bob(leak), bob_rng));
    t.bob_random_bit = session.challenge();

    const StateLabel revealed = alice.reveal(view, for_alice(leak), alice_rng);
    session.receive_reveal(revealed);
    t.revealed_label = revealed;

    bool caught = false;
    if (bob.verifies()) {
        if (baseline_record) {
            caught = baseline_record->basis() == revealed.basis() && baseline_record->bit() != revealed.bit();
        } else {
            caught = verify(t.outcome, revealed, t.bob_label, y) == Verdict::Abort;
        }
    }
    session.finish();

    if (caught) {
        t.verdict = Verdict::Abort;
        t.abort_reason = AbortReason::CheatingDetected;
    } else {
        t.verdict = Verdict::Accept;
        t.coin = revealed.bit() ^ *t.bob_random_bit;
    }
    return t;
}

Transcript run_mdi(const RunConfig& config, const AdversaryStrategy& strategy, TrialStreams& streams) {
    Agents agents = assemble(config, strategy);
    Rng& alice_rng = agents.alice_honest ? streams.alice : streams.adversary;
    Rng& bob_rng = agents.bob_honest ? streams.bob : streams.adversary;
    Rng& box_rng = agents.box_honest ? streams.device : streams.adversary;

    Session session;
    const SessionView view(session);
    Transcript t;
    t.mode = config.mode;
    t.adversary = strategy.name();
    t.target_coin = strategy.target_coin();

    BoxResult result;
    for (;;) {
        if (t.rounds == config.max_rounds) {
            throw RoundsExhausted("no Bell state identified within " + std::to_string(config.max_rounds) + " rounds");
        }
        ++t.rounds;
        const std::optional<PureState> alice_photon = agents.alice->prepare(view, alice_rng);
        const PreparedState bob_state = agents.bob->prepare(bob_rng);
        result = agents.box->measure(alice_photon, bob_state.photon, box_rng);
        if (result.sample.outcome != BsmOutcome::Failure) {
            t.bob_label = bob_state.label;
            break;
        }
    }
    session.announce(result.sample.outcome);
    t.outcome = result.sample.outcome;
    if (agents.box_honest) {
        t.cause = result.sample.cause;
    }
    t.leaked_guess = result.leak.bob_state_guess;
    return finish_run(session, std::move(t), *agents.bob, *agents.alice, result.leak, alice_rng, bob_rng, config.y);
}

Transcript run_baseline_impl(const RunConfig& config, const AdversaryStrategy& strategy, TrialStreams& streams) {
    Agents agents = assemble(config, strategy);
    Rng& alice_rng = agents.alice_honest ? streams.alice : streams.adversary;
    Rng& bob_rng = agents.bob_honest ? streams.bob : streams.adversary;
    const double detect = transmittance(config.channel.length_a_km + config.channel.length_b_km,
                                        config.channel.loss_db_per_km) *
                          config.detector.efficiency;
    const bool blinded = strategy.controls_bob_detectors();

    Session session;
    const SessionView view(session);
    Transcript t;
    t.mode = config.mode;
    t.adversary = strategy.name();
    t.target_coin = strategy.target_coin();

    SideChannel leak;
    StateLabel record;
    for (;;) {
        if (t.rounds == config.max_rounds) {
            throw RoundsExhausted("no detection within " + std::to_string(config.max_rounds) + " rounds");
        }
        ++t.rounds;
        const std::optional<PureState> photon = agents.alice->prepare(view, alice_rng);
        if (!photon) {
            throw ConfigurationError("baseline protocol needs Alice to send a photon every round");
        }
        // Blinded detectors click whenever Alice wants them to.
        if (blinded || streams.device.bernoulli(detect)) {
            record = agents.bob->measure(*photon, bob_rng);
            break;
        }
    }
    if (blinded) {
        leak.bob_detection_record = record;
    }
    // The baseline has no Bell outcome; psi+ stands for "Bob detected the photon".
    session.announce(BsmOutcome::PsiPlus);
    t.outcome = BsmOutcome::PsiPlus;
    t.bob_label = record;
    return finish_run(session, std::move(t), *agents.bob, *agents.alice, leak, alice_rng, bob_rng, config.y, record);
}

double effective_transmittance(double t, unsigned photons) {
    return photons == 0 ? 0.0 : 1.0 - std::pow(1.0 - t, static_cast<double>(photons));
}

}  // namespace

std::unique_ptr<AliceAgent> make_honest_alice(double y) { return std::make_unique<HonestAlice>(y); }
std::unique_ptr<BobAgent> make_honest_bob(double y) { return std::make_unique<HonestBob>(y); }
std::unique_ptr<BlackBox> make_device_box(const BsmDevice& device) { return std::make_unique<DeviceBox>(device); }

void check_compatible(const RunConfig& config, const AdversaryStrategy& strategy) {
    if (!strategy.supports(config.mode)) {
        std::string msg = "adversary '" + std::string(strategy.name()) + "' cannot run in " +
                          std::string(to_string(config.mode)) + " mode";
        if (strategy.controls_bob_detectors() && config.mode != Mode::Baseline) {
            msg += ": the Bell-measurement interface offers no detection-control channel";
        }
        throw ConfigurationError(msg);
    }
}

Transcript run_honest(const RunConfig& config, TrialStreams& streams) {
    if (config.mode != Mode::Mdi) {
        throw ConfigurationError("run_honest expects mdi mode");
    }
    config.validate();
    return run_mdi(config, HonestStrategy{}, streams);
}

Transcript run_with_adversary(const RunConfig& config, const AdversaryStrategy& strategy, TrialStreams& streams) {
    config.validate();
    check_compatible(config, strategy);
    switch (config.mode) {
        case Mode::Mdi:
            return run_mdi(config, strategy, streams);
        case Mode::Baseline:
            return run_baseline_impl(config, strategy, streams);
        case Mode::MdiWeakCoherent:
            if (strategy.role() != AdversaryRole::None) {
                throw ConfigurationError("weak-coherent mode runs honest parties only");
            }
            return run_weak_coherent(config, streams);
    }
    throw ConfigurationError("unknown mode");
}

Transcript run_weak_coherent(const RunConfig& config, TrialStreams& streams) {
    if (config.mode != Mode::MdiWeakCoherent) {
        throw ConfigurationError("run_weak_coherent expects mdi-weak-coherent mode");
    }
    config.validate();
    const HonestStates states(config.y);
    const double ta = config.channel.transmittance_a();
    const double tb = config.channel.transmittance_b();

    Session session;
    Transcript t;
    t.mode = config.mode;

    StateLabel alice_label;
    for (unsigned slot = 1; slot <= config.pulses; ++slot) {
        t.rounds = slot;
        alice_label = random_label(streams.alice);
        const StateLabel bob_label = random_label(streams.bob);
        const unsigned na = sample_photon_number(config.source_a, streams.device);
        const unsigned nb = sample_photon_number(config.source_b, streams.device);
        const bool multi = na >= 2 || nb >= 2;
        t.multi_photon_slots += multi ? 1 : 0;
        const BsmDevice device(effective_transmittance(ta, na), effective_transmittance(tb, nb), config.detector,
                               config.dark_count_model);
        const BsmSample sample = device.sample(states[alice_label], states[bob_label], streams.device);
        if (sample.outcome != BsmOutcome::Failure) {
            t.pulse_index = slot;
            t.outcome = sample.outcome;
            t.cause = sample.cause;
            t.bob_label = bob_label;
            t.multi_photon_at_success = multi;
            break;
        }
    }
    if (!t.pulse_index) {
        t.verdict = Verdict::Abort;
        t.abort_reason = AbortReason::NoSuccessfulSlot;
        return t;
    }

    session.announce(t.outcome);
    session.issue_challenge(streams.bob.bit());
    t.bob_random_bit = session.challenge();
    session.receive_reveal(alice_label);
    t.revealed_label = alice_label;
    session.finish();
    if (verify(t.outcome, alice_label, t.bob_label, config.y) == Verdict::Abort) {
        t.verdict = Verdict::Abort;
        t.abort_reason = AbortReason::CheatingDetected;
    } else {
        t.verdict = Verdict::Accept;
        t.coin = alice_label.bit() ^ *t.bob_random_bit;
    }
    return t;
}

Transcript run_baseline(const RunConfig& config, const AdversaryStrategy* strategy, TrialStreams& streams) {
    if (config.mode != Mode::Baseline) {
        throw ConfigurationError("run_baseline expects baseline mode");
    }
    const HonestStrategy honest;
    return run_with_adversary(config, strategy ? *strategy : honest, streams);
}

}  // namespace mdiqct
