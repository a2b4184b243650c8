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

#include "mdiqct/adversaries.hpp"

#include <string>

namespace mdiqct {

namespace {

int checked_target(int target_coin) {
    if (target_coin != 0 && target_coin != 1) {
        throw ParameterError("target coin must be 0 or 1");
    }
    return target_coin;
}

class TargetedStrategy : public AdversaryStrategy {
   public:
    explicit TargetedStrategy(int target_coin) : target_(checked_target(target_coin)) {}
    std::optional<int> target_coin() const noexcept final { return target_; }

   protected:
    int target() const noexcept { return target_; }

   private:
    int target_;
};

class HonestTargeted final : public TargetedStrategy {
   public:
    using TargetedStrategy::TargetedStrategy;
    std::string_view name() const noexcept override { return "none"; }
    AdversaryRole role() const noexcept override { return AdversaryRole::None; }
    bool supports(Mode) const noexcept override { return true; }
};

// --- Bob: minimum-error discrimination of Alice's commitment -------------

class HelstromBob final : public BobAgent {
   public:
    HelstromBob(double y, const HelstromMeasurement& measurement, int target)
        : states_(y), measurement_(measurement), target_(target) {}

    PreparedState prepare(Rng& rng) override {
        const int basis = rng.bit();
        const StateLabel label(basis, rng.bit());
        return {label, states_[label]};
    }

    StateLabel measure(const PureState& photon, Rng& rng) override {
        guess_ = sample_projection(measurement_.guess_zero, photon, rng) ? 0 : 1;
        return StateLabel(0, guess_);
    }

    int challenge(const SideChannel& side, Rng&) override {
        const int guess = side.alice_bit_guess.value_or(guess_);
        return guess ^ target_;
    }

    bool verifies() const noexcept override { return false; }

   private:
    HonestStates states_;
    HelstromMeasurement measurement_;
    int target_;
    int guess_ = 0;
};

// Bob's own measurement in place of the Bell box; the "outcome" only tells
// the protocol to proceed.
class HelstromBox final : public BlackBox {
   public:
    explicit HelstromBox(const HelstromMeasurement& measurement) : measurement_(measurement) {}

    BoxResult measure(const std::optional<PureState>& alice_photon, const PureState&, Rng& rng) override {
        if (!alice_photon) {
            return {{BsmOutcome::Failure, EventCause::Failure}, {}};
        }
        BoxResult result;
        result.sample = {BsmOutcome::PsiPlus, EventCause::BothPhotons};
        result.leak.alice_bit_guess = sample_projection(measurement_.guess_zero, *alice_photon, rng) ? 0 : 1;
        return result;
    }

   private:
    HelstromMeasurement measurement_;
};

class BobMed final : public TargetedStrategy {
   public:
    BobMed(double y, int target)
        : TargetedStrategy(target),
          y_(y),
          measurement_(helstrom_measurement(commitment_density(0, y), commitment_density(1, y), 0.5)) {}

    std::string_view name() const noexcept override { return "bob-med"; }
    AdversaryRole role() const noexcept override { return AdversaryRole::Bob; }
    bool supports(Mode mode) const noexcept override { return mode == Mode::Mdi || mode == Mode::Baseline; }

    std::unique_ptr<BobAgent> make_bob(const RunConfig&) const override {
        return std::make_unique<HelstromBob>(y_, measurement_, target());
    }
    std::unique_ptr<BlackBox> make_box(const RunConfig& config) const override {
        if (config.mode != Mode::Mdi) {
            return nullptr;
        }
        return std::make_unique<HelstromBox>(measurement_);
    }

   private:
    double y_;
    HelstromMeasurement measurement_;
};

// --- Alice: individual attack through a colluding box --------------------

class SilentAlice final : public AliceAgent {
   public:
    explicit SilentAlice(int target) : target_(target) {}

    std::optional<PureState> prepare(const SessionView&, Rng&) override { return std::nullopt; }

    StateLabel reveal(const SessionView& view, const SideChannel& side, Rng& rng) override {
        if (!side.bob_state_guess) {
            throw ConfigurationError("individual attack needs the colluding box's guess");
        }
        const BsmOutcome outcome = view.announced_outcome();
        const int a = view.challenge() ^ target_;
        const StateLabel guess = *side.bob_state_guess;
        const bool basis0_ok = !VerificationTable::is_zero_cell(outcome, StateLabel(0, a), guess);
        const bool basis1_ok = !VerificationTable::is_zero_cell(outcome, StateLabel(1, a), guess);
        int alpha = 0;
        if (basis0_ok && basis1_ok) {
            alpha = rng.bit();
        } else {
            alpha = basis0_ok ? 0 : 1;
        }
        return StateLabel(alpha, a);
    }

   private:
    int target_;
};

class DiscriminatingBox final : public BlackBox {
   public:
    explicit DiscriminatingBox(double y) : states_(y) {}

    BoxResult measure(const std::optional<PureState>&, const PureState& bob_photon, Rng& rng) override {
        // E_i = 1/2 |phi_i><phi_i|: measure in a uniformly random honest basis.
        const int basis = rng.bit();
        const int bit = sample_projection(states_[StateLabel(basis, 0)], bob_photon, rng) ? 0 : 1;
        BoxResult result;
        result.sample = {rng.bit() == 0 ? BsmOutcome::PsiPlus : BsmOutcome::PsiMinus, EventCause::BothPhotons};
        result.leak.bob_state_guess = StateLabel(basis, bit);
        return result;
    }

   private:
    HonestStates states_;
};

class AliceIndividual final : public TargetedStrategy {
   public:
    AliceIndividual(double y, int target) : TargetedStrategy(target), y_(y) { validate_y(y); }

    std::string_view name() const noexcept override { return "alice-individual"; }
    AdversaryRole role() const noexcept override { return AdversaryRole::BlackBoxWithAlice; }
    bool supports(Mode mode) const noexcept override { return mode == Mode::Mdi; }

    std::unique_ptr<AliceAgent> make_alice(const RunConfig&) const override {
        return std::make_unique<SilentAlice>(target());
    }
    std::unique_ptr<BlackBox> make_box(const RunConfig&) const override {
        return std::make_unique<DiscriminatingBox>(y_);
    }

   private:
    double y_;
};

// --- Alice: coherent attack with |+> or |-> ------------------------------

class CoherentAlice final : public AliceAgent {
   public:
    CoherentAlice(CheatState sent, int target) : sent_(sent), target_(target) {}

    std::optional<PureState> prepare(const SessionView&, Rng&) override {
        return sent_ == CheatState::Plus ? PureState::plus() : PureState::minus();
    }

    StateLabel reveal(const SessionView& view, const SideChannel&, Rng&) override {
        const int a = view.challenge() ^ target_;
        const int alpha = sent_ == CheatState::Plus ? a : 1 - a;
        return StateLabel(alpha, a);
    }

   private:
    CheatState sent_;
    int target_;
};

class AliceCoherent final : public TargetedStrategy {
   public:
    AliceCoherent(double y, int target, CheatState sent) : TargetedStrategy(target), sent_(sent) { validate_y(y); }

    std::string_view name() const noexcept override { return "alice-coherent"; }
    AdversaryRole role() const noexcept override { return AdversaryRole::Alice; }
    bool supports(Mode mode) const noexcept override { return mode == Mode::Mdi; }

    std::unique_ptr<AliceAgent> make_alice(const RunConfig&) const override {
        return std::make_unique<CoherentAlice>(sent_, target());
    }

   private:
    CheatState sent_;
};

// --- Alice: detector blinding (baseline only) ----------------------------

class BlindingAlice final : public AliceAgent {
   public:
    BlindingAlice(double y, int target) : states_(y), target_(target) {}

    std::optional<PureState> prepare(const SessionView&, Rng& rng) override {
        const int basis = rng.bit();
        return states_[StateLabel(basis, rng.bit())];
    }

    StateLabel reveal(const SessionView& view, const SideChannel& side, Rng&) override {
        if (!side.bob_detection_record) {
            throw ConfigurationError("blinding attack needs control of Bob's detectors");
        }
        const StateLabel record = *side.bob_detection_record;
        const int a = view.challenge() ^ target_;
        // Same basis is safe when Bob saw bit a; otherwise claim the other basis.
        const int alpha = record.bit() == a ? record.basis() : 1 - record.basis();
        return StateLabel(alpha, a);
    }

   private:
    HonestStates states_;
    int target_;
};

class AliceBlinding final : public TargetedStrategy {
   public:
    using TargetedStrategy::TargetedStrategy;

    std::string_view name() const noexcept override { return "alice-blinding"; }
    AdversaryRole role() const noexcept override { return AdversaryRole::Alice; }
    bool supports(Mode mode) const noexcept override { return mode == Mode::Baseline; }
    bool controls_bob_detectors() const noexcept override { return true; }

    std::unique_ptr<AliceAgent> make_alice(const RunConfig& config) const override {
        return std::make_unique<BlindingAlice>(config.y, target());
    }
};

}  // namespace

std::string_view to_string(CheatState state) noexcept { return state == CheatState::Plus ? "plus" : "minus"; }

CheatState parse_cheat_state(std::string_view name) {
    if (name == "plus" || name == "+") {
        return CheatState::Plus;
    }
    if (name == "minus" || name == "-") {
        return CheatState::Minus;
    }
    throw ParameterError("sent state must be 'plus' or 'minus', got '" + std::string(name) + "'");
}

std::unique_ptr<AdversaryStrategy> bob_med_attack(double y, int target_coin) {
    validate_y(y);
    return std::make_unique<BobMed>(y, target_coin);
}

std::unique_ptr<AdversaryStrategy> alice_individual_attack(double y, int target_coin) {
    return std::make_unique<AliceIndividual>(y, target_coin);
}

std::unique_ptr<AdversaryStrategy> alice_coherent_attack(double y, int target_coin, CheatState sent) {
    return std::make_unique<AliceCoherent>(y, target_coin, sent);
}

std::unique_ptr<AdversaryStrategy> alice_blinding_attack(int target_coin) {
    return std::make_unique<AliceBlinding>(target_coin);
}

std::unique_ptr<AdversaryStrategy> make_adversary(std::string_view name, double y, int target_coin, CheatState sent) {
    if (name == "none") {
        return std::make_unique<HonestTargeted>(target_coin);
    }
    if (name == "bob-med") {
        return bob_med_attack(y, target_coin);
    }
    if (name == "alice-individual") {
        return alice_individual_attack(y, target_coin);
    }
    if (name == "alice-coherent") {
        return alice_coherent_attack(y, target_coin, sent);
    }
    if (name == "alice-blinding") {
        return alice_blinding_attack(target_coin);
    }
    throw ParameterError("unknown adversary '" + std::string(name) + "'");
}

}  // namespace mdiqct
