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

// The coin-tossing state machine. One run walks the five protocol steps:
//
//   1. Alice prepares |phi_{alpha,a}> and sends it.
//   2. Bob prepares |phi_{beta,b}>; the black box performs a Bell measurement
//      on both photons. A "failure" restarts step 1.
//   3. Bob sends a random bit b'.
//   4. Alice reveals (alpha, a).
//   5. Bob aborts if (outcome, alpha a, beta b) is a zero cell of the
//      verification table; otherwise the coin is x = a XOR b'.
//
// Parties and the black box are pluggable agents so adversaries can replace
// any of them. Bob's classical label never leaves the session: the box sees
// photons only.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>

#include "mdiqct/devices.hpp"
#include "mdiqct/qmath.hpp"
#include "mdiqct/rng.hpp"
#include "mdiqct/types.hpp"

namespace mdiqct {

enum class Mode : std::uint8_t { Mdi, MdiWeakCoherent, Baseline };
enum class Verdict : std::uint8_t { Accept, Abort };
enum class AbortReason : std::uint8_t { None, CheatingDetected, NoSuccessfulSlot };

std::string_view to_string(Mode mode) noexcept;
std::string_view to_string(Verdict verdict) noexcept;
std::string_view to_string(AbortReason reason) noexcept;
/// Throws ParameterError for unknown names.
Mode parse_mode(std::string_view name);

inline constexpr std::uint64_t kDefaultMaxRounds = 1'000'000;

struct RunConfig {
    double y = 0.9;
    ChannelParams channel{};
    DetectorParams detector{};
    DarkCountModel dark_count_model = DarkCountModel::Standard;
    SourceModel source_a = SourceModel::single_photon();
    SourceModel source_b = SourceModel::single_photon();
    std::uint64_t max_rounds = kDefaultMaxRounds;
    Mode mode = Mode::Mdi;
    unsigned pulses = 1;  ///< K, weak-coherent mode only

    /// Throws ParameterError / ConfigurationError.
    void validate() const;
};

/// Everything recorded about one protocol run.
struct Transcript {
    Mode mode = Mode::Mdi;
    std::string_view adversary = "none";
    /// Gates used up to and including the first identified Bell state (or K
    /// when no slot succeeded in weak-coherent mode).
    std::uint64_t rounds = 0;
    BsmOutcome outcome = BsmOutcome::Failure;
    StateLabel bob_label{};
    std::optional<int> bob_random_bit;
    std::optional<StateLabel> revealed_label;
    Verdict verdict = Verdict::Abort;
    AbortReason abort_reason = AbortReason::None;
    std::optional<int> coin;
    std::optional<EventCause> cause;
    std::optional<std::uint32_t> pulse_index;  ///< j, 1-based
    std::uint32_t multi_photon_slots = 0;
    bool multi_photon_at_success = false;
    std::optional<int> target_coin;
    std::optional<StateLabel> leaked_guess;  ///< colluding box's guess of Bob's state

    bool accepted() const noexcept { return verdict == Verdict::Accept; }
    bool adversary_succeeded() const noexcept { return accepted() && target_coin && coin == target_coin; }
};

/// Step 5 for honest Bob. Throws PreconditionError for a failure outcome.
Verdict verify(BsmOutcome outcome, StateLabel revealed, StateLabel bob, double y);

/// Classical information an adversarial device hands to its owner.
struct SideChannel {
    std::optional<StateLabel> bob_state_guess;       ///< box -> Alice
    std::optional<StateLabel> bob_detection_record;  ///< blinded detectors -> Alice (baseline)
    std::optional<int> alice_bit_guess;              ///< Bob's own measurement -> Bob
};

class Session;

/// Read-only window on public protocol state. Accessors throw
/// ProtocolOrderError when the value does not exist yet.
class SessionView {
   public:
    explicit SessionView(const Session& session) noexcept : session_(&session) {}
    int challenge() const;
    BsmOutcome announced_outcome() const;

   private:
    const Session* session_;
};

class AliceAgent {
   public:
    virtual ~AliceAgent() = default;
    /// Step 1: the photon to send, or nothing.
    virtual std::optional<PureState> prepare(const SessionView& view, Rng& rng) = 0;
    /// Step 4.
    virtual StateLabel reveal(const SessionView& view, const SideChannel& side, Rng& rng) = 0;
};

struct PreparedState {
    StateLabel label;
    PureState photon;
};

class BobAgent {
   public:
    virtual ~BobAgent() = default;
    /// Step 2 (MDI): Bob's own state.
    virtual PreparedState prepare(Rng& rng) = 0;
    /// Baseline: measure Alice's photon; returns the (basis, outcome) record.
    virtual StateLabel measure(const PureState& photon, Rng& rng) = 0;
    /// Step 3.
    virtual int challenge(const SideChannel& side, Rng& rng) = 0;
    /// Whether step 5 is executed.
    virtual bool verifies() const noexcept { return true; }
};

struct BoxResult {
    BsmSample sample;
    SideChannel leak;
};

/// The untrusted measurement device. Receives photons only.
class BlackBox {
   public:
    virtual ~BlackBox() = default;
    virtual BoxResult measure(const std::optional<PureState>& alice_photon, const PureState& bob_photon,
                              Rng& rng) = 0;
};

enum class AdversaryRole : std::uint8_t { None, Alice, Bob, BlackBoxWithAlice };

std::string_view to_string(AdversaryRole role) noexcept;

/// Immutable cheating strategy. Per-run scratch state lives in the agents it
/// creates, so one strategy can serve many concurrent runs. A null agent
/// means that party behaves honestly.
class AdversaryStrategy {
   public:
    virtual ~AdversaryStrategy() = default;
    virtual std::string_view name() const noexcept = 0;
    virtual AdversaryRole role() const noexcept = 0;
    virtual std::optional<int> target_coin() const noexcept = 0;
    virtual bool supports(Mode mode) const noexcept = 0;
    /// Baseline only: Alice decides which of Bob's detections succeed and
    /// learns their record.
    virtual bool controls_bob_detectors() const noexcept { return false; }

    virtual std::unique_ptr<AliceAgent> make_alice(const RunConfig&) const { return nullptr; }
    virtual std::unique_ptr<BobAgent> make_bob(const RunConfig&) const { return nullptr; }
    virtual std::unique_ptr<BlackBox> make_box(const RunConfig&) const { return nullptr; }
};

/// Both parties and the box behave as specified.
class HonestStrategy final : public AdversaryStrategy {
   public:
    std::string_view name() const noexcept override { return "none"; }
    AdversaryRole role() const noexcept override { return AdversaryRole::None; }
    std::optional<int> target_coin() const noexcept override { return std::nullopt; }
    bool supports(Mode) const noexcept override { return true; }
};

std::unique_ptr<AliceAgent> make_honest_alice(double y);
std::unique_ptr<BobAgent> make_honest_bob(double y);
std::unique_ptr<BlackBox> make_device_box(const BsmDevice& device);

/// Throws ConfigurationError if `strategy` cannot run in `config.mode`.
void check_compatible(const RunConfig& config, const AdversaryStrategy& strategy);

/// Protocol state and message ordering for one run.
class Session {
   public:
    enum class Phase : std::uint8_t { Preparing, Measured, Challenged, Revealed, Finished };

    Phase phase() const noexcept { return phase_; }
    int challenge() const;
    BsmOutcome announced_outcome() const;

    void announce(BsmOutcome outcome);
    void issue_challenge(int bit);
    void receive_reveal(StateLabel label);
    void finish();

   private:
    void require(Phase expected, const char* action) const;

    Phase phase_ = Phase::Preparing;
    BsmOutcome outcome_ = BsmOutcome::Failure;
    int challenge_ = 0;
};

/// Honest MDI run (steps 1-5 with restarts). Throws RoundsExhausted when
/// max_rounds gates all fail.
Transcript run_honest(const RunConfig& config, TrialStreams& streams);

/// One run with the parties/box replaced per `strategy`, in any mode the
/// strategy supports.
Transcript run_with_adversary(const RunConfig& config, const AdversaryStrategy& strategy, TrialStreams& streams);

/// Fixed-K pulse variant for weak coherent sources: abort if none of the K
/// slots yields a Bell outcome, otherwise continue with the first success j.
Transcript run_weak_coherent(const RunConfig& config, TrialStreams& streams);

/// Prepare-and-measure baseline without a Bell measurement: Bob measures
/// Alice's photon in a random basis and aborts when the bases match but his
/// result is orthogonal to the revealed state.
Transcript run_baseline(const RunConfig& config, const AdversaryStrategy* strategy, TrialStreams& streams);

}  // namespace mdiqct
