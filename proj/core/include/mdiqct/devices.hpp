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

// Physical layer: fiber loss, threshold detectors with dark counts, photon
// sources, and a sampling model of the linear-optics Bell-state measurement.

#pragma once

#include <cstdint>
#include <string_view>

#include "mdiqct/qmath.hpp"
#include "mdiqct/rng.hpp"
#include "mdiqct/types.hpp"

namespace mdiqct {

inline constexpr double kDefaultLossDbPerKm = 0.2;

/// t = 10^(-loss * length / 10).
double transmittance(double length_km, double loss_db_per_km = kDefaultLossDbPerKm);

struct ChannelParams {
    double length_a_km = 0.0;
    double length_b_km = 0.0;
    double loss_db_per_km = kDefaultLossDbPerKm;

    void validate() const;
    double transmittance_a() const { return transmittance(length_a_km, loss_db_per_km); }
    double transmittance_b() const { return transmittance(length_b_km, loss_db_per_km); }
};

struct DetectorParams {
    double efficiency = 1.0;  ///< eta
    double dark_count = 0.0;  ///< d, click probability per detector per gate

    void validate() const;
};

/// Which dark-count-assisted coincidences can complete a Bell measurement.
enum class DarkCountModel : std::uint8_t {
    /// Exactly the six cases of the closed-form honest-abort expression.
    Standard,
    /// Also lets a dark count pair with a detected photon when the partner
    /// photon arrived but went undetected.
    Extended,
};

enum class EventCause : std::uint8_t { BothPhotons, PhotonDark, DarkDark, Failure };

std::string_view to_string(EventCause cause) noexcept;

struct BsmSample {
    BsmOutcome outcome = BsmOutcome::Failure;
    /// Which physical event produced a Bell outcome; Failure when none did.
    EventCause cause = EventCause::Failure;
};

class SourceModel {
   public:
    enum class Kind : std::uint8_t { SinglePhoton, WeakCoherent };

    static SourceModel single_photon() noexcept { return SourceModel(Kind::SinglePhoton, 0.0); }
    /// Throws ParameterError unless mean_photon_number > 0.
    static SourceModel weak_coherent(double mean_photon_number);

    Kind kind() const noexcept { return kind_; }
    double mean_photon_number() const noexcept { return mu_; }

   private:
    SourceModel(Kind kind, double mu) noexcept : kind_(kind), mu_(mu) {}

    Kind kind_;
    double mu_;
};

/// Photons emitted in one pulse: always 1 for a single-photon source,
/// Poisson(mu) for a weak coherent source.
unsigned sample_photon_number(const SourceModel& source, Rng& rng);

/// Lossless, noiseless, unit-efficiency Bell measurement.
BsmOutcome sample_bsm_ideal(const PureState& alice, const PureState& bob, Rng& rng);

/// Returns true if a projective measurement of `photon` finds it in `onto`.
bool sample_projection(const PureState& onto, const PureState& photon, Rng& rng);

/// Probabilities of the label-independent event cases of one gate.
struct EventProbabilities {
    double both_detected;       ///< t_A t_B eta^2
    double one_detected_alone;  ///< eta [t_A(1-t_B) + t_B(1-t_A)]: photon + dark candidate
    double none_detected;       ///< (1 - t_A eta)(1 - t_B eta): dark + dark candidate
    double partner_undetected;  ///< 2 t_A t_B eta (1-eta): photon + dark, extended model only
};

/// Noisy Bell-state measurement behind two fiber links. Each gate first
/// samples the event case, then the outcome. Dark-count-assisted coincidences
/// yield psi+ and psi- with equal probability, independently of the sent
/// states; the (1-d)^2 factor for the idle detectors is neglected.
class BsmDevice {
   public:
    /// Throws ParameterError for transmittances outside [0, 1], invalid
    /// detector parameters, or d > 1/2 (where the per-case outcome
    /// probabilities would exceed one).
    BsmDevice(double transmittance_a, double transmittance_b, const DetectorParams& detector,
              DarkCountModel model = DarkCountModel::Standard);

    static BsmDevice from_channel(const ChannelParams& channel, const DetectorParams& detector,
                                  DarkCountModel model = DarkCountModel::Standard);
    static BsmDevice ideal() { return BsmDevice(1.0, 1.0, DetectorParams{}); }

    BsmSample sample(const PureState& alice, const PureState& bob, Rng& rng) const;

    EventProbabilities event_probabilities() const noexcept;

    /// Probability that one gate yields a specific Bell outcome (psi+, say)
    /// through a dark-count-assisted coincidence. Independent of the sent states.
    double dark_assisted_outcome_probability() const noexcept;

    /// Split of dark_assisted_outcome_probability() by cause.
    double photon_dark_outcome_probability() const noexcept;
    double dark_dark_outcome_probability() const noexcept;

    double transmittance_a() const noexcept { return ta_; }
    double transmittance_b() const noexcept { return tb_; }
    const DetectorParams& detector() const noexcept { return detector_; }
    DarkCountModel model() const noexcept { return model_; }

   private:
    double ta_;
    double tb_;
    DetectorParams detector_;
    DarkCountModel model_;
};

/// Convenience wrapper over BsmDevice::from_channel(...).sample(...).
BsmSample sample_bsm_noisy(const PureState& alice, const PureState& bob, const ChannelParams& channel,
                           const DetectorParams& detector, Rng& rng,
                           DarkCountModel model = DarkCountModel::Standard);

}  // namespace mdiqct
