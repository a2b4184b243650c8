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

#include "mdiqct/devices.hpp"

#include <cmath>
#include <random>
#include <string>

namespace mdiqct {

namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

// Splits [0,1) into psi+ with probability p, psi- with probability p, failure otherwise.
BsmOutcome symmetric_outcome(double p, Rng& rng) {
    const double u = rng.uniform();
    if (u < p) {
        return BsmOutcome::PsiPlus;
    }
    if (u < 2.0 * p) {
        return BsmOutcome::PsiMinus;
    }
    return BsmOutcome::Failure;
}

}  // namespace

double transmittance(double length_km, double loss_db_per_km) {
    if (!(length_km >= 0.0) || !std::isfinite(length_km)) {
        throw ParameterError("fiber length must be a finite non-negative number of km");
    }
    if (!(loss_db_per_km > 0.0) || !std::isfinite(loss_db_per_km)) {
        throw ParameterError("loss coefficient must be positive");
    }
    return std::pow(10.0, -loss_db_per_km * length_km / 10.0);
}

void ChannelParams::validate() const {
    transmittance(length_a_km, loss_db_per_km);
    transmittance(length_b_km, loss_db_per_km);
}

void DetectorParams::validate() const {
    if (!in_unit_interval(efficiency)) {
        throw ParameterError("detector efficiency must lie in [0, 1]");
    }
    if (!(dark_count >= 0.0 && dark_count < 1.0)) {
        throw ParameterError("dark count probability must lie in [0, 1)");
    }
}

std::string_view to_string(EventCause cause) noexcept {
    switch (cause) {
        case EventCause::BothPhotons:
            return "both-photons";
        case EventCause::PhotonDark:
            return "photon+dark";
        case EventCause::DarkDark:
            return "dark+dark";
        case EventCause::Failure:
            break;
    }
    return "failure";
}

SourceModel SourceModel::weak_coherent(double mean_photon_number) {
    if (!(mean_photon_number > 0.0) || !std::isfinite(mean_photon_number)) {
        throw ParameterError("weak coherent source needs a positive mean photon number");
    }
    return SourceModel(Kind::WeakCoherent, mean_photon_number);
}

unsigned sample_photon_number(const SourceModel& source, Rng& rng) {
    if (source.kind() == SourceModel::Kind::SinglePhoton) {
        return 1;
    }
    std::poisson_distribution<unsigned> poisson(source.mean_photon_number());
    return poisson(rng);
}

BsmOutcome sample_bsm_ideal(const PureState& alice, const PureState& bob, Rng& rng) {
    const auto p = bell_projection_probs(alice, bob);
    const double u = rng.uniform();
    if (u < p.psi_plus) {
        return BsmOutcome::PsiPlus;
    }
    if (u < p.psi_plus + p.psi_minus) {
        return BsmOutcome::PsiMinus;
    }
    return BsmOutcome::Failure;
}

bool sample_projection(const PureState& onto, const PureState& photon, Rng& rng) {
    return rng.uniform() < onto.overlap(photon);
}

BsmDevice::BsmDevice(double transmittance_a, double transmittance_b, const DetectorParams& detector,
                     DarkCountModel model)
    : ta_(transmittance_a), tb_(transmittance_b), detector_(detector), model_(model) {
    if (!in_unit_interval(ta_) || !in_unit_interval(tb_)) {
        throw ParameterError("transmittance must lie in [0, 1]");
    }
    detector_.validate();
    if (detector_.dark_count > 0.5) {
        throw ParameterError("dark count probability above 1/2 is outside the coincidence model (got " +
                             std::to_string(detector_.dark_count) + ")");
    }
}

BsmDevice BsmDevice::from_channel(const ChannelParams& channel, const DetectorParams& detector, DarkCountModel model) {
    channel.validate();
    return BsmDevice(channel.transmittance_a(), channel.transmittance_b(), detector, model);
}

EventProbabilities BsmDevice::event_probabilities() const noexcept {
    const double eta = detector_.efficiency;
    return EventProbabilities{
        ta_ * tb_ * eta * eta,
        eta * (ta_ * (1.0 - tb_) + tb_ * (1.0 - ta_)),
        (1.0 - ta_ * eta) * (1.0 - tb_ * eta),
        2.0 * ta_ * tb_ * eta * (1.0 - eta),
    };
}

double BsmDevice::photon_dark_outcome_probability() const noexcept {
    const auto e = event_probabilities();
    double p = e.one_detected_alone * detector_.dark_count;
    if (model_ == DarkCountModel::Extended) {
        p += e.partner_undetected * detector_.dark_count;
    }
    return p;
}

double BsmDevice::dark_dark_outcome_probability() const noexcept {
    const double d = detector_.dark_count;
    return event_probabilities().none_detected * 2.0 * d * d;
}

double BsmDevice::dark_assisted_outcome_probability() const noexcept {
    return photon_dark_outcome_probability() + dark_dark_outcome_probability();
}

BsmSample BsmDevice::sample(const PureState& alice, const PureState& bob, Rng& rng) const {
    const auto e = event_probabilities();
    const double d = detector_.dark_count;
    const double u = rng.uniform();

    double edge = e.both_detected;
    if (u < edge) {
        const BsmOutcome outcome = sample_bsm_ideal(alice, bob, rng);
        return {outcome, outcome == BsmOutcome::Failure ? EventCause::Failure : EventCause::BothPhotons};
    }
    edge += e.one_detected_alone;
    if (u < edge) {
        const BsmOutcome outcome = symmetric_outcome(d, rng);
        return {outcome, outcome == BsmOutcome::Failure ? EventCause::Failure : EventCause::PhotonDark};
    }
    edge += e.none_detected;
    if (u < edge) {
        const BsmOutcome outcome = symmetric_outcome(2.0 * d * d, rng);
        return {outcome, outcome == BsmOutcome::Failure ? EventCause::Failure : EventCause::DarkDark};
    }
    // Remaining mass: one photon detected while the other arrived undetected.
    if (model_ == DarkCountModel::Extended) {
        const BsmOutcome outcome = symmetric_outcome(d, rng);
        return {outcome, outcome == BsmOutcome::Failure ? EventCause::Failure : EventCause::PhotonDark};
    }
    return {BsmOutcome::Failure, EventCause::Failure};
}

BsmSample sample_bsm_noisy(const PureState& alice, const PureState& bob, const ChannelParams& channel,
                           const DetectorParams& detector, Rng& rng, DarkCountModel model) {
    return BsmDevice::from_channel(channel, detector, model).sample(alice, bob, rng);
}

}  // namespace mdiqct
