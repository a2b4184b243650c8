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

#include "mdiqct/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mdiqct {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

int outcome_slot(BsmOutcome outcome) {
    switch (outcome) {
        case BsmOutcome::PsiPlus:
            return 0;
        case BsmOutcome::PsiMinus:
            return 1;
        case BsmOutcome::Failure:
            break;
    }
    throw PreconditionError("verification table has no cells for the failure outcome");
}

void validate_prior(double prior0) {
    if (!(prior0 >= 0.0 && prior0 <= 1.0)) {
        throw PreconditionError("prior probability must lie in [0, 1]");
    }
}

}  // namespace

void validate_y(double y) {
    if (!(y > 0.5 && y < 1.0)) {
        throw ParameterError("y must satisfy 1/2 < y < 1, got " + std::to_string(y));
    }
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(Complex h, Complex v) : h_(h), v_(v) {
    const double norm = std::norm(h) + std::norm(v);
    if (!(std::abs(norm - 1.0) <= kExactTolerance)) {
        throw PreconditionError("pure state is not normalized (|h|^2 + |v|^2 = " + std::to_string(norm) + ")");
    }
}

PureState PureState::plus() { return PureState(kInvSqrt2, kInvSqrt2); }
PureState PureState::minus() { return PureState(kInvSqrt2, -kInvSqrt2); }

Complex PureState::inner(const PureState& other) const noexcept {
    return std::conj(h_) * other.h_ + std::conj(v_) * other.v_;
}

double PureState::overlap(const PureState& other) const noexcept { return std::norm(inner(other)); }

PureState PureState::orthogonal() const noexcept { return PureState(-std::conj(v_), std::conj(h_), Unchecked{}); }

// ---------------------------------------------------------------------------
// Hermitian2 / DensityMatrix

std::array<double, 2> Hermitian2::eigenvalues() const noexcept {
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(b));
    return {mean - radius, mean + radius};
}

PureState Hermitian2::top_eigenvector() const noexcept {
    const double lambda = eigenvalues()[1];
    // (M - lambda) x = 0. Use whichever row is better conditioned.
    const Complex r1h = a - lambda;
    const Complex r2v = d - lambda;
    Complex xh;
    Complex xv;
    if (std::abs(r1h) + std::abs(b) >= std::abs(std::conj(b)) + std::abs(r2v)) {
        xh = b;
        xv = -r1h;
    } else {
        xh = -r2v;
        xv = std::conj(b);
    }
    const double norm = std::sqrt(std::norm(xh) + std::norm(xv));
    if (norm < 1e-300) {
        return PureState::horizontal();
    }
    return PureState(xh / norm, xv / norm);
}

double Hermitian2::trace_norm() const noexcept {
    const auto ev = eigenvalues();
    return std::abs(ev[0]) + std::abs(ev[1]);
}

DensityMatrix::DensityMatrix(const Hermitian2& m) : m_(m) {
    if (!std::isfinite(m.a) || !std::isfinite(m.d) || !std::isfinite(m.b.real()) || !std::isfinite(m.b.imag())) {
        throw PreconditionError("density matrix has non-finite entries");
    }
    if (std::abs(trace() - 1.0) > kExactTolerance) {
        throw PreconditionError("density matrix trace is not 1");
    }
    if (m.eigenvalues()[0] < -kExactTolerance) {
        throw PreconditionError("density matrix is not positive semidefinite");
    }
}

DensityMatrix DensityMatrix::pure(const PureState& psi) noexcept {
    return DensityMatrix(Hermitian2{std::norm(psi.h()), psi.h() * std::conj(psi.v()), std::norm(psi.v())},
                         Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed() noexcept { return DensityMatrix(Hermitian2{0.5, 0.0, 0.5}, Unchecked{}); }

DensityMatrix DensityMatrix::mix(double w, const DensityMatrix& first, const DensityMatrix& second) {
    if (!(w >= 0.0 && w <= 1.0)) {
        throw PreconditionError("mixture weight must lie in [0, 1]");
    }
    const double u = 1.0 - w;
    return DensityMatrix(Hermitian2{w * first.m_.a + u * second.m_.a, w * first.m_.b + u * second.m_.b,
                                    w * first.m_.d + u * second.m_.d});
}

Complex DensityMatrix::operator()(int row, int col) const noexcept {
    if (row == 0) {
        return col == 0 ? Complex(m_.a) : m_.b;
    }
    return col == 0 ? std::conj(m_.b) : Complex(m_.d);
}

Hermitian2 DensityMatrix::weighted_difference(double p, const DensityMatrix& other, double q) const noexcept {
    return Hermitian2{p * m_.a - q * other.m_.a, p * m_.b - q * other.m_.b, p * m_.d - q * other.m_.d};
}

// ---------------------------------------------------------------------------
// TwoQubitState

TwoQubitState TwoQubitState::product(const PureState& first, const PureState& second) noexcept {
    TwoQubitState s;
    s.amps_ = {first.h() * second.h(), first.h() * second.v(), first.v() * second.h(), first.v() * second.v()};
    return s;
}

double TwoQubitState::squared_norm() const noexcept {
    double n = 0.0;
    for (const auto& amp : amps_) {
        n += std::norm(amp);
    }
    return n;
}

// ---------------------------------------------------------------------------
// Honest states

PureState honest_state(int alpha, int a, double y) {
    validate_y(y);
    if ((alpha != 0 && alpha != 1) || (a != 0 && a != 1)) {
        throw ParameterError("basis and bit must be 0 or 1");
    }
    const double sign = alpha == 0 ? 1.0 : -1.0;
    const double sy = std::sqrt(y);
    const double sc = std::sqrt(1.0 - y);
    if (a == 0) {
        return PureState(sy, sign * sc);
    }
    return PureState(sc, -sign * sy);
}

HonestStates::HonestStates(double y)
    : y_(y),
      states_{honest_state(0, 0, y), honest_state(0, 1, y), honest_state(1, 0, y), honest_state(1, 1, y)} {}

DensityMatrix commitment_density(int a, double y) {
    return DensityMatrix::mix(0.5, DensityMatrix::pure(honest_state(0, a, y)), DensityMatrix::pure(honest_state(1, a, y)));
}

BellProbabilities bell_projection_probs(const PureState& alice, const PureState& bob) noexcept {
    const TwoQubitState product = TwoQubitState::product(alice, bob);
    const auto& amps = product.amplitudes();
    const Complex hh = amps[0];
    const Complex hv = amps[1];
    const Complex vh = amps[2];
    const Complex vv = amps[3];
    return BellProbabilities{0.5 * std::norm(hv + vh), 0.5 * std::norm(hv - vh), 0.5 * std::norm(hh + vv),
                             0.5 * std::norm(hh - vv)};
}

// ---------------------------------------------------------------------------
// VerificationTable

VerificationTable::VerificationTable(double y) : y_(y) {
    const HonestStates states(y);
    for (StateLabel alice : kAllLabels) {
        for (StateLabel bob : kAllLabels) {
            const auto p = bell_projection_probs(states[alice], states[bob]);
            cells_[0][alice.index()][bob.index()] = p.psi_plus;
            cells_[1][alice.index()][bob.index()] = p.psi_minus;
        }
    }
}

double VerificationTable::probability(BsmOutcome outcome, StateLabel alice, StateLabel bob) const {
    return cells_[outcome_slot(outcome)][alice.index()][bob.index()];
}

bool VerificationTable::is_zero_cell(BsmOutcome outcome, StateLabel alice, StateLabel bob) {
    const bool same_bit = alice.bit() == bob.bit();
    const bool same_basis = alice.basis() == bob.basis();
    return outcome_slot(outcome) == 0 ? (same_bit && !same_basis) : (same_bit && same_basis);
}

int VerificationTable::computed_zero_count(BsmOutcome outcome) const {
    const auto& panel = cells_[outcome_slot(outcome)];
    int count = 0;
    for (const auto& row : panel) {
        count += static_cast<int>(std::count(row.begin(), row.end(), 0.0));
    }
    return count;
}

// ---------------------------------------------------------------------------
// Discrimination

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return 0.5 * rho.weighted_difference(1.0, sigma, 1.0).trace_norm();
}

double helstrom_probability(const DensityMatrix& rho0, const DensityMatrix& rho1, double prior0) {
    validate_prior(prior0);
    const double prior1 = 1.0 - prior0;
    const auto ev = rho0.weighted_difference(prior0, rho1, prior1).eigenvalues();
    return prior1 + std::max(ev[0], 0.0) + std::max(ev[1], 0.0);
}

HelstromMeasurement helstrom_measurement(const DensityMatrix& rho0, const DensityMatrix& rho1, double prior0) {
    validate_prior(prior0);
    const auto gamma = rho0.weighted_difference(prior0, rho1, 1.0 - prior0);
    return HelstromMeasurement{gamma.top_eigenvector(), helstrom_probability(rho0, rho1, prior0)};
}

double basis_guessing_probability(const PureState& n, double y) {
    const HonestStates states(y);
    const PureState n_perp = n.orthogonal();
    double best_n = 0.0;
    double best_perp = 0.0;
    for (StateLabel label : kAllLabels) {
        best_n = std::max(best_n, n.overlap(states[label]));
        best_perp = std::max(best_perp, n_perp.overlap(states[label]));
    }
    return 0.25 * (best_n + best_perp);
}

FourStateGuessing four_state_guessing_probability(double y, double grid_step_degrees) {
    validate_y(y);
    if (!(grid_step_degrees > 0.0 && grid_step_degrees <= 90.0)) {
        throw ParameterError("grid step must lie in (0, 90] degrees");
    }
    const HonestStates states(y);
    const double step = grid_step_degrees * std::numbers::pi / 180.0;
    const int polar_steps = static_cast<int>(std::floor(180.0 / grid_step_degrees + 1e-9));
    const int azimuth_steps = static_cast<int>(std::ceil(360.0 / grid_step_degrees - 1e-9));

    double best = -1.0;
    PureState best_direction = PureState::horizontal();
    for (int i = 0; i <= polar_steps; ++i) {
        const double theta = i * step;
        for (int j = 0; j < azimuth_steps; ++j) {
            const double phi = j * step;
            const PureState n(std::cos(theta / 2), std::polar(std::sin(theta / 2), phi));
            const PureState n_perp = n.orthogonal();
            double best_n = 0.0;
            double best_perp = 0.0;
            for (StateLabel label : kAllLabels) {
                best_n = std::max(best_n, n.overlap(states[label]));
                best_perp = std::max(best_perp, n_perp.overlap(states[label]));
            }
            const double p = 0.25 * (best_n + best_perp);
            if (p > best) {
                best = p;
                best_direction = n;
            }
        }
    }

    // Projective qubit measurement: sum_k Tr(E_k) = 2.
    double lambda_max = 0.0;
    for (StateLabel label : kAllLabels) {
        lambda_max = std::max(lambda_max, DensityMatrix::pure(states[label]).eigenvalues()[1]);
    }
    return FourStateGuessing{best, 0.25 * 2.0 * lambda_max, best_direction};
}

}  // namespace mdiqct
