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

// Exact single- and two-qubit polarization math for the coin-tossing
// protocol: honest state construction, Bell projections, trace distance and
// minimum-error discrimination.

#pragma once

#include <array>
#include <complex>

#include "mdiqct/types.hpp"

namespace mdiqct {

using Complex = std::complex<double>;

/// Tolerance for closed-form algebraic identities.
inline constexpr double kExactTolerance = 1e-12;

/// Throws ParameterError unless 1/2 < y < 1.
void validate_y(double y);

/// Normalized polarization qubit a|H> + b|V>.
class PureState {
   public:
    /// Throws PreconditionError if |h|^2 + |v|^2 differs from 1 by more than 1e-12.
    PureState(Complex h, Complex v);

    static PureState horizontal() { return PureState(1.0, 0.0); }
    static PureState vertical() { return PureState(0.0, 1.0); }
    static PureState plus();
    static PureState minus();

    Complex h() const noexcept { return h_; }
    Complex v() const noexcept { return v_; }

    /// <this|other>
    Complex inner(const PureState& other) const noexcept;
    /// |<this|other>|^2
    double overlap(const PureState& other) const noexcept;
    /// The unique (up to phase) state orthogonal to this one.
    PureState orthogonal() const noexcept;

   private:
    struct Unchecked {};
    PureState(Complex h, Complex v, Unchecked) noexcept : h_(h), v_(v) {}

    Complex h_;
    Complex v_;
};

/// 2x2 Hermitian matrix, stored as [[a, b], [conj(b), d]].
struct Hermitian2 {
    double a = 0.0;
    Complex b{};
    double d = 0.0;

    /// Ascending eigenvalues.
    std::array<double, 2> eigenvalues() const noexcept;
    /// Unit eigenvector for the larger eigenvalue. For a multiple of the
    /// identity any vector qualifies; |H> is returned.
    PureState top_eigenvector() const noexcept;
    double trace_norm() const noexcept;
};

/// Unit-trace positive semidefinite 2x2 Hermitian matrix.
class DensityMatrix {
   public:
    /// Validates Hermiticity, unit trace and eigenvalues >= -1e-12.
    explicit DensityMatrix(const Hermitian2& m);

    static DensityMatrix pure(const PureState& psi) noexcept;
    static DensityMatrix maximally_mixed() noexcept;
    /// Convex combination w*first + (1-w)*second.
    static DensityMatrix mix(double w, const DensityMatrix& first, const DensityMatrix& second);

    /// Entry (row, col) over the {H, V} basis.
    Complex operator()(int row, int col) const noexcept;
    double trace() const noexcept { return m_.a + m_.d; }
    std::array<double, 2> eigenvalues() const noexcept { return m_.eigenvalues(); }
    const Hermitian2& matrix() const noexcept { return m_; }

    /// p*this - q*other, no validity requirements on the result.
    Hermitian2 weighted_difference(double p, const DensityMatrix& other, double q) const noexcept;

   private:
    struct Unchecked {};
    DensityMatrix(const Hermitian2& m, Unchecked) noexcept : m_(m) {}

    Hermitian2 m_;
};

/// Two-photon state over {HH, HV, VH, VV}; the first factor is Alice's photon.
class TwoQubitState {
   public:
    static TwoQubitState product(const PureState& first, const PureState& second) noexcept;
    const std::array<Complex, 4>& amplitudes() const noexcept { return amps_; }
    double squared_norm() const noexcept;

   private:
    std::array<Complex, 4> amps_{};
};

/// |phi_{alpha,a}> = sqrt(y)|H> + (-1)^alpha sqrt(1-y)|V>       (a = 0)
///                 = sqrt(1-y)|H> - (-1)^alpha sqrt(y)|V>       (a = 1)
PureState honest_state(int alpha, int a, double y);
inline PureState honest_state(StateLabel label, double y) { return honest_state(label.basis(), label.bit(), y); }

/// The four honest states for one y, computed once.
class HonestStates {
   public:
    explicit HonestStates(double y);
    const PureState& operator[](StateLabel label) const noexcept { return states_[label.index()]; }
    double y() const noexcept { return y_; }

   private:
    double y_;
    std::array<PureState, 4> states_;
};

/// rho_a = 1/2 |phi_{0,a}><phi_{0,a}| + 1/2 |phi_{1,a}><phi_{1,a}|; diag(y, 1-y) for a = 0.
DensityMatrix commitment_density(int a, double y);

struct BellProbabilities {
    double psi_plus = 0.0;
    double psi_minus = 0.0;
    double phi_plus = 0.0;
    double phi_minus = 0.0;

    double identified() const noexcept { return psi_plus + psi_minus; }
};

/// Projection probabilities of |A>|B> onto the Bell basis, with
/// |Psi+-> = (|HV> +- |VH>)/sqrt(2) and |Phi+-> = (|HH> +- |VV>)/sqrt(2).
BellProbabilities bell_projection_probs(const PureState& alice, const PureState& bob) noexcept;

/// Probability of each identified Bell outcome for every pair of honest
/// states. Rows are Alice's label, columns Bob's.
class VerificationTable {
   public:
    explicit VerificationTable(double y);

    double probability(BsmOutcome outcome, StateLabel alice, StateLabel bob) const;
    double y() const noexcept { return y_; }

    /// True for the cells Bob treats as proof of cheating. The set does not
    /// depend on y: psi+ vanishes for different bases with equal bits, psi-
    /// vanishes for identical states.
    static bool is_zero_cell(BsmOutcome outcome, StateLabel alice, StateLabel bob);

    /// Number of cells for `outcome` whose computed probability is exactly zero.
    int computed_zero_count(BsmOutcome outcome) const;

   private:
    double y_;
    std::array<std::array<std::array<double, 4>, 4>, 2> cells_{};
};

/// D(rho, sigma) = 1/2 Tr|rho - sigma|.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Optimal probability of guessing which of two states was sent:
/// prior1 + sum of positive eigenvalues of (prior0 rho0 - prior1 rho1).
double helstrom_probability(const DensityMatrix& rho0, const DensityMatrix& rho1, double prior0);

/// Rank-one Helstrom measurement: projecting onto `guess_zero` means "guess 0".
struct HelstromMeasurement {
    PureState guess_zero;
    double success_probability;
};

HelstromMeasurement helstrom_measurement(const DensityMatrix& rho0, const DensityMatrix& rho1, double prior0);

/// Guessing probability for the uniform four-state honest ensemble when
/// measuring in the orthonormal basis {n, n_perp} and assigning each outcome
/// to its most likely state.
double basis_guessing_probability(const PureState& n, double y);

struct FourStateGuessing {
    double grid_optimum;       ///< best projective measurement on the Bloch grid
    double analytic_bound;     ///< 1/4 * sum_k Tr(E_k) * max_i lambda_max(rho_i)
    PureState best_direction;  ///< grid point attaining grid_optimum
};

/// Minimum-error guessing probability for the four honest states with prior
/// 1/4 each, by grid search over projective measurements plus the analytic
/// upper bound.
FourStateGuessing four_state_guessing_probability(double y, double grid_step_degrees = 1.0);

}  // namespace mdiqct
