// Copyright 2026 The henntomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "henntomo/linalg.hpp"
#include "henntomo/pauli.hpp"
#include "henntomo/spin_models.hpp"

namespace henntomo {

/// n_samples equally spaced measurement times on [t_start, t_end], endpoints included, with
/// `substeps` integrator steps between consecutive samples.
struct TimeGrid {
    double t_start = 0.0;
    double t_end = 5.0;
    int n_samples = 100;
    /// Minimum RK4 steps per interval; see rk4_steps_per_interval.
    int substeps = 10;

    /// Throws InputError on an empty interval, fewer than 2 samples or substeps < 1.
    void validate() const;
    double spacing() const { return (t_end - t_start) / (n_samples - 1); }
    double time(int j) const { return t_start + j * spacing(); }
    std::vector<double> times() const;
};

struct InitialStateEnsemble {
    int n = 0;
    std::vector<CVector> states;
    std::uint64_t seed = 0;

    /// States as the columns of a 2^n x count matrix.
    CMatrix as_matrix() const;
    int count() const { return static_cast<int>(states.size()); }
};

/// Amplitudes sqrt(r_k) exp(2 pi i theta_k) with r_k, theta_k uniform on [0,1), drawn in the
/// order r_0, theta_0, r_1, theta_1, ..., then normalized.
InitialStateEnsemble gen_initial_states(int n, int count, std::uint64_t seed);

/// Largest |H| dt allowed for an RK4 step by default.
inline constexpr double kMaxPhaseStep = 0.02;

/// RK4 steps per sample interval: grid.substeps, raised when needed so that
/// hamiltonian.norm_bound() * dt <= max_phase_step. max_phase_step <= 0 disables the raise.
int rk4_steps_per_interval(const DenseHamiltonian &hamiltonian, const TimeGrid &grid,
                           double max_phase_step = kMaxPhaseStep);

/// Integrates d psi/dt = -i H(t) psi with classic RK4 for every column of `psi0` and returns the
/// states at each grid sample (element 0 is psi0 itself). Throws NumericError when any norm
/// drifts by more than 1e-6.
std::vector<CMatrix> evolve_states(const DenseHamiltonian &hamiltonian, const CMatrix &psi0, const TimeGrid &grid,
                                   double max_phase_step = kMaxPhaseStep);

std::vector<CVector> evolve_state(const HamiltonianSpec &spec, const CVector &psi0, const TimeGrid &grid);

/// Largest |norm - 1| over a trajectory.
double max_norm_drift(const std::vector<CMatrix> &trajectory);

/// Dense [d0 x d1 x d2] array of doubles, last index fastest.
class Array3 {
   public:
    Array3() = default;
    Array3(std::size_t d0, std::size_t d1, std::size_t d2, double fill = 0.0)
        : d0_(d0), d1_(d1), d2_(d2), data_(d0 * d1 * d2, fill) {}

    double &operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * d1_ + j) * d2_ + k]; }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const { return data_[(i * d1_ + j) * d2_ + k]; }

    std::size_t dim0() const { return d0_; }
    std::size_t dim1() const { return d1_; }
    std::size_t dim2() const { return d2_; }
    std::size_t size() const { return data_.size(); }
    std::vector<double> &data() { return data_; }
    const std::vector<double> &data() const { return data_; }

    bool same_shape(const Array3 &o) const { return d0_ == o.d0_ && d1_ == o.d1_ && d2_ == o.d2_; }

   private:
    std::size_t d0_ = 0, d1_ = 0, d2_ = 0;
    std::vector<double> data_;
};

enum class DerivativeMode { kExact, kFiniteDiff };

std::string to_string(DerivativeMode mode);
DerivativeMode parse_derivative_mode(const std::string &name);

/// Measured expectation values <A_k>(t_j) for every initial state s, stored as values(s, k, j),
/// with matching time derivatives.
struct ObservationSet {
    int n = 0;
    TimeGrid grid;
    std::vector<int> observed;
    std::vector<PauliString> observables;
    Array3 values;
    Array3 derivatives;
    DerivativeMode derivative_mode = DerivativeMode::kExact;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

/// sigma_x, sigma_y, sigma_z of a single observed spin, or every non-identity product over
/// several observed spins (15 for two), in canonical order.
std::vector<PauliString> observables_for(int n, const std::vector<int> &observed);

/// Simulates every initial state and records <A_k> and d<A_k>/dt at the grid samples.
/// Exact derivatives are i<[H(t), A]>; finite differences use the sampled values.
/// Throws ContractError if an observable acts on a spin outside `observed`.
ObservationSet measure_expectations(const HamiltonianSpec &spec, const InitialStateEnsemble &ensemble,
                                    const std::vector<PauliString> &observables, const std::vector<int> &observed,
                                    const TimeGrid &grid, DerivativeMode mode);

/// Second-order central differences along the time axis, second-order one-sided at the ends.
Array3 finite_difference(const Array3 &values, double dt);

/// Adds N(0, sigma^2) to every value and recomputes derivatives by finite differences.
ObservationSet add_noise(const ObservationSet &obs, double sigma, std::uint64_t seed);

/// Time-indexed Hermitian matrices sampled on a grid.
struct OperatorSeries {
    TimeGrid grid;
    std::string label;
    std::vector<CMatrix> matrices;
};

struct HeisenbergReconstruction {
    /// A^H_k(t_j), one series per observable.
    std::vector<OperatorSeries> operators;
    /// d A^H_k / dt at the same samples, from the derivative data.
    std::vector<OperatorSeries> derivatives;
    /// ||M x - b|| / ||b|| over all value right-hand sides.
    double relative_residual = 0.0;
    /// |R_00 / R_kk| of the pivoted QR of the design matrix.
    double condition_estimate = 0.0;
};

/// Solves <psi_s| A^H(t) |psi_s> = <A>_t for the Pauli coefficients of A^H(t) at every sample,
/// with one column-pivoted QR of the design matrix M[s, i] = <psi_s| S_i |psi_s> reused for every
/// time and observable. Throws NumericError if M has numerical rank below 4^n.
HeisenbergReconstruction reconstruct_heisenberg(const ObservationSet &obs, const InitialStateEnsemble &ensemble);

struct PictureConversion {
    OperatorSeries schrodinger;
    /// Largest |U^dagger U - I| seen while stepping.
    double max_unitarity_error = 0.0;
};

/// H(t_k) = U_k H^H(t_k) U_k^dagger with U_0 = I and
/// U_{k+1} = U_k exp(-i H^H(t_mid) dt), which is the same step as exp(-i H(t_mid) dt) U_k.
/// `heisenberg_at` supplies H^H at any time; each grid interval is split into `substeps`
/// midpoint steps. Throws NumericError when unitarity drifts beyond 1e-6.
PictureConversion heisenberg_to_schrodinger(const std::function<CMatrix(double)> &heisenberg_at,
                                            const TimeGrid &grid, int substeps = 1);

/// Series overload: H^H between samples is linearly interpolated.
PictureConversion heisenberg_to_schrodinger(const OperatorSeries &hh, int substeps = 1);

/// Exact-picture helper for tests and oracles: U(t_j) for every sample by RK4 on the basis.
std::vector<CMatrix> propagators(const DenseHamiltonian &hamiltonian, const TimeGrid &grid,
                                 double max_phase_step = kMaxPhaseStep);

}  // namespace henntomo
