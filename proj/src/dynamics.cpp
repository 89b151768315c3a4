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

#include "henntomo/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "henntomo/error.hpp"
#include "henntomo/rng.hpp"

namespace henntomo {

namespace {

// S * psi for every column of psi.
CMatrix apply_pauli(const PauliString &ps, const CMatrix &psi) {
    const std::uint32_t flip = ps.flip_mask();
    CMatrix out(psi.rows(), psi.cols());
    for (Eigen::Index r = 0; r < psi.rows(); ++r) {
        const auto row = static_cast<std::uint32_t>(r);
        out.row(r) = ps.row_value(row) * psi.row(static_cast<Eigen::Index>(row ^ flip));
    }
    return out;
}

// Re <psi_s| S |psi_s> for every column s.
RVector pauli_expectations(const PauliString &ps, const CMatrix &psi) {
    return (psi.conjugate().cwiseProduct(apply_pauli(ps, psi))).colwise().sum().real().transpose();
}

void check_observables(int n, const std::vector<PauliString> &observables, const std::vector<int> &observed) {
    std::vector<bool> is_observed(static_cast<std::size_t>(n), false);
    for (int s : observed) {
        if (s < 0 || s >= n) {
            throw ContractError("observed spin " + std::to_string(s) + " out of range");
        }
        is_observed[static_cast<std::size_t>(s)] = true;
    }
    for (const auto &ps : observables) {
        if (ps.num_spins() != n) {
            throw ContractError("observable " + ps.label() + " has the wrong spin count");
        }
        for (int k = 0; k < n; ++k) {
            if (ps[k] != 0 && !is_observed[static_cast<std::size_t>(k)]) {
                throw ContractError("observable " + ps.label() + " acts on hidden spin " + std::to_string(k));
            }
        }
    }
}

}  // namespace

void TimeGrid::validate() const {
    if (!(t_end > t_start)) {
        throw InputError("time grid needs t_end > t_start");
    }
    if (n_samples < 2) {
        throw InputError("time grid needs at least 2 samples");
    }
    if (substeps < 1) {
        throw InputError("time grid needs substeps >= 1");
    }
}

std::vector<double> TimeGrid::times() const {
    std::vector<double> out(static_cast<std::size_t>(n_samples));
    for (int j = 0; j < n_samples; ++j) {
        out[static_cast<std::size_t>(j)] = time(j);
    }
    return out;
}

CMatrix InitialStateEnsemble::as_matrix() const {
    CMatrix m(static_cast<Eigen::Index>(hilbert_dim(n)), static_cast<Eigen::Index>(states.size()));
    for (std::size_t s = 0; s < states.size(); ++s) {
        m.col(static_cast<Eigen::Index>(s)) = states[s];
    }
    return m;
}

InitialStateEnsemble gen_initial_states(int n, int count, std::uint64_t seed) {
    check_spin_count(n);
    if (count < 1) {
        throw InputError("initial state count must be positive");
    }
    Rng rng(seed);
    InitialStateEnsemble ens;
    ens.n = n;
    ens.seed = seed;
    const auto dim = static_cast<Eigen::Index>(hilbert_dim(n));
    ens.states.reserve(static_cast<std::size_t>(count));
    for (int s = 0; s < count; ++s) {
        CVector psi(dim);
        for (Eigen::Index k = 0; k < dim; ++k) {
            const double r = uniform01(rng);
            const double theta = uniform01(rng);
            psi(k) = std::sqrt(r) * std::exp(2.0 * kPi * kI * theta);
        }
        psi /= psi.norm();
        ens.states.push_back(std::move(psi));
    }
    return ens;
}

int rk4_steps_per_interval(const DenseHamiltonian &hamiltonian, const TimeGrid &grid, double max_phase_step) {
    grid.validate();
    if (max_phase_step <= 0.0) {
        return grid.substeps;
    }
    const double needed = std::ceil(hamiltonian.norm_bound() * grid.spacing() / max_phase_step);
    return std::max(grid.substeps, static_cast<int>(needed));
}

std::vector<CMatrix> evolve_states(const DenseHamiltonian &hamiltonian, const CMatrix &psi0, const TimeGrid &grid,
                                   double max_phase_step) {
    grid.validate();
    if (static_cast<std::size_t>(psi0.rows()) != hilbert_dim(hamiltonian.num_spins())) {
        throw ContractError("state dimension does not match the Hamiltonian");
    }
    const int steps = rk4_steps_per_interval(hamiltonian, grid, max_phase_step);
    const double dt = grid.spacing() / steps;
    std::vector<CMatrix> out;
    out.reserve(static_cast<std::size_t>(grid.n_samples));
    out.push_back(psi0);
    CMatrix psi = psi0;
    for (int j = 1; j < grid.n_samples; ++j) {
        const double t0 = grid.time(j - 1);
        for (int m = 0; m < steps; ++m) {
            const double t = t0 + m * dt;
            const CMatrix h0 = hamiltonian.at(t);
            const CMatrix hmid = hamiltonian.at(t + 0.5 * dt);
            const CMatrix h1 = hamiltonian.at(t + dt);
            const CMatrix k1 = -kI * (h0 * psi);
            const CMatrix k2 = -kI * (hmid * (psi + 0.5 * dt * k1));
            const CMatrix k3 = -kI * (hmid * (psi + 0.5 * dt * k2));
            const CMatrix k4 = -kI * (h1 * (psi + dt * k3));
            psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        out.push_back(psi);
    }
    const double drift = max_norm_drift(out);
    if (drift > 1e-6) {
        std::ostringstream msg;
        msg << "RK4 norm drift " << drift << " exceeds 1e-6; increase substeps (currently " << steps << ")";
        throw NumericError(msg.str());
    }
    return out;
}

std::vector<CVector> evolve_state(const HamiltonianSpec &spec, const CVector &psi0, const TimeGrid &grid) {
    const auto traj = evolve_states(DenseHamiltonian(spec), psi0, grid);
    std::vector<CVector> out;
    out.reserve(traj.size());
    for (const auto &m : traj) {
        out.emplace_back(m.col(0));
    }
    return out;
}

double max_norm_drift(const std::vector<CMatrix> &trajectory) {
    double drift = 0.0;
    for (const auto &m : trajectory) {
        drift = std::max(drift, (m.colwise().norm().array() - 1.0).abs().maxCoeff());
    }
    return drift;
}

std::string to_string(DerivativeMode mode) { return mode == DerivativeMode::kExact ? "exact" : "finite_diff"; }

DerivativeMode parse_derivative_mode(const std::string &name) {
    if (name == "exact") return DerivativeMode::kExact;
    if (name == "finite_diff") return DerivativeMode::kFiniteDiff;
    throw InputError("unknown derivative mode '" + name + "'");
}

std::vector<PauliString> observables_for(int n, const std::vector<int> &observed) {
    const SubspacePartition part = partition_subspaces(n, observed);
    std::vector<PauliString> out;
    for (std::size_t i : part.indices(SubspaceClass::kObserved)) {
        out.push_back(PauliString::from_index(n, i));
    }
    return out;
}

ObservationSet measure_expectations(const HamiltonianSpec &spec, const InitialStateEnsemble &ensemble,
                                    const std::vector<PauliString> &observables, const std::vector<int> &observed,
                                    const TimeGrid &grid, DerivativeMode mode) {
    if (ensemble.n != spec.n) {
        throw ContractError("ensemble spin count does not match the Hamiltonian");
    }
    check_observables(spec.n, observables, observed);
    const DenseHamiltonian hamiltonian(spec);
    const auto trajectory = evolve_states(hamiltonian, ensemble.as_matrix(), grid);

    ObservationSet obs;
    obs.n = spec.n;
    obs.grid = grid;
    obs.observed = observed;
    obs.observables = observables;
    obs.derivative_mode = mode;
    obs.seed = ensemble.seed;
    const auto n_states = static_cast<std::size_t>(ensemble.count());
    const std::size_t n_obs = observables.size();
    const auto n_t = static_cast<std::size_t>(grid.n_samples);
    obs.values = Array3(n_states, n_obs, n_t);
    obs.derivatives = Array3(n_states, n_obs, n_t);

    for (std::size_t j = 0; j < n_t; ++j) {
        const CMatrix &psi = trajectory[j];
        CMatrix h_psi;
        if (mode == DerivativeMode::kExact) {
            h_psi = hamiltonian.at(grid.time(static_cast<int>(j))) * psi;
        }
        for (std::size_t k = 0; k < n_obs; ++k) {
            const CMatrix a_psi = apply_pauli(observables[k], psi);
            const RVector vals = (psi.conjugate().cwiseProduct(a_psi)).colwise().sum().real().transpose();
            for (std::size_t s = 0; s < n_states; ++s) {
                obs.values(s, k, j) = vals(static_cast<Eigen::Index>(s));
            }
            if (mode == DerivativeMode::kExact) {
                // i <[H, A]> = -2 Im <H psi | A psi>
                const RVector d = -2.0 * (h_psi.conjugate().cwiseProduct(a_psi)).colwise().sum().imag().transpose();
                for (std::size_t s = 0; s < n_states; ++s) {
                    obs.derivatives(s, k, j) = d(static_cast<Eigen::Index>(s));
                }
            }
        }
    }
    if (mode == DerivativeMode::kFiniteDiff) {
        obs.derivatives = finite_difference(obs.values, grid.spacing());
    }
    return obs;
}

Array3 finite_difference(const Array3 &values, double dt) {
    const std::size_t n_t = values.dim2();
    Array3 out(values.dim0(), values.dim1(), n_t);
    if (n_t < 2) {
        return out;
    }
    for (std::size_t s = 0; s < values.dim0(); ++s) {
        for (std::size_t k = 0; k < values.dim1(); ++k) {
            if (n_t == 2) {
                const double d = (values(s, k, 1) - values(s, k, 0)) / dt;
                out(s, k, 0) = out(s, k, 1) = d;
                continue;
            }
            for (std::size_t j = 1; j + 1 < n_t; ++j) {
                out(s, k, j) = (values(s, k, j + 1) - values(s, k, j - 1)) / (2.0 * dt);
            }
            out(s, k, 0) = (-3.0 * values(s, k, 0) + 4.0 * values(s, k, 1) - values(s, k, 2)) / (2.0 * dt);
            const std::size_t e = n_t - 1;
            out(s, k, e) = (3.0 * values(s, k, e) - 4.0 * values(s, k, e - 1) + values(s, k, e - 2)) / (2.0 * dt);
        }
    }
    return out;
}

ObservationSet add_noise(const ObservationSet &obs, double sigma, std::uint64_t seed) {
    if (!(sigma >= 0.0)) {
        throw InputError("noise sigma must be non-negative");
    }
    ObservationSet out = obs;
    if (sigma > 0.0) {
        Rng rng(seed);
        std::normal_distribution<double> gauss(0.0, sigma);
        for (double &v : out.values.data()) {
            v += gauss(rng);
        }
    }
    out.derivatives = finite_difference(out.values, out.grid.spacing());
    out.derivative_mode = DerivativeMode::kFiniteDiff;
    out.noise_sigma = sigma;
    return out;
}

HeisenbergReconstruction reconstruct_heisenberg(const ObservationSet &obs, const InitialStateEnsemble &ensemble) {
    const int n = obs.n;
    if (ensemble.n != n || static_cast<std::size_t>(ensemble.count()) != obs.values.dim0()) {
        throw ContractError("observations were not generated from this ensemble");
    }
    const auto n_basis = static_cast<Eigen::Index>(basis_size(n));
    const auto n_states = static_cast<Eigen::Index>(ensemble.count());
    const auto n_obs = static_cast<Eigen::Index>(obs.observables.size());
    const auto n_t = static_cast<Eigen::Index>(obs.grid.n_samples);

    const CMatrix psi = ensemble.as_matrix();
    RMatrix design(n_states, n_basis);
    for (Eigen::Index i = 0; i < n_basis; ++i) {
        design.col(i) = pauli_expectations(PauliString::from_index(n, static_cast<std::size_t>(i)), psi);
    }

    Eigen::ColPivHouseholderQR<RMatrix> qr(design);
    qr.setThreshold(1e-10);
    const RVector diag = qr.matrixR().diagonal().cwiseAbs();
    const Eigen::Index k_last = std::min(n_states, n_basis) - 1;
    const double cond = diag(k_last) > 0.0 ? diag(0) / diag(k_last) : std::numeric_limits<double>::infinity();
    if (qr.rank() < n_basis) {
        std::ostringstream msg;
        msg << "design matrix has numerical rank " << qr.rank() << " < 4^n = " << n_basis << " (condition estimate "
            << cond << "); use more or better-spread initial states";
        throw NumericError(msg.str());
    }

    RMatrix rhs_values(n_states, n_obs * n_t);
    RMatrix rhs_derivs(n_states, n_obs * n_t);
    for (Eigen::Index s = 0; s < n_states; ++s) {
        for (Eigen::Index k = 0; k < n_obs; ++k) {
            for (Eigen::Index j = 0; j < n_t; ++j) {
                const auto su = static_cast<std::size_t>(s), ku = static_cast<std::size_t>(k),
                           ju = static_cast<std::size_t>(j);
                rhs_values(s, k * n_t + j) = obs.values(su, ku, ju);
                rhs_derivs(s, k * n_t + j) = obs.derivatives(su, ku, ju);
            }
        }
    }
    const RMatrix coeff_values = qr.solve(rhs_values);
    const RMatrix coeff_derivs = qr.solve(rhs_derivs);

    HeisenbergReconstruction out;
    out.condition_estimate = cond;
    const double rhs_norm = rhs_values.norm();
    out.relative_residual = rhs_norm > 0.0 ? (design * coeff_values - rhs_values).norm() / rhs_norm : 0.0;

    PauliCoefficients c{n, RVector(n_basis)};
    for (Eigen::Index k = 0; k < n_obs; ++k) {
        OperatorSeries ops{obs.grid, obs.observables[static_cast<std::size_t>(k)].label(), {}};
        OperatorSeries ders{obs.grid, "d" + ops.label, {}};
        ops.matrices.reserve(static_cast<std::size_t>(n_t));
        ders.matrices.reserve(static_cast<std::size_t>(n_t));
        for (Eigen::Index j = 0; j < n_t; ++j) {
            c.values = coeff_values.col(k * n_t + j);
            ops.matrices.push_back(reconstruct(c));
            c.values = coeff_derivs.col(k * n_t + j);
            ders.matrices.push_back(reconstruct(c));
        }
        out.operators.push_back(std::move(ops));
        out.derivatives.push_back(std::move(ders));
    }
    return out;
}

PictureConversion heisenberg_to_schrodinger(const std::function<CMatrix(double)> &heisenberg_at,
                                            const TimeGrid &grid, int substeps) {
    grid.validate();
    if (substeps < 1) {
        throw InputError("picture conversion needs substeps >= 1");
    }
    PictureConversion out;
    out.schrodinger.grid = grid;
    out.schrodinger.label = "H";
    out.schrodinger.matrices.reserve(static_cast<std::size_t>(grid.n_samples));

    CMatrix first = heisenberg_at(grid.t_start);
    CMatrix u = CMatrix::Identity(first.rows(), first.cols());
    out.schrodinger.matrices.push_back(std::move(first));
    for (int k = 0; k + 1 < grid.n_samples; ++k) {
        const double t0 = grid.time(k);
        const double h = (grid.time(k + 1) - t0) / substeps;
        for (int m = 0; m < substeps; ++m) {
            u = u * unitary_step(heisenberg_at(t0 + (m + 0.5) * h), h);
        }
        const double err = unitarity_error(u);
        out.max_unitarity_error = std::max(out.max_unitarity_error, err);
        if (err > 1e-6) {
            throw NumericError("picture conversion lost unitarity (" + std::to_string(err) + ")");
        }
        const CMatrix hs = u * heisenberg_at(grid.time(k + 1)) * u.adjoint();
        out.schrodinger.matrices.push_back(0.5 * (hs + hs.adjoint()));
    }
    return out;
}

PictureConversion heisenberg_to_schrodinger(const OperatorSeries &hh, int substeps) {
    const TimeGrid &grid = hh.grid;
    grid.validate();
    if (hh.matrices.size() != static_cast<std::size_t>(grid.n_samples)) {
        throw ContractError("operator series length does not match its grid");
    }
    for (const auto &m : hh.matrices) {
        if (hermiticity_error(m) > 1e-10) {
            throw ContractError("operator series holds a non-Hermitian matrix");
        }
    }
    auto interp = [&hh, &grid](double t) -> CMatrix {
        const double x = (t - grid.t_start) / grid.spacing();
        const int k = std::clamp(static_cast<int>(std::floor(x)), 0, grid.n_samples - 2);
        const double a = x - k;
        if (a <= 0.0) {
            return hh.matrices[static_cast<std::size_t>(k)];
        }
        return (1.0 - a) * hh.matrices[static_cast<std::size_t>(k)] + a * hh.matrices[static_cast<std::size_t>(k + 1)];
    };
    return heisenberg_to_schrodinger(interp, grid, substeps);
}

std::vector<CMatrix> propagators(const DenseHamiltonian &hamiltonian, const TimeGrid &grid, double max_phase_step) {
    const auto dim = static_cast<Eigen::Index>(hilbert_dim(hamiltonian.num_spins()));
    return evolve_states(hamiltonian, CMatrix::Identity(dim, dim), grid, max_phase_step);
}

}  // namespace henntomo
