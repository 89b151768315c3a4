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

#include <optional>
#include <vector>

#include "henntomo/dynamics.hpp"
#include "henntomo/pauli.hpp"
#include "henntomo/spin_models.hpp"

namespace henntomo {

/// Time-integrated absolute Pauli coefficients of a Hamiltonian series. Both vectors have
/// length 4^n; the identity entry is always zero.
struct CouplingProfile {
    int n = 0;
    RVector cbar;
    /// cbar / max(cbar).
    RVector normalized;
};

/// Trapezoid-rule integral of |c_i(t)| over the grid for every non-identity string, normalized
/// by its maximum. Throws NumericError when every coefficient integrates to zero.
CouplingProfile coupling_profile(const OperatorSeries &h_series);

/// Same, from a 4^n x n_samples coefficient matrix sampled on `grid`.
CouplingProfile coupling_profile(const RMatrix &coefficients, const TimeGrid &grid);

/// Indices whose normalized value is strictly greater than `threshold`.
LinkSet classify_links(const CouplingProfile &profile, double threshold = 0.10);

/// Size of the symmetric difference of two link sets, restricted to `scope` when given.
std::size_t missing_links(const LinkSet &predicted, const LinkSet &truth,
                          const std::vector<std::size_t> *scope = nullptr);

/// (4^n - 1 - missing) / (4^n - 1).
double fidelity_t(const LinkSet &predicted, const LinkSet &truth, int n);

/// Same score over the strings that act on hidden spins only, out of 4^{n'} - 1.
/// Throws InputError when no spin is hidden.
double fidelity_tprime(const LinkSet &predicted, const LinkSet &truth, const SubspacePartition &partition);

/// 1 - <|H_loc(pred) - H_loc(true)|_F> / <|H_loc(true)|_F>, clamped at 0, where H_loc keeps the
/// observed and interaction strings and <.> averages over the samples. Inputs are 4^n x T
/// coefficient matrices. Throws NumericError when the true local part vanishes.
double fidelity_local(const RMatrix &pred_coefficients, const RMatrix &true_coefficients,
                      const SubspacePartition &partition);

double fidelity_local(const OperatorSeries &pred_series, const OperatorSeries &true_series,
                      const SubspacePartition &partition);

struct TomographyReport {
    int n = 0;
    std::vector<int> observed;
    double threshold = 0.10;
    CouplingProfile profile;
    LinkSet predicted_links;
    LinkSet truth_links;
    double f_t = 0.0;
    /// Empty when every spin is observed.
    std::optional<double> f_tprime;
    std::optional<double> f_local;
    SubspacePartition partition;
};

/// Profile, classification and all applicable fidelities for a predicted coefficient series.
/// f_local is left empty when the true local Hamiltonian is zero.
TomographyReport score_prediction(const RMatrix &pred_coefficients, const RMatrix &true_coefficients,
                                  const TimeGrid &grid, const LinkSet &truth, const std::vector<int> &observed,
                                  double threshold = 0.10);

/// Pauli coefficients of H(t_j) for a spec, 4^n x n_samples.
RMatrix spec_coefficients(const HamiltonianSpec &spec, const TimeGrid &grid);

}  // namespace henntomo
