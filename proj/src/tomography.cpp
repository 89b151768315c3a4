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


#include "henntomo/tomography.hpp"

#include <algorithm>
#include <cmath>

#include "henntomo/error.hpp"

namespace henntomo {

CouplingProfile coupling_profile(const RMatrix &coefficients, const TimeGrid &grid) {
    grid.validate();
    if (coefficients.cols() != grid.n_samples) {
        throw ContractError("coefficient series length does not match the grid");
    }
    CouplingProfile p;
    p.n = -1;
    for (int n = 1; n <= kMaxSpins; ++n) {
        if (static_cast<std::size_t>(coefficients.rows()) == basis_size(n)) {
            p.n = n;
        }
    }
    if (p.n < 0) {
        throw SizeError("coefficient rows must be 4^n");
    }
    const double dt = grid.spacing();
    const RMatrix a = coefficients.cwiseAbs();
    const Eigen::Index last = a.cols() - 1;
    p.cbar = dt * (a.rowwise().sum() - 0.5 * (a.col(0) + a.col(last)));
    p.cbar(0) = 0.0;
    const double top = p.cbar.maxCoeff();
    if (!(top > 0.0)) {
        throw NumericError("degenerate prediction: every coupling integrates to zero");
    }
    p.normalized = p.cbar / top;
    return p;
}

CouplingProfile coupling_profile(const OperatorSeries &h_series) {
    if (h_series.matrices.empty()) {
        throw ContractError("empty Hamiltonian series");
    }
    RMatrix coeffs(static_cast<Eigen::Index>(basis_size(spin_count_of(h_series.matrices.front()))),
                   static_cast<Eigen::Index>(h_series.matrices.size()));
    for (std::size_t j = 0; j < h_series.matrices.size(); ++j) {
        coeffs.col(static_cast<Eigen::Index>(j)) = decompose(h_series.matrices[j]).values;
    }
    return coupling_profile(coeffs, h_series.grid);
}

LinkSet classify_links(const CouplingProfile &profile, double threshold) {
    LinkSet links;
    for (Eigen::Index i = 1; i < profile.normalized.size(); ++i) {
        if (profile.normalized(i) > threshold) {
            links.insert(static_cast<std::size_t>(i));
        }
    }
    return links;
}

std::size_t missing_links(const LinkSet &predicted, const LinkSet &truth, const std::vector<std::size_t> *scope) {
    auto wrong = [&](std::size_t i) { return predicted.count(i) != truth.count(i); };
    std::size_t count = 0;
    if (scope != nullptr) {
        for (std::size_t i : *scope) {
            count += wrong(i) ? 1 : 0;
        }
        return count;
    }
    LinkSet all = predicted;
    all.insert(truth.begin(), truth.end());
    for (std::size_t i : all) {
        count += (i != 0 && wrong(i)) ? 1 : 0;
    }
    return count;
}

double fidelity_t(const LinkSet &predicted, const LinkSet &truth, int n) {
    check_spin_count(n);
    const double total = static_cast<double>(basis_size(n) - 1);
    for (const LinkSet *s : {&predicted, &truth}) {
        if (!s->empty() && (*s->begin() == 0 || *s->rbegin() >= basis_size(n))) {
            throw ContractError("link index outside the non-identity basis");
        }
    }
    return (total - static_cast<double>(missing_links(predicted, truth))) / total;
}

double fidelity_tprime(const LinkSet &predicted, const LinkSet &truth, const SubspacePartition &partition) {
    if (partition.hidden_spin_count() == 0) {
        throw InputError("F_t' is undefined when no spin is hidden");
    }
    const std::vector<std::size_t> hidden = partition.indices(SubspaceClass::kHidden);
    const double total = std::pow(4.0, partition.hidden_spin_count()) - 1.0;
    return (total - static_cast<double>(missing_links(predicted, truth, &hidden))) / total;
}

double fidelity_local(const RMatrix &pred_coefficients, const RMatrix &true_coefficients,
                      const SubspacePartition &partition) {
    if (pred_coefficients.rows() != true_coefficients.rows() || pred_coefficients.cols() != true_coefficients.cols()) {
        throw ContractError("predicted and true series differ in shape");
    }
    if (static_cast<std::size_t>(true_coefficients.rows()) != basis_size(partition.n)) {
        throw ContractError("coefficient rows do not match the partition");
    }
    std::vector<std::size_t> local = partition.indices(SubspaceClass::kObserved);
    const std::vector<std::size_t> inter = partition.indices(SubspaceClass::kInteraction);
    local.insert(local.end(), inter.begin(), inter.end());
    // |sum c_i S_i|_F = sqrt(2^n sum c_i^2)
    const double dim = static_cast<double>(hilbert_dim(partition.n));
    double diff = 0.0;
    double ref = 0.0;
    for (Eigen::Index j = 0; j < true_coefficients.cols(); ++j) {
        double d2 = 0.0;
        double r2 = 0.0;
        for (std::size_t i : local) {
            const auto r = static_cast<Eigen::Index>(i);
            const double t = true_coefficients(r, j);
            const double e = pred_coefficients(r, j) - t;
            d2 += e * e;
            r2 += t * t;
        }
        diff += std::sqrt(dim * d2);
        ref += std::sqrt(dim * r2);
    }
    if (!(ref > 0.0)) {
        throw NumericError("F_o' is undefined for a zero local Hamiltonian");
    }
    return std::max(0.0, 1.0 - diff / ref);
}

double fidelity_local(const OperatorSeries &pred_series, const OperatorSeries &true_series,
                      const SubspacePartition &partition) {
    if (pred_series.matrices.size() != true_series.matrices.size()) {
        throw ContractError("predicted and true series differ in length");
    }
    auto coeffs = [](const OperatorSeries &s) {
        RMatrix out(static_cast<Eigen::Index>(basis_size(spin_count_of(s.matrices.front()))),
                    static_cast<Eigen::Index>(s.matrices.size()));
        for (std::size_t j = 0; j < s.matrices.size(); ++j) {
            out.col(static_cast<Eigen::Index>(j)) = decompose(s.matrices[j]).values;
        }
        return out;
    };
    if (true_series.matrices.empty()) {
        throw ContractError("empty Hamiltonian series");
    }
    return fidelity_local(coeffs(pred_series), coeffs(true_series), partition);
}

TomographyReport score_prediction(const RMatrix &pred_coefficients, const RMatrix &true_coefficients,
                                  const TimeGrid &grid, const LinkSet &truth, const std::vector<int> &observed,
                                  double threshold) {
    TomographyReport r;
    r.profile = coupling_profile(pred_coefficients, grid);
    r.n = r.profile.n;
    r.observed = observed;
    r.threshold = threshold;
    r.partition = partition_subspaces(r.n, observed);
    r.predicted_links = classify_links(r.profile, threshold);
    r.truth_links = truth;
    r.f_t = fidelity_t(r.predicted_links, truth, r.n);
    if (r.partition.hidden_spin_count() > 0) {
        r.f_tprime = fidelity_tprime(r.predicted_links, truth, r.partition);
    }
    try {
        r.f_local = fidelity_local(pred_coefficients, true_coefficients, r.partition);
    } catch (const NumericError &) {
        r.f_local.reset();
    }
    return r;
}

RMatrix spec_coefficients(const HamiltonianSpec &spec, const TimeGrid &grid) {
    grid.validate();
    RMatrix out(static_cast<Eigen::Index>(basis_size(spec.n)), grid.n_samples);
    for (int j = 0; j < grid.n_samples; ++j) {
        out.col(j) = spec.c1.values + spec.driving(grid.time(j)) * spec.c2.values;
    }
    return out;
}

}  // namespace henntomo
