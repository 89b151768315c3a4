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


#include <gtest/gtest.h>

#include <cmath>

#include "henntomo/error.hpp"
#include "henntomo/rng.hpp"
#include "henntomo/tomography.hpp"

namespace henntomo {
namespace {

RMatrix constant_coefficients(int n, const std::vector<std::pair<std::size_t, double>> &entries, int samples) {
    RMatrix c = RMatrix::Zero(static_cast<Eigen::Index>(basis_size(n)), samples);
    for (auto [i, v] : entries) {
        c.row(static_cast<Eigen::Index>(i)).setConstant(v);
    }
    return c;
}

TEST(Profile, ConstantCoefficients) {
    const TimeGrid grid{0.0, 2.0, 11, 1};
    const CouplingProfile p = coupling_profile(constant_coefficients(1, {{0, 9.0}, {1, 0.5}, {3, -2.0}}, 11), grid);
    EXPECT_NEAR(p.cbar(1), 1.0, 1e-12);
    EXPECT_NEAR(p.cbar(3), 4.0, 1e-12);
    EXPECT_EQ(p.cbar(0), 0.0);
    EXPECT_NEAR(p.normalized(1), 0.25, 1e-12);
    EXPECT_NEAR(p.normalized(3), 1.0, 1e-12);
}

TEST(Profile, TrapezoidOfAbsoluteValue) {
    const TimeGrid grid{0.0, 2.0, 3, 1};
    RMatrix c = RMatrix::Zero(4, 3);
    c.row(2) << 1.0, -1.0, 3.0;
    const CouplingProfile p = coupling_profile(c, grid);
    EXPECT_NEAR(p.cbar(2), 0.5 * (1.0 + 1.0) + 0.5 * (1.0 + 3.0), 1e-12);
}

TEST(Profile, ScaleInvariant) {
    Rng rng(4);
    const TimeGrid grid{0.0, 5.0, 30, 1};
    RMatrix c = RMatrix::NullaryExpr(16, 30, [&] { return uniform01(rng) - 0.5; });
    const CouplingProfile a = coupling_profile(c, grid);
    const CouplingProfile b = coupling_profile(-3.7 * c, grid);
    EXPECT_LT((a.normalized - b.normalized).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(a.normalized.maxCoeff(), 1.0, 1e-15);
}

TEST(Profile, ZeroRaises) {
    EXPECT_THROW(coupling_profile(constant_coefficients(2, {{0, 1.0}}, 5), TimeGrid{0, 1, 5, 1}), NumericError);
}

TEST(Profile, SeriesOverloadAgrees) {
    const TimeGrid grid{0.0, 5.0, 20, 1};
    const HamiltonianSpec spec = gen_two_body(NetworkTopology::chain(2), 6);
    OperatorSeries s{grid, "H", {}};
    for (double t : grid.times()) {
        s.matrices.push_back(eval_hamiltonian(spec, t));
    }
    const CouplingProfile a = coupling_profile(s);
    const CouplingProfile b = coupling_profile(spec_coefficients(spec, grid), grid);
    EXPECT_LT((a.cbar - b.cbar).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Classify, StrictThreshold) {
    CouplingProfile p;
    p.n = 1;
    p.normalized = RVector(4);
    p.normalized << 0.0, 0.1, 0.1000001, 1.0;
    p.cbar = p.normalized;
    EXPECT_EQ(classify_links(p, 0.1), (LinkSet{2, 3}));
    EXPECT_EQ(classify_links(p, 0.0), (LinkSet{1, 2, 3}));
}

TEST(Classify, ThresholdMonotone) {
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        CouplingProfile p;
        p.n = 2;
        p.cbar = RVector::NullaryExpr(16, [&] { return uniform01(rng); });
        p.cbar(0) = 0.0;
        p.normalized = p.cbar / p.cbar.maxCoeff();
        LinkSet previous = classify_links(p, 0.0);
        for (double th = 0.05; th < 1.0; th += 0.05) {
            const LinkSet current = classify_links(p, th);
            for (std::size_t i : current) {
                EXPECT_TRUE(previous.count(i));
            }
            previous = current;
        }
    }
}

TEST(Fidelity, CountsMissingLinks) {
    const LinkSet truth{1, 2, 5};
    EXPECT_EQ(fidelity_t(truth, truth, 3), 1.0);
    EXPECT_EQ(missing_links(LinkSet{1, 3, 5, 7}, truth), 3u);
    EXPECT_DOUBLE_EQ(fidelity_t(LinkSet{1, 3, 5, 7}, truth, 3), 60.0 / 63.0);
    EXPECT_DOUBLE_EQ(fidelity_t(LinkSet{}, LinkSet{}, 2), 1.0);
    const std::vector<std::size_t> scope{3, 7};
    EXPECT_EQ(missing_links(LinkSet{1, 3, 5, 7}, truth, &scope), 2u);
    EXPECT_THROW(fidelity_t(LinkSet{64}, truth, 3), ContractError);
}

TEST(Fidelity, OneOnlyWhenSetsMatch) {
    Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        LinkSet a, b;
        for (std::size_t i = 1; i < 16; ++i) {
            if (uniform01(rng) < 0.3) a.insert(i);
            if (uniform01(rng) < 0.3) b.insert(i);
        }
        const double f = fidelity_t(a, b, 2);
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0);
        EXPECT_EQ(f == 1.0, a == b);
        EXPECT_EQ(f, fidelity_t(b, a, 2));
    }
}

TEST(Fidelity, HiddenSubspace) {
    const SubspacePartition part = partition_subspaces(3, {0});
    const auto hidden = part.indices(SubspaceClass::kHidden);
    ASSERT_EQ(hidden.size(), 15u);
    LinkSet pred{hidden[0], hidden[1], 1};
    const LinkSet truth{hidden[0]};
    EXPECT_DOUBLE_EQ(fidelity_tprime(pred, truth, part), 14.0 / 15.0);
    EXPECT_THROW(fidelity_tprime(pred, truth, partition_subspaces(2, {0, 1})), InputError);
}

TEST(Fidelity, LocalPerfectZeroAndBounds) {
    const SubspacePartition part = partition_subspaces(2, {0});
    const TimeGrid grid{0.0, 5.0, 20, 1};
    const RMatrix truth = spec_coefficients(gen_two_body(NetworkTopology::chain(2), 3), grid);
    EXPECT_NEAR(fidelity_local(truth, truth, part), 1.0, 1e-15);
    EXPECT_EQ(fidelity_local(RMatrix::Zero(16, 20), truth, part), 0.0);
    EXPECT_EQ(fidelity_local(-5.0 * truth, truth, part), 0.0);
    RMatrix hidden_only = truth;
    for (std::size_t i : part.indices(SubspaceClass::kHidden)) {
        hidden_only.row(static_cast<Eigen::Index>(i)).setConstant(3.0);
    }
    EXPECT_NEAR(fidelity_local(hidden_only, truth, part), 1.0, 1e-15);
    Rng rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const RMatrix noise = RMatrix::NullaryExpr(16, 20, [&] { return uniform01(rng) - 0.5; });
        const double f = fidelity_local(truth + noise, truth, part);
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0);
    }
    RMatrix local_zero = RMatrix::Zero(16, 20);
    local_zero.row(static_cast<Eigen::Index>(part.indices(SubspaceClass::kHidden)[0])).setConstant(1.0);
    EXPECT_THROW(fidelity_local(truth, local_zero, part), NumericError);
}

TEST(Report, ExactPredictionScoresOne) {
    const TimeGrid grid{0.0, 5.0, 50, 1};
    const HamiltonianSpec spec = gen_two_body(NetworkTopology::cyclic(3), 8);
    const RMatrix c = spec_coefficients(spec, grid);
    const TomographyReport all = score_prediction(c, c, grid, true_link_set(spec), {0}, 0.0);
    EXPECT_EQ(all.f_t, 1.0);
    ASSERT_TRUE(all.f_tprime.has_value());
    EXPECT_EQ(*all.f_tprime, 1.0);
    ASSERT_TRUE(all.f_local.has_value());
    EXPECT_NEAR(*all.f_local, 1.0, 1e-15);
    EXPECT_EQ(all.predicted_links, all.truth_links);
}

TEST(Report, WeakTrueLinksFallBelowThreshold) {
    const TimeGrid grid{0.0, 5.0, 50, 1};
    const HamiltonianSpec spec = gen_two_body(NetworkTopology::cyclic(3), 8);
    const RMatrix c = spec_coefficients(spec, grid);
    const TomographyReport r = score_prediction(c, c, grid, true_link_set(spec), {0});
    EXPECT_EQ(r.predicted_links, classify_links(coupling_profile(c, grid), 0.10));
    EXPECT_DOUBLE_EQ(r.f_t, fidelity_t(r.predicted_links, r.truth_links, 3));
    for (std::size_t i : r.predicted_links) {
        EXPECT_TRUE(r.truth_links.count(i));
    }
}

TEST(Report, AllObservedHasNoHiddenScore) {
    const TimeGrid grid{0.0, 5.0, 50, 1};
    const RMatrix c = spec_coefficients(one_spin_sine(), grid);
    const TomographyReport r = score_prediction(c, c, grid, true_link_set(one_spin_sine()), {0});
    EXPECT_FALSE(r.f_tprime.has_value());
    EXPECT_EQ(r.predicted_links, (LinkSet{1}));
}

TEST(SpecCoefficients, MatchDecomposition) {
    const TimeGrid grid{0.0, 5.0, 7, 1};
    const HamiltonianSpec spec = gen_long_range(3, 11);
    const RMatrix c = spec_coefficients(spec, grid);
    for (int j = 0; j < grid.n_samples; ++j) {
        const PauliCoefficients d = decompose(eval_hamiltonian(spec, grid.time(j)));
        EXPECT_LT((d.values - c.col(j)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

}  // namespace
}  // namespace henntomo
