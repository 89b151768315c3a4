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

#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "henntomo/error.hpp"
#include "henntomo/pauli.hpp"

namespace henntomo {
namespace {

CMatrix random_hermitian(int n, std::mt19937_64 &rng) {
    const auto d = static_cast<Eigen::Index>(hilbert_dim(n));
    std::normal_distribution<double> g;
    CMatrix a(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            a(r, c) = Complex(g(rng), g(rng));
        }
    }
    return (a + a.adjoint()) / 2.0;
}

TEST(BasisEnumerate, SizesAndOrder) {
    const auto b1 = basis_enumerate(1);
    ASSERT_EQ(b1.size(), 4u);
    EXPECT_EQ(b1[0].label(), "I");
    EXPECT_EQ(b1[1].label(), "X");
    EXPECT_EQ(b1[2].label(), "Y");
    EXPECT_EQ(b1[3].label(), "Z");
    const auto b3 = basis_enumerate(3);
    ASSERT_EQ(b3.size(), 64u);
    EXPECT_EQ(b3[0].weight(), 0);
    for (std::size_t i = 1; i < b3.size(); ++i) {
        EXPECT_GT(b3[i].weight(), 0);
        EXPECT_EQ(b3[i].index(), i);
    }
    EXPECT_EQ(basis_enumerate(4).size(), 256u);
}

TEST(BasisEnumerate, CanonicalIndex) {
    EXPECT_EQ(PauliString::from_label("XZI").index(), 28u);
    EXPECT_EQ(basis_label(3, 28), "XZI");
    EXPECT_EQ(PauliString::from_index(2, 7).label(), "XZ");
}

TEST(BasisEnumerate, TwoBodyStringsOnFirstSpin) {
    int count = 0;
    for (const auto &ps : basis_enumerate(4)) {
        if (ps.weight() == 2 && ps[0] != 0) {
            ++count;
        }
    }
    EXPECT_EQ(count, 27);
}

TEST(BasisEnumerate, RejectsBadSpinCount) {
    EXPECT_THROW(basis_enumerate(0), SizeError);
    EXPECT_THROW(basis_enumerate(6), SizeError);
}

TEST(PauliMatrix, SingleSpin) {
    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    EXPECT_LT(max_abs_diff(pauli_matrix(PauliString::from_label("X")), x), 1e-15);
    CMatrix z(2, 2);
    z << 1, 0, 0, -1;
    EXPECT_LT(max_abs_diff(pauli_matrix(PauliString::from_label("Z")), z), 1e-15);
}

TEST(PauliMatrix, KroneckerOrder) {
    const CMatrix x = pauli_matrix(PauliString::from_label("X"));
    const CMatrix expected = Eigen::kroneckerProduct(x, CMatrix::Identity(4, 4));
    EXPECT_LT(max_abs_diff(pauli_matrix(PauliString::from_label("XII")), expected), 1e-15);
}

TEST(PauliMatrix, XYEqualsIZ) {
    const CMatrix x = pauli_matrix(PauliString::from_label("X"));
    const CMatrix y = pauli_matrix(PauliString::from_label("Y"));
    const CMatrix z = pauli_matrix(PauliString::from_label("Z"));
    EXPECT_LT(max_abs_diff(x * y, kI * z), 1e-15);
}

TEST(PauliMatrix, HermitianAndInvolutory) {
    for (const auto &ps : basis_enumerate(3)) {
        const CMatrix s = pauli_matrix(ps);
        EXPECT_LT(hermiticity_error(s), 1e-15);
        EXPECT_LT(max_abs_diff(s * s, CMatrix::Identity(8, 8)), 1e-15);
    }
}

TEST(PauliMatrix, RowValueMatchesDense) {
    for (const auto &ps : basis_enumerate(2)) {
        const CMatrix s = pauli_matrix(ps);
        for (std::uint32_t r = 0; r < 4; ++r) {
            EXPECT_EQ(s(r, r ^ ps.flip_mask()), ps.row_value(r));
        }
    }
}

TEST(Orthogonality, ExhaustiveUpToThreeSpins) {
    for (int n = 1; n <= 3; ++n) {
        const auto basis = basis_enumerate(n);
        std::vector<CMatrix> mats;
        for (const auto &ps : basis) {
            mats.push_back(pauli_matrix(ps));
        }
        const double d = static_cast<double>(hilbert_dim(n));
        for (std::size_t i = 0; i < mats.size(); ++i) {
            for (std::size_t j = 0; j < mats.size(); ++j) {
                const Complex tr = (mats[i] * mats[j]).trace();
                EXPECT_NEAR(std::abs(tr - Complex(i == j ? d : 0.0)), 0.0, 1e-12);
            }
        }
    }
}

TEST(Orthogonality, RandomPairsFourAndFiveSpins) {
    std::mt19937_64 rng(3);
    for (int n = 4; n <= 5; ++n) {
        std::uniform_int_distribution<std::size_t> pick(0, basis_size(n) - 1);
        const double d = static_cast<double>(hilbert_dim(n));
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t i = pick(rng);
            const std::size_t j = trial % 4 == 0 ? i : pick(rng);
            const Complex tr = (pauli_matrix(PauliString::from_index(n, i)) *
                                pauli_matrix(PauliString::from_index(n, j)))
                                   .trace();
            EXPECT_NEAR(std::abs(tr - Complex(i == j ? d : 0.0)), 0.0, 1e-12);
        }
    }
}

TEST(Decompose, SineSigmaXAtQuarterPeriod) {
    const CMatrix h = std::sin(kPi / 2) * pauli_matrix(PauliString::from_label("X"));
    const PauliCoefficients c = decompose(h);
    EXPECT_NEAR(c.values(1), 1.0, 1e-15);
    EXPECT_EQ(c.values(0), 0.0);
    EXPECT_EQ(c.values(2), 0.0);
    EXPECT_EQ(c.values(3), 0.0);
}

TEST(Decompose, IdentityTwoSpins) {
    const PauliCoefficients c = decompose(CMatrix::Identity(4, 4));
    EXPECT_EQ(c.values(0), 1.0);
    EXPECT_EQ(c.values.tail(15).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Decompose, RejectsNonHermitian) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    EXPECT_THROW(decompose(m), ContractError);
    EXPECT_THROW(decompose(CMatrix::Identity(3, 3)), SizeError);
}

TEST(Decompose, RoundTripRandomHermitian) {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 5; ++n) {
        for (int trial = 0; trial < 3; ++trial) {
            const CMatrix h = random_hermitian(n, rng);
            EXPECT_LT(max_abs_diff(reconstruct(decompose(h)), h), 1e-12);
        }
    }
}

TEST(Decompose, TracesArePurelyReal) {
    std::mt19937_64 rng(12);
    const CMatrix h = random_hermitian(3, rng);
    for (const auto &ps : basis_enumerate(3)) {
        EXPECT_LT(std::abs((pauli_matrix(ps) * h).trace().imag()), 1e-10);
    }
}

TEST(Reconstruct, IdentityAndXX) {
    PauliCoefficients c = PauliCoefficients::zero(2);
    c.values(0) = 1.0;
    EXPECT_LT(max_abs_diff(reconstruct(c), CMatrix::Identity(4, 4)), 1e-15);
    c = PauliCoefficients::zero(2);
    c.values(static_cast<Eigen::Index>(PauliString::from_label("XX").index())) = 1.0;
    const CMatrix m = reconstruct(c);
    for (int r = 0; r < 4; ++r) {
        for (int col = 0; col < 4; ++col) {
            EXPECT_EQ(m(r, col), Complex(r + col == 3 ? 1.0 : 0.0));
        }
    }
}

TEST(Reconstruct, CoefficientRoundTrip) {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g;
    for (int n = 1; n <= 4; ++n) {
        PauliCoefficients c = PauliCoefficients::zero(n);
        for (Eigen::Index i = 0; i < c.values.size(); ++i) {
            c.values(i) = g(rng);
        }
        EXPECT_LT((decompose(reconstruct(c)).values - c.values).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Encoding, OneSpinLayout) {
    CMatrix h(2, 2);
    h << Complex(0.5, 0), Complex(0.25, 0.75), Complex(0.25, -0.75), Complex(-1.5, 0);
    const RealEncoding v = encode(h);
    ASSERT_EQ(v.values.size(), 4);
    EXPECT_EQ(v.values(0), 0.5);
    EXPECT_EQ(v.values(1), 0.25);
    EXPECT_EQ(v.values(2), 0.75);
    EXPECT_EQ(v.values(3), -1.5);
    EXPECT_EQ(encoding_diagonal_slot(2, 1), 3u);
    EXPECT_EQ(encoding_offdiag_slot(2, 0, 1), 1u);
}

TEST(Encoding, ZeroAndRoundTrips) {
    EXPECT_EQ(encode(CMatrix::Zero(4, 4)).values.cwiseAbs().maxCoeff(), 0.0);
    std::mt19937_64 rng(14);
    std::normal_distribution<double> g;
    for (int n = 1; n <= 5; ++n) {
        RealEncoding v{n, RVector(static_cast<Eigen::Index>(basis_size(n)))};
        for (Eigen::Index i = 0; i < v.values.size(); ++i) {
            v.values(i) = g(rng);
        }
        const CMatrix m = decode(v);
        EXPECT_EQ(hermiticity_error(m), 0.0);
        EXPECT_EQ(encode(m).values, v.values);
        const CMatrix h = random_hermitian(n, rng);
        EXPECT_LT(max_abs_diff(decode(encode(h)), h), 1e-12);
    }
}

TEST(Encoding, WrongLength) {
    EXPECT_THROW(decode(RealEncoding{2, RVector::Zero(15)}), SizeError);
}

}  // namespace
}  // namespace henntomo
