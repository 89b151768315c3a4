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

#include "henntomo/pauli.hpp"

#include <cctype>

#include "henntomo/error.hpp"

namespace henntomo {

namespace {

constexpr char kSlotChars[] = {'I', 'X', 'Y', 'Z'};

// Element <bit| sigma |bit ^ flip> of a single-spin operator.
Complex single_spin_value(std::uint8_t slot, unsigned bit) {
    switch (slot) {
        case 2:
            return bit == 0 ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
        case 3:
            return bit == 0 ? Complex(1.0) : Complex(-1.0);
        default:
            return Complex(1.0);
    }
}

}  // namespace

std::size_t basis_size(int n) { return std::size_t{1} << (2 * n); }

std::size_t hilbert_dim(int n) { return std::size_t{1} << n; }

void check_spin_count(int n) {
    if (n < 1 || n > kMaxSpins) {
        throw SizeError("spin count " + std::to_string(n) + " outside [1, " +
                        std::to_string(kMaxSpins) + "]");
    }
}

PauliString::PauliString(std::vector<std::uint8_t> slots) : slots_(std::move(slots)) {
    check_spin_count(num_spins());
    for (auto s : slots_) {
        if (s > 3) {
            throw ContractError("Pauli slot value " + std::to_string(s) + " outside {0,1,2,3}");
        }
    }
}

PauliString PauliString::from_index(int n, std::size_t index) {
    check_spin_count(n);
    if (index >= basis_size(n)) {
        throw SizeError("basis index " + std::to_string(index) + " out of range for n=" +
                        std::to_string(n));
    }
    std::vector<std::uint8_t> slots(static_cast<std::size_t>(n));
    for (int k = n - 1; k >= 0; --k) {
        slots[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(index & 3U);
        index >>= 2;
    }
    return PauliString(std::move(slots));
}

PauliString PauliString::from_label(std::string_view label) {
    std::vector<std::uint8_t> slots;
    slots.reserve(label.size());
    for (char ch : label) {
        switch (std::toupper(static_cast<unsigned char>(ch))) {
            case 'I':
                slots.push_back(0);
                break;
            case 'X':
                slots.push_back(1);
                break;
            case 'Y':
                slots.push_back(2);
                break;
            case 'Z':
                slots.push_back(3);
                break;
            default:
                throw InputError("bad Pauli label '" + std::string(label) + "'");
        }
    }
    return PauliString(std::move(slots));
}

std::size_t PauliString::index() const {
    std::size_t idx = 0;
    for (auto s : slots_) {
        idx = idx * 4 + s;
    }
    return idx;
}

int PauliString::weight() const {
    int w = 0;
    for (auto s : slots_) {
        w += s != 0;
    }
    return w;
}

std::string PauliString::label() const {
    std::string out;
    out.reserve(slots_.size());
    for (auto s : slots_) {
        out.push_back(kSlotChars[s]);
    }
    return out;
}

std::uint32_t PauliString::flip_mask() const {
    const int n = num_spins();
    std::uint32_t mask = 0;
    for (int k = 0; k < n; ++k) {
        const auto s = slots_[static_cast<std::size_t>(k)];
        if (s == 1 || s == 2) {
            mask |= 1U << (n - 1 - k);
        }
    }
    return mask;
}

Complex PauliString::row_value(std::uint32_t row) const {
    const int n = num_spins();
    Complex v(1.0);
    for (int k = 0; k < n; ++k) {
        const auto s = slots_[static_cast<std::size_t>(k)];
        if (s >= 2) {
            v *= single_spin_value(s, (row >> (n - 1 - k)) & 1U);
        }
    }
    return v;
}

std::string basis_label(int n, std::size_t index) { return PauliString::from_index(n, index).label(); }

std::vector<PauliString> basis_enumerate(int n) {
    check_spin_count(n);
    std::vector<PauliString> out;
    out.reserve(basis_size(n));
    for (std::size_t i = 0; i < basis_size(n); ++i) {
        out.push_back(PauliString::from_index(n, i));
    }
    return out;
}

CMatrix pauli_matrix(const PauliString &ps) {
    const auto dim = static_cast<Eigen::Index>(hilbert_dim(ps.num_spins()));
    const std::uint32_t flip = ps.flip_mask();
    CMatrix m = CMatrix::Zero(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const auto row = static_cast<std::uint32_t>(r);
        m(r, static_cast<Eigen::Index>(row ^ flip)) = ps.row_value(row);
    }
    return m;
}

PauliCoefficients PauliCoefficients::zero(int n) {
    check_spin_count(n);
    return {n, RVector::Zero(static_cast<Eigen::Index>(basis_size(n)))};
}

int spin_count_of(const CMatrix &m) {
    if (m.rows() != m.cols()) {
        throw SizeError("matrix is not square");
    }
    for (int n = 1; n <= kMaxSpins; ++n) {
        if (static_cast<std::size_t>(m.rows()) == hilbert_dim(n)) {
            return n;
        }
    }
    throw SizeError("matrix dimension " + std::to_string(m.rows()) +
                    " is not 2^n for a supported spin count");
}

PauliCoefficients decompose(const CMatrix &h) {
    const int n = spin_count_of(h);
    const double asym = hermiticity_error(h);
    if (asym > 1e-8) {
        throw ContractError("decompose: matrix is not Hermitian (deviation " + std::to_string(asym) +
                            ")");
    }
    const CMatrix herm = 0.5 * (h + h.adjoint());
    const auto dim = static_cast<std::uint32_t>(hilbert_dim(n));
    PauliCoefficients c = PauliCoefficients::zero(n);
    for (std::size_t i = 0; i < basis_size(n); ++i) {
        const PauliString ps = PauliString::from_index(n, i);
        const std::uint32_t flip = ps.flip_mask();
        Complex tr(0.0);
        for (std::uint32_t r = 0; r < dim; ++r) {
            tr += ps.row_value(r) * herm(static_cast<Eigen::Index>(r ^ flip), static_cast<Eigen::Index>(r));
        }
        c.values(static_cast<Eigen::Index>(i)) = tr.real() / static_cast<double>(dim);
    }
    return c;
}

CMatrix reconstruct(const PauliCoefficients &c) {
    check_spin_count(c.n);
    if (static_cast<std::size_t>(c.values.size()) != basis_size(c.n)) {
        throw SizeError("coefficient vector length does not match 4^n");
    }
    const auto dim = static_cast<std::uint32_t>(hilbert_dim(c.n));
    CMatrix m = CMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < basis_size(c.n); ++i) {
        const double v = c.values(static_cast<Eigen::Index>(i));
        if (v == 0.0) {
            continue;
        }
        const PauliString ps = PauliString::from_index(c.n, i);
        const std::uint32_t flip = ps.flip_mask();
        for (std::uint32_t r = 0; r < dim; ++r) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r ^ flip)) += v * ps.row_value(r);
        }
    }
    return m;
}

std::size_t encoding_diagonal_slot(std::size_t dim, std::size_t row) {
    // Each earlier row r contributes 1 + 2 * (dim - 1 - r) entries.
    return row + row * (2 * dim - 1 - row);
}

std::size_t encoding_offdiag_slot(std::size_t dim, std::size_t row, std::size_t col) {
    return encoding_diagonal_slot(dim, row) + 1 + 2 * (col - row - 1);
}

RealEncoding encode(const CMatrix &h) {
    const int n = spin_count_of(h);
    const auto dim = static_cast<Eigen::Index>(hilbert_dim(n));
    RealEncoding v{n, RVector(static_cast<Eigen::Index>(basis_size(n)))};
    Eigen::Index k = 0;
    for (Eigen::Index r = 0; r < dim; ++r) {
        v.values(k++) = h(r, r).real();
        for (Eigen::Index c = r + 1; c < dim; ++c) {
            v.values(k++) = h(r, c).real();
            v.values(k++) = h(r, c).imag();
        }
    }
    return v;
}

CMatrix decode(const RealEncoding &v) {
    check_spin_count(v.n);
    if (static_cast<std::size_t>(v.values.size()) != basis_size(v.n)) {
        throw SizeError("encoding length " + std::to_string(v.values.size()) + " != 4^n = " +
                        std::to_string(basis_size(v.n)));
    }
    const auto dim = static_cast<Eigen::Index>(hilbert_dim(v.n));
    CMatrix h(dim, dim);
    Eigen::Index k = 0;
    for (Eigen::Index r = 0; r < dim; ++r) {
        h(r, r) = Complex(v.values(k++), 0.0);
        for (Eigen::Index c = r + 1; c < dim; ++c) {
            const Complex z(v.values(k), v.values(k + 1));
            k += 2;
            h(r, c) = z;
            h(c, r) = std::conj(z);
        }
    }
    return h;
}

}  // namespace henntomo
