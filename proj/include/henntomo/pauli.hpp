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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "henntomo/linalg.hpp"

namespace henntomo {

/// Supported spin counts are 1..kMaxSpins.
inline constexpr int kMaxSpins = 5;

/// Number of Pauli strings (and of real parameters of a Hermitian matrix) for n spins: 4^n.
std::size_t basis_size(int n);

/// Hilbert space dimension 2^n.
std::size_t hilbert_dim(int n);

/// Throws SizeError unless 1 <= n <= kMaxSpins.
void check_spin_count(int n);

/// A tensor product of single-spin operators, one slot per spin.
///
/// Slot values: 0 = identity, 1 = sigma_x, 2 = sigma_y, 3 = sigma_z. Spin 0 is the leftmost
/// factor of the Kronecker product and the most significant digit of the canonical index, so
/// the string "XZI" has index 1*16 + 3*4 + 0 = 28.
///
/// Matrices are written in the basis where each spin orders |1> before |0>; bit value 0 of a
/// row index therefore means the spin is in |1>, and sigma_z = diag(1, -1).
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(std::vector<std::uint8_t> slots);

    static PauliString from_index(int n, std::size_t index);
    /// Parses labels such as "XZI" (I/X/Y/Z, case-insensitive).
    static PauliString from_label(std::string_view label);

    int num_spins() const { return static_cast<int>(slots_.size()); }
    const std::vector<std::uint8_t> &slots() const { return slots_; }
    std::uint8_t operator[](int spin) const { return slots_[static_cast<std::size_t>(spin)]; }

    std::size_t index() const;
    int weight() const;
    std::string label() const;

    /// Bit mask over row indices flipped by the string (X and Y slots).
    std::uint32_t flip_mask() const;
    /// Matrix element <row| S |row ^ flip_mask()>. Every row has exactly one nonzero.
    Complex row_value(std::uint32_t row) const;

    bool operator==(const PauliString &other) const = default;

   private:
    std::vector<std::uint8_t> slots_;
};

/// Label of a canonical basis index, e.g. basis_label(3, 28) == "XZI".
std::string basis_label(int n, std::size_t index);

/// All 4^n strings in canonical (base-4, spin 0 most significant) order; index 0 is the identity.
std::vector<PauliString> basis_enumerate(int n);

/// Dense 2^n x 2^n matrix of the string.
CMatrix pauli_matrix(const PauliString &ps);

/// Real coefficients c_i of H = sum_i c_i S_i, indexed by canonical basis order.
struct PauliCoefficients {
    int n = 0;
    RVector values;

    static PauliCoefficients zero(int n);
};

/// Real parameterization of one Hermitian matrix: walking rows in order, the diagonal entry
/// followed by (Re, Im) of each strictly-upper entry of that row. For one spin,
/// [[a, b+ic], [b-ic, d]] encodes as [a, b, c, d].
struct RealEncoding {
    int n = 0;
    RVector values;
};

/// Spin count for a square matrix of dimension 2^n; throws SizeError otherwise.
int spin_count_of(const CMatrix &m);

/// c_i = Re tr(S_i H) / 2^n. Throws ContractError if H deviates from Hermitian by more than 1e-8.
PauliCoefficients decompose(const CMatrix &h);

/// sum_i c_i S_i.
CMatrix reconstruct(const PauliCoefficients &c);

RealEncoding encode(const CMatrix &h);
/// Builds the upper triangle from the encoding and mirrors it, so the result is exactly Hermitian.
CMatrix decode(const RealEncoding &v);

/// Position in a RealEncoding of diagonal entry (row, row) and of the Re part of entry (row, col),
/// col > row; the Im part follows it.
std::size_t encoding_diagonal_slot(std::size_t dim, std::size_t row);
std::size_t encoding_offdiag_slot(std::size_t dim, std::size_t row, std::size_t col);

}  // namespace henntomo
