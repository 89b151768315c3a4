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

#include <complex>

#include <Eigen/Dense>

namespace henntomo {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Largest elementwise |m - m^dagger|.
double hermiticity_error(const CMatrix &m);

/// Largest elementwise |m^dagger m - I|.
double unitarity_error(const CMatrix &m);

/// exp(-i * h * dt) for Hermitian h, via the spectral decomposition so the result is unitary to
/// rounding.
CMatrix unitary_step(const CMatrix &h, double dt);

/// Element-wise max |a - b|.
double max_abs_diff(const CMatrix &a, const CMatrix &b);

}  // namespace henntomo
