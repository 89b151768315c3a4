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

#include "henntomo/linalg.hpp"

namespace henntomo {

double hermiticity_error(const CMatrix &m) {
    if (m.rows() != m.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_error(const CMatrix &m) {
    const CMatrix gram = m.adjoint() * m;
    return (gram - CMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

CMatrix unitary_step(const CMatrix &h, double dt) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
    const RVector &w = eig.eigenvalues();
    CVector phases(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k) {
        phases(k) = std::exp(-kI * w(k) * dt);
    }
    const CMatrix &v = eig.eigenvectors();
    return v * phases.asDiagonal() * v.adjoint();
}

double max_abs_diff(const CMatrix &a, const CMatrix &b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace henntomo
