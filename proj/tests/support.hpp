// Copyright 2026 The Qutrit Control Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "qutrit/linalg.hpp"

namespace qutrit::testing {

/// Haar-ish random unitary from the QR decomposition of a complex Gaussian
/// matrix, with the R diagonal phases folded back in.
inline Matrix random_unitary(int d, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix z(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) z(i, j) = cplx(g(rng), g(rng));
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < d; ++k) q.col(k) *= r(k, k) / std::abs(r(k, k));
    return q;
}

inline Matrix random_hermitian(int d, std::mt19937_64 &rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Matrix a(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) a(i, j) = cplx(g(rng), g(rng));
    }
    return 0.5 * (a + a.adjoint());
}

/// exp(-i H t) by a scaled-and-squared Taylor series, independent of the
/// eigendecomposition used by the library.
inline Matrix taylor_expm(const Matrix &h, double t) {
    Matrix a = cplx(0.0, -t) * h;
    int squarings = 0;
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    while (norm > 0.25) {
        norm *= 0.5;
        ++squarings;
    }
    a /= std::pow(2.0, squarings);
    Matrix result = Matrix::Identity(h.rows(), h.cols());
    Matrix term = result;
    for (int k = 1; k < 30; ++k) {
        term = term * a / static_cast<double>(k);
        result += term;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

/// |Tr(U^dag V)| / d, equal to 1 iff U and V agree up to global phase.
inline double phase_overlap(const Matrix &u, const Matrix &v) {
    return std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.rows());
}

/// Swap of levels 0 and 2.
inline Matrix parity_swap() {
    Matrix p = Matrix::Zero(3, 3);
    p(0, 2) = p(2, 0) = p(1, 1) = 1.0;
    return p;
}

}  // namespace qutrit::testing
