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

#include "qutrit/linalg.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace qutrit {

UnitaryMatrix::UnitaryMatrix(Matrix m, double tol) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw ValidationError("unitary matrix must be square");
    }
    if (m_.rows() < 2) {
        throw ValidationError("unitary matrix must have dim >= 2");
    }
    double defect = unitarity_defect(m_);
    if (!(defect <= tol)) {
        std::ostringstream msg;
        msg << "matrix is not unitary: ||U^dag U - I||_F = " << defect;
        throw ValidationError(msg.str());
    }
}

UnitaryMatrix UnitaryMatrix::identity(int dim) {
    return UnitaryMatrix(Matrix::Identity(dim, dim));
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
    return UnitaryMatrix(Matrix(m_.adjoint()), Unchecked{});
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix &rhs) const {
    if (dim() != rhs.dim()) {
        throw ValidationError("dimension mismatch in unitary product");
    }
    return UnitaryMatrix(Matrix(m_ * rhs.m_), Unchecked{});
}

double UnitaryMatrix::unitarity_defect(const Matrix &m) {
    return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm();
}

ComplexHermitian::ComplexHermitian(Matrix m, double tol) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1) {
        throw ValidationError("Hermitian matrix must be square and non-empty");
    }
    double defect = (m_ - m_.adjoint()).norm();
    if (!(defect <= tol)) {
        std::ostringstream msg;
        msg << "matrix is not Hermitian: ||H - H^dag||_F = " << defect;
        throw ValidationError(msg.str());
    }
}

Matrix expm_hermitian_raw(const Matrix &h, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const Eigen::VectorXd &w = es.eigenvalues();
    const Matrix &v = es.eigenvectors();
    Vector phases(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k) {
        phases(k) = std::exp(cplx(0.0, -w(k) * t));
    }
    return v * phases.asDiagonal() * v.adjoint();
}

UnitaryMatrix expm_hermitian(const ComplexHermitian &h, double t) {
    if (h.dim() < 2) {
        throw ValidationError("generator must have dim >= 2");
    }
    // Eigenvectors are orthonormal to ~1e-15, well inside the unitarity check.
    return UnitaryMatrix(expm_hermitian_raw(h.matrix(), t));
}

double average_gate_fidelity(const Matrix &u, const Matrix &v) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) {
        throw ValidationError("dimension mismatch in average_gate_fidelity");
    }
    const double d = static_cast<double>(u.rows());
    double overlap = std::norm((u.adjoint() * v).trace());
    double f = (overlap + d) / (d * (d + 1.0));
    return std::clamp(f, 0.0, 1.0);
}

double average_gate_fidelity(const UnitaryMatrix &u, const UnitaryMatrix &v) {
    return average_gate_fidelity(u.matrix(), v.matrix());
}

double leaky_gate_fidelity(const Matrix &target, const Matrix &m) {
    if (target.rows() != m.rows() || target.cols() != m.cols()) {
        throw ValidationError("dimension mismatch in leaky_gate_fidelity");
    }
    const double d = static_cast<double>(m.rows());
    double overlap = std::norm((target.adjoint() * m).trace());
    double norm = (m.adjoint() * m).trace().real();
    return std::clamp((overlap + norm) / (d * (d + 1.0)), 0.0, 1.0);
}

Matrix canonicalize_phase(const Matrix &u, double zero_tol) {
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
        for (Eigen::Index c = 0; c < u.cols(); ++c) {
            double mag = std::abs(u(r, c));
            if (mag > zero_tol) {
                cplx phase = u(r, c) / mag;
                return u * std::conj(phase);
            }
        }
    }
    return u;
}

UnitaryMatrix canonicalize_phase(const UnitaryMatrix &u, double zero_tol) {
    return UnitaryMatrix(canonicalize_phase(u.matrix(), zero_tol));
}

Matrix diagonal_phase(std::span<const double> phases) {
    Matrix d = Matrix::Zero(static_cast<Eigen::Index>(phases.size()),
                            static_cast<Eigen::Index>(phases.size()));
    for (size_t k = 0; k < phases.size(); ++k) {
        d(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) =
            std::exp(cplx(0.0, phases[k]));
    }
    return d;
}

double max_abs_diff(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError("dimension mismatch in max_abs_diff");
    }
    return (a - b).cwiseAbs().maxCoeff();
}

std::string format_matrix(const Matrix &m, int precision) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(precision);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out << "[";
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out << ", ";
            out << m(r, c).real() << (m(r, c).imag() < 0 ? "-" : "+")
                << std::abs(m(r, c).imag()) << "i";
        }
        out << "]\n";
    }
    return out.str();
}

}  // namespace qutrit
