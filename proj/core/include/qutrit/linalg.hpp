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

#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qutrit {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Frobenius tolerance on U^dagger U - I used by every module.
inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kHermiticityTol = 1e-12;

/// Base class of all errors thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad input: wrong dimension, violated precondition, malformed file.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A solver, quadrature or fit did not converge.
class NumericalError : public Error {
  public:
    using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
  public:
    using Error::Error;
};

/// d x d unitary, checked on construction.
class UnitaryMatrix {
  public:
    /// Throws ValidationError if `m` is not square, has dim < 2, or is not
    /// unitary within `tol` (Frobenius norm of U^dagger U - I).
    explicit UnitaryMatrix(Matrix m, double tol = kUnitarityTol);

    static UnitaryMatrix identity(int dim);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix &matrix() const { return m_; }
    cplx operator()(int r, int c) const { return m_(r, c); }

    UnitaryMatrix adjoint() const;
    UnitaryMatrix operator*(const UnitaryMatrix &rhs) const;

    /// Frobenius norm of U^dagger U - I.
    static double unitarity_defect(const Matrix &m);

  private:
    struct Unchecked {};
    UnitaryMatrix(Matrix m, Unchecked) : m_(std::move(m)) {}

    Matrix m_;
};

class ComplexHermitian {
  public:
    explicit ComplexHermitian(Matrix m, double tol = kHermiticityTol);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix &matrix() const { return m_; }

  private:
    Matrix m_;
};

/// exp(-i H t) by eigendecomposition of H.
UnitaryMatrix expm_hermitian(const ComplexHermitian &h, double t);

/// Same as above without the wrapper types; `h` must be Hermitian. Used on
/// the propagation hot path where the Hamiltonian is Hermitian by construction.
Matrix expm_hermitian_raw(const Matrix &h, double t);

/// (|Tr(U^dagger V)|^2 + d) / (d (d + 1)).
double average_gate_fidelity(const UnitaryMatrix &u, const UnitaryMatrix &v);
double average_gate_fidelity(const Matrix &u, const Matrix &v);

/// Average gate fidelity of a possibly non-unitary block `m` (e.g. the
/// computational block of a leaky propagator) against the unitary target:
/// (|Tr(V^dagger M)|^2 + Tr(M^dagger M)) / (d (d + 1)).
double leaky_gate_fidelity(const Matrix &target, const Matrix &m);

/// Multiplies by e^{-i phi} so that the first entry (row-major) with modulus
/// above `zero_tol` becomes real and positive.
UnitaryMatrix canonicalize_phase(const UnitaryMatrix &u, double zero_tol = 1e-8);
Matrix canonicalize_phase(const Matrix &u, double zero_tol = 1e-8);

/// diag(e^{i phases[0]}, e^{i phases[1]}, ...).
Matrix diagonal_phase(std::span<const double> phases);

/// Maximum absolute entry-wise difference.
double max_abs_diff(const Matrix &a, const Matrix &b);

std::string format_matrix(const Matrix &m, int precision = 4);

}  // namespace qutrit
