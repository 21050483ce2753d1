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

#include <functional>

#include <Eigen/Dense>

namespace qutrit {

/// Residual callback: fills r (size m) for parameters x.
using ResidualFn = std::function<void(const Eigen::VectorXd &x, Eigen::VectorXd &r)>;
/// Jacobian callback: fills J (m x n), dr_i/dx_j.
using JacobianFn = std::function<void(const Eigen::VectorXd &x, Eigen::MatrixXd &j)>;

struct LsqResult {
    Eigen::VectorXd params;
    Eigen::MatrixXd covariance;  ///< sigma^2 (J^T J)^-1 with sigma^2 = SSR/(m-n)
    double rms = 0.0;            ///< sqrt(SSR / m)
    int evaluations = 0;
    bool converged = false;
};

/// Levenberg-Marquardt nonlinear least squares (Eigen's MINPACK port).
/// Without a Jacobian callback, central finite differences are used.
/// Throws NumericalError when the solver reports improper input or runs out
/// of evaluations, or when the result is not finite.
LsqResult levenberg_marquardt(const ResidualFn &residual, int m, const Eigen::VectorXd &x0,
                              const JacobianFn &jacobian = {}, double tol = 1e-14,
                              int max_evaluations = 4000);

}  // namespace qutrit
