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

#include "qutrit/least_squares.hpp"

#include <cmath>

#include <unsupported/Eigen/LevenbergMarquardt>

#include "qutrit/linalg.hpp"

namespace qutrit {

namespace {

struct Functor : Eigen::DenseFunctor<double> {
    Functor(const ResidualFn &r, const JacobianFn &j, int n, int m)
        : Eigen::DenseFunctor<double>(n, m), residual(r), jacobian(j) {}

    int operator()(const InputType &x, ValueType &fvec) const {
        residual(x, fvec);
        return 0;
    }

    int df(const InputType &x, JacobianType &fjac) const {
        if (jacobian) {
            jacobian(x, fjac);
            return 0;
        }
        ValueType fp(values()), fm(values());
        InputType xp = x;
        for (int j = 0; j < inputs(); ++j) {
            double h = 1e-6 * std::max(1.0, std::abs(x(j)));
            xp(j) = x(j) + h;
            residual(xp, fp);
            xp(j) = x(j) - h;
            residual(xp, fm);
            xp(j) = x(j);
            fjac.col(j) = (fp - fm) / (2.0 * h);
        }
        return 0;
    }

    const ResidualFn &residual;
    const JacobianFn &jacobian;
};

}  // namespace

LsqResult levenberg_marquardt(const ResidualFn &residual, int m, const Eigen::VectorXd &x0,
                              const JacobianFn &jacobian, double tol, int max_evaluations) {
    const int n = static_cast<int>(x0.size());
    if (m < n) throw ValidationError("least squares: fewer residuals than parameters");
    Functor f(residual, jacobian, n, m);
    Eigen::LevenbergMarquardt<Functor> lm(f);
    lm.setXtol(tol);
    lm.setFtol(tol);
    lm.setGtol(0.0);
    lm.setMaxfev(max_evaluations);
    Eigen::VectorXd x = x0;
    {
        Eigen::VectorXd r0(m);
        residual(x, r0);
        if (!r0.allFinite()) throw NumericalError("least squares: non-finite residual at start");
    }
    auto status = lm.minimize(x);
    if (status == Eigen::LevenbergMarquardtSpace::ImproperInputParameters) {
        throw NumericalError("least squares: improper input parameters");
    }
    if (!x.allFinite()) throw NumericalError("least squares: non-finite parameters");

    LsqResult out;
    out.params = x;
    out.evaluations = static_cast<int>(lm.nfev());
    out.converged = status != Eigen::LevenbergMarquardtSpace::TooManyFunctionEvaluation;
    Eigen::VectorXd r(m);
    residual(x, r);
    if (!r.allFinite()) throw NumericalError("least squares: non-finite residual");
    double ssr = r.squaredNorm();
    out.rms = std::sqrt(ssr / m);
    Eigen::MatrixXd jac(m, n);
    f.df(x, jac);
    Eigen::MatrixXd jtj = jac.transpose() * jac;
    double sigma2 = m > n ? ssr / (m - n) : 0.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
    if (lu.isInvertible()) {
        out.covariance = sigma2 * lu.inverse();
    } else {
        out.covariance = Eigen::MatrixXd::Constant(n, n, std::numeric_limits<double>::infinity());
    }
    return out;
}

}  // namespace qutrit
