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

#include "qutrit/xgate.hpp"

#include <cmath>
#include <functional>

namespace qutrit {

namespace {

constexpr double kLambdaLo = 20.0;
constexpr double kLambdaHi = 60.0;

// gamma / sin(gamma) and gamma * cot(gamma), both finite at gamma = 0.
double gamma_over_sin(double g) {
    if (std::abs(g) < 1e-4) return 1.0 + g * g / 6.0;
    return g / std::sin(g);
}

double gamma_cot(double g) {
    if (std::abs(g) < 1e-4) return 1.0 - g * g / 3.0;
    return g / std::tan(g);
}

double check_s(double t, double duration) {
    if (!(duration > 0.0)) throw ValidationError("gate duration must be positive");
    if (t < 0.0 || t > duration) throw ValidationError("time outside [0, T]");
    return t / duration;
}

double simpson_step(const std::function<double(double)> &f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double diff = left + right - whole;
    if (std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
    if (depth <= 0) throw NumericalError("adaptive Simpson quadrature did not converge");
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)> &f, double a, double b, double tol) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 50);
}

}  // namespace

std::string to_string(XKind kind) {
    switch (kind) {
        case XKind::X: return "x";
        case XKind::X_inverse: return "x-inv";
        case XKind::X02: return "x02";
    }
    return "?";
}

XKind xkind_from_string(const std::string &name) {
    if (name == "x") return XKind::X;
    if (name == "x-inv") return XKind::X_inverse;
    if (name == "x02") return XKind::X02;
    throw ValidationError("unknown X-type gate '" + name + "'");
}

Matrix x_gate() {
    Matrix m = Matrix::Zero(3, 3);
    m(1, 0) = m(2, 1) = m(0, 2) = 1.0;
    return m;
}

Matrix x_inverse_gate() { return x_gate().transpose(); }

Matrix x01_gate() {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 1) = m(1, 0) = m(2, 2) = 1.0;
    return m;
}

Matrix x12_gate() {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = m(1, 2) = m(2, 1) = 1.0;
    return m;
}

Matrix x02_gate() {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 2) = m(2, 0) = m(1, 1) = 1.0;
    return m;
}

Matrix x_target(XKind kind) {
    switch (kind) {
        case XKind::X: return x_gate();
        case XKind::X_inverse: return x_inverse_gate();
        case XKind::X02: return x02_gate();
    }
    throw ValidationError("unknown X-type gate");
}

double theta_for_kind(XKind kind) { return kind == XKind::X02 ? -kPi : -1.5 * kPi; }

std::pair<double, double> gamma_beta(double t, double lambda, double duration) {
    double s = check_s(t, duration);
    double u = s * (1.0 - s);
    double gamma = lambda * u * u * u;
    double s2 = s * s, s3 = s2 * s, s6 = s3 * s3;
    // Horner form of 231 - 990 s + 1732.5 s^2 - 1540 s^3 + 693 s^4 - 126 s^5.
    double poly = 231.0 + s * (-990.0 + s * (1732.5 + s * (-1540.0 + s * (693.0 + s * -126.0))));
    double beta = kPi * s6 * poly;
    return {gamma, beta};
}

double gamma_dot(double t, double lambda, double duration) {
    double s = check_s(t, duration);
    double u = s * (1.0 - s);
    return 3.0 * lambda * u * u * (1.0 - 2.0 * s) / duration;
}

double beta_dot(double t, double duration) {
    double s = check_s(t, duration);
    double u = s * (1.0 - s);
    double u2 = u * u;
    return 1386.0 * kPi / duration * u2 * u2 * u;
}

double lr_phase(double lambda, double duration) {
    if (!(lambda > 0.0)) throw ValidationError("lr_phase: lambda must be positive");
    if (!(duration > 0.0)) throw ValidationError("lr_phase: duration must be positive");
    if (lambda / 64.0 >= kPi) {
        throw ValidationError("lr_phase: lambda too large, sin(gamma) crosses zero");
    }
    // beta'/sin(gamma) dt = (1386 pi / lambda) s^2 (1-s)^2 * gamma/sin(gamma) ds.
    auto integrand = [lambda](double s) {
        double u = s * (1.0 - s);
        return 1386.0 * kPi / lambda * u * u * gamma_over_sin(lambda * u * u * u);
    };
    return -adaptive_simpson(integrand, 0.0, 1.0, 1e-11);
}

double solve_lambda(double theta_target) {
    double lo = kLambdaLo, hi = kLambdaHi;
    double flo = lr_phase(lo) - theta_target;
    double fhi = lr_phase(hi) - theta_target;
    if (flo * fhi > 0.0) {
        throw ValidationError("solve_lambda: target LR phase outside the attainable range");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = lr_phase(mid) - theta_target;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

LRDesign make_lr_design(XKind kind, double duration) {
    if (!(duration > 0.0)) throw ValidationError("gate duration must be positive");
    LRDesign d;
    d.kind = kind;
    d.duration = duration;
    d.theta_target = theta_for_kind(kind);
    d.lambda = solve_lambda(d.theta_target);
    return d;
}

std::pair<double, double> invariant_rabi(double t, double lambda, double duration) {
    auto [gamma, beta] = gamma_beta(t, lambda, duration);
    double s = t / duration;
    double u = s * (1.0 - s);
    double gd = gamma_dot(t, lambda, duration);
    // beta' cot(gamma) = (beta'/gamma) (gamma cot gamma), and beta'/gamma is
    // the polynomial (1386 pi / (T lambda)) s^2 (1-s)^2.
    double bcot = 1386.0 * kPi / (duration * lambda) * u * u * gamma_cot(gamma);
    double cb = std::cos(beta), sb = std::sin(beta);
    return {2.0 * (gd * cb + bcot * sb), 2.0 * (-gd * sb + bcot * cb)};
}

PulseSchedule rabi_from_invariant(const LRDesign &design, double dt) {
    if (!(design.duration > 0.0) || !(design.lambda > 0.0)) {
        throw ValidationError("rabi_from_invariant: invalid design");
    }
    if (dt > design.duration / 200.0) {
        throw ValidationError("rabi_from_invariant: dt must be at most T/200");
    }
    PulseSchedule s = PulseSchedule::zeros(design.duration, dt);
    const size_t n = s.size();
    for (size_t k = 0; k < n; ++k) {
        double t = (k + 1 == n) ? design.duration : s.time(k);
        auto [o1, o2] = invariant_rabi(t, design.lambda, design.duration);
        s.omega1[k] = o1;
        s.omega2[k] = o2;
    }
    if (design.kind == XKind::X) s = time_reversed(s);
    return s;
}

UnitaryMatrix evolution_from_theta(double theta) {
    Matrix u = Matrix::Zero(3, 3);
    double c = std::cos(theta), sn = std::sin(theta);
    u(0, 1) = kI * sn;
    u(0, 2) = c;
    u(1, 1) = c;
    u(1, 2) = kI * sn;
    u(2, 0) = -1.0;
    return UnitaryMatrix(std::move(u));
}

Matrix diagonal_correction(const Matrix &u, const Matrix &target) {
    if (u.rows() != target.rows() || u.cols() != target.cols() || u.rows() != u.cols()) {
        throw ValidationError("diagonal_correction: dimension mismatch");
    }
    const Eigen::Index d = u.rows();
    Matrix out = Matrix::Zero(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        // Use the dominant target entry of the row; D_rr aligns u there.
        Eigen::Index c;
        target.row(r).cwiseAbs().maxCoeff(&c);
        cplx ratio = target(r, c) / u(r, c);
        if (!std::isfinite(std::abs(ratio)) || std::abs(u(r, c)) < 1e-12) {
            throw ValidationError("diagonal_correction: support of u does not match target");
        }
        out(r, r) = ratio / std::abs(ratio);
    }
    return out;
}

UnitaryMatrix residual_phase_correction(XKind kind) {
    Matrix design = evolution_from_theta(theta_for_kind(kind)).matrix();
    // The X schedule is the time reverse of the X^-1 schedule; for a real
    // Hamiltonian this transposes the propagator.
    if (kind == XKind::X) design = design.transpose().eval();
    Matrix d = diagonal_correction(design, x_target(kind));
    // Fix the global phase so the first entry is 1.
    return UnitaryMatrix(d * std::conj(d(0, 0)));
}

PulseSchedule pi_pulse_schedule(int transition, double duration, double dt) {
    if (transition != 1 && transition != 2) {
        throw ValidationError("pi_pulse_schedule: transition must be 1 or 2");
    }
    PulseSchedule s = PulseSchedule::zeros(duration, dt);
    // (2 pi / T) sin^2(pi t / T) integrates to pi over [0, T].
    for (size_t k = 0; k < s.size(); ++k) {
        double sn = std::sin(kPi * s.time(k) / duration);
        double om = 2.0 * kPi / duration * sn * sn;
        if (k + 1 == s.size()) om = 0.0;
        (transition == 1 ? s.omega1[k] : s.omega2[k]) = om;
    }
    return s;
}

}  // namespace qutrit
