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

#include "qutrit/hgate.hpp"

#include <array>
#include <cmath>

namespace qutrit {

namespace {

// Half phase as a function of the area on the real branch of the first
// condition. Requires sin^2(A/2) >= 2/3.
double delta_of_area(double A) {
    double s = std::sin(0.5 * A);
    double r = 1.0 - 2.0 / (3.0 * s * s);
    return 0.5 * A * std::sqrt(std::max(r, 0.0));
}

double reduced_condition(double A) {
    double d = delta_of_area(A);
    return std::cos(0.5 * A) * std::cos(d) + (2.0 * d / A) * std::sin(0.5 * A) * std::sin(d);
}

}  // namespace

Matrix hadamard3() {
    const cplx w = std::exp(cplx(0.0, kTwoPi / 3.0));
    Matrix h(3, 3);
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            h(j, k) = std::pow(w, (j * k) % 3) / std::sqrt(3.0);
        }
    }
    return h;
}

Matrix lambda_hamiltonian(double omega1, double omega2, double delta) {
    Matrix h = Matrix::Zero(3, 3);
    h(1, 1) = delta;
    h(0, 1) = h(1, 0) = 0.5 * omega1;
    h(1, 2) = h(2, 1) = 0.5 * omega2;
    return h;
}

UnitaryMatrix propagator_constant(double omega1_T, double omega2_T, double delta_T) {
    if (!std::isfinite(omega1_T) || !std::isfinite(omega2_T) || !std::isfinite(delta_T)) {
        throw ValidationError("propagator_constant: non-finite input");
    }
    const double o0 = std::hypot(omega1_T, omega2_T);
    const double a = std::hypot(o0, delta_T);
    if (a == 0.0) return UnitaryMatrix::identity(3);

    // With o0 = 0 the mixing angle is undefined but every term it multiplies
    // vanishes except the two diagonal blocks; atan2(0, 0) = 0 is a valid pick.
    const double theta = std::atan2(omega1_T, omega2_T);
    const double half = 0.5 * delta_T;
    const double c = std::cos(0.5 * a), s = std::sin(0.5 * a);
    const double ratio = delta_T / a;
    const double drive = o0 / a;
    const cplx ph = std::exp(cplx(0.0, -half));
    const cplx plus = ph * cplx(c, ratio * s);
    const double st = std::sin(theta), ct = std::cos(theta);

    Matrix u(3, 3);
    u(0, 0) = ct * ct + plus * st * st;
    u(1, 1) = ph * cplx(c, -ratio * s);
    u(2, 2) = st * st + plus * ct * ct;
    u(0, 1) = u(1, 0) = -kI * ph * drive * st * s;
    u(1, 2) = u(2, 1) = -kI * ph * drive * ct * s;
    u(0, 2) = u(2, 0) = (plus - 1.0) * st * ct;
    return UnitaryMatrix(std::move(u));
}

std::pair<double, double> h_condition_residuals(double A, double delta) {
    double s = std::sin(0.5 * A);
    double first = delta * delta - 0.25 * A * A * (1.0 - 2.0 / (3.0 * s * s));
    double second =
        std::cos(0.5 * A) * std::cos(delta) + (2.0 * delta / A) * s * std::sin(delta);
    return {first, second};
}

HGateSolution solve_h_conditions(int sign) {
    if (sign != 1 && sign != -1) {
        throw ValidationError("solve_h_conditions: sign must be +1 or -1");
    }
    // The first condition is real for sin^2(A/2) >= 2/3, i.e. A in
    // [2 asin(sqrt(2/3)), 2 (pi - asin(sqrt(2/3)))]. Below pi the reduced
    // function stays positive, so the smallest root lies in [pi, upper].
    double lo = kPi;
    double hi = 2.0 * (kPi - std::asin(std::sqrt(2.0 / 3.0)));
    double flo = reduced_condition(lo);
    double fhi = reduced_condition(hi);
    if (!(flo > 0.0 && fhi < 0.0)) {
        throw NumericalError("solve_h_conditions: root is not bracketed");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = reduced_condition(mid);
        if (fm > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    HGateSolution sol;
    sol.sign = sign;
    sol.A = 0.5 * (lo + hi);
    double d = delta_of_area(sol.A);
    sol.delta = sign * d;
    sol.delta_T = 2.0 * sol.delta;
    sol.theta = kPi / 4.0;
    double o0 = std::sqrt(sol.A * sol.A - sol.delta_T * sol.delta_T);
    sol.omega1_T = sol.omega2_T = o0 / std::sqrt(2.0);
    auto [r1, r2] = h_condition_residuals(sol.A, d);
    if (std::abs(r1) > 1e-8 || std::abs(r2) > 1e-8) {
        throw NumericalError("solve_h_conditions: residuals above tolerance");
    }
    return sol;
}

std::pair<Matrix, Matrix> h_phase_gates(const HGateSolution &sol) {
    const double d = sol.delta;
    if (sol.sign >= 0) {
        std::array<double, 3> left{0.0, 2.0 * kPi / 3.0 + d, -2.0 * kPi / 3.0};
        std::array<double, 3> right{-kPi / 6.0, kPi / 2.0 + d, -5.0 * kPi / 6.0};
        return {diagonal_phase(left), diagonal_phase(right)};
    }
    std::array<double, 3> left{0.0, kPi / 3.0 + d, 2.0 * kPi / 3.0};
    std::array<double, 3> right{kPi / 6.0, kPi / 2.0 + d, 5.0 * kPi / 6.0};
    return {diagonal_phase(left), diagonal_phase(right)};
}

UnitaryMatrix h_phase_sandwich(const UnitaryMatrix &u, const HGateSolution &sol) {
    if (u.dim() != 3) {
        throw ValidationError("h_phase_sandwich: expected a 3x3 propagator");
    }
    auto [left, right] = h_phase_gates(sol);
    return UnitaryMatrix(left * u.matrix() * right);
}

double flat_top_envelope(double t, double duration, double edge, double sigma) {
    if (t <= 0.0 || t >= duration) return 0.0;
    const double floor = std::exp(-edge * edge / (2.0 * sigma * sigma));
    auto rise = [&](double x) {
        double g = std::exp(-(x - edge) * (x - edge) / (2.0 * sigma * sigma));
        return (g - floor) / (1.0 - floor);
    };
    if (t < edge) return rise(t);
    if (t > duration - edge) return rise(duration - t);
    return 1.0;
}

PulseSchedule chirped_h_schedule(double duration, double dt, const ChirpOptions &opt) {
    if (!(opt.edge > 0.0) || !(opt.sigma_fraction > 0.0)) {
        throw ValidationError("chirped_h_schedule: edge and sigma must be positive");
    }
    if (!(duration > 2.0 * opt.edge)) {
        throw ValidationError("chirped_h_schedule: duration must exceed twice the edge time");
    }
    HGateSolution sol = solve_h_conditions(opt.sign);
    PulseSchedule s = PulseSchedule::zeros(duration, dt);
    const double sigma = opt.sigma_fraction * opt.edge;
    std::vector<double> env(s.size());
    for (size_t k = 0; k < s.size(); ++k) {
        env[k] = flat_top_envelope(s.time(k), duration, opt.edge, sigma);
    }
    const double area = trapezoid(env, s.dt);
    const double scale = sol.omega1_T / area;
    const double ratio = sol.delta_T / sol.omega1_T;
    for (size_t k = 0; k < s.size(); ++k) {
        double om = scale * env[k];
        s.omega1[k] = om;
        s.omega2[k] = om;
        s.detuning[k] = ratio * om;
    }
    return s;
}

}  // namespace qutrit
