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

#include "qutrit/device.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qutrit/least_squares.hpp"

namespace qutrit {

namespace {

void require_positive(double v, const char *name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError(std::string(name) + " must be positive and finite");
    }
}

// (e^{-a t} - e^{-b t}) / (b - a), continuous at a = b.
double exp_difference(double a, double b, double t) {
    double d = b - a;
    if (std::abs(d) * t < 1e-8) return t * std::exp(-a * t) * (1.0 - 0.5 * d * t);
    return (std::exp(-a * t) - std::exp(-b * t)) / d;
}

double log_slope(const std::vector<double> &t, const std::vector<double> &y) {
    // Least-squares slope of log(y) over the points where y is well above 0.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t k = 0; k < t.size(); ++k) {
        if (y[k] > 0.05) {
            double ly = std::log(y[k]);
            sx += t[k];
            sy += ly;
            sxx += t[k] * t[k];
            sxy += t[k] * ly;
            ++n;
        }
    }
    if (n < 3) return 0.0;
    double den = n * sxx - sx * sx;
    return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

}  // namespace

void DeviceParams::validate() const {
    require_positive(T1_01, "T1_01");
    require_positive(T1_12, "T1_12");
    require_positive(T1_02, "T1_02");
    require_positive(T2_01, "T2_01");
    require_positive(T2_12, "T2_12");
    require_positive(T2_02, "T2_02");
}

DeviceParams DeviceParams::reference() {
    DeviceParams p;
    p.f01 = 4.993;
    p.f12 = 4.800;
    p.f02 = 4.896;
    p.T1_01 = 60.7;
    p.T1_12 = 28.4;
    p.T1_02 = 523.1;
    p.T2_01 = 4.6;
    p.T2_12 = 4.4;
    p.T2_02 = 4.2;
    return p;
}

Populations rate_equation_evolve(const Populations &p0, const DeviceParams &params, double t) {
    require_positive(params.T1_01, "T1_01");
    require_positive(params.T1_12, "T1_12");
    require_positive(params.T1_02, "T1_02");
    double sum = p0[0] + p0[1] + p0[2];
    if (std::abs(sum - 1.0) > 1e-9 || *std::min_element(p0.begin(), p0.end()) < -1e-9) {
        throw ValidationError("initial populations are not on the probability simplex");
    }
    if (t < 0.0) throw ValidationError("evolution time must be nonnegative");
    const double k1 = 1.0 / params.T1_01;
    const double k12 = 1.0 / params.T1_12;
    const double k2 = k12 + 1.0 / params.T1_02;
    double p2 = p0[2] * std::exp(-k2 * t);
    double p1 = p0[1] * std::exp(-k1 * t) + p0[2] * k12 * exp_difference(k2, k1, t);
    return {1.0 - p1 - p2, p1, p2};
}

T1Fit fit_t1(const std::vector<T1Trace> &traces) {
    int m = 0;
    bool has1 = false, has2 = false;
    for (const auto &tr : traces) {
        if (tr.init != 1 && tr.init != 2) throw ValidationError("T1 trace init must be 1 or 2");
        if (tr.time.size() != tr.populations.size()) {
            throw ValidationError("T1 trace time and population lengths differ");
        }
        if (tr.time.size() < 10) throw ValidationError("T1 trace needs at least 10 points");
        has1 |= tr.init == 1;
        has2 |= tr.init == 2;
        m += static_cast<int>(3 * tr.time.size());
    }
    if (!has1 || !has2) throw ValidationError("T1 fit needs traces prepared in |1> and |2>");

    // Initial rates from log-slopes of the prepared-level decay.
    double k1 = 0.0, k2 = 0.0;
    for (const auto &tr : traces) {
        std::vector<double> y;
        for (const auto &p : tr.populations) y.push_back(p[static_cast<size_t>(tr.init)]);
        double spread = *std::max_element(y.begin(), y.end()) - *std::min_element(y.begin(), y.end());
        if (spread < 1e-6) throw NumericalError("T1 fit: prepared population does not decay");
        double k = -log_slope(tr.time, y);
        if (!(k > 0.0)) throw NumericalError("T1 fit: cannot estimate a decay rate");
        (tr.init == 1 ? k1 : k2) = k;
    }
    // Split k2 into cascade and direct channels; most decay is cascaded.
    Eigen::VectorXd x0(3);
    x0 << std::log(1.0 / k1), std::log(1.0 / (0.9 * k2)), std::log(1.0 / (0.1 * k2));

    auto residual = [&](const Eigen::VectorXd &x, Eigen::VectorXd &r) {
        DeviceParams p;
        p.T1_01 = std::exp(x(0));
        p.T1_12 = std::exp(x(1));
        p.T1_02 = std::exp(x(2));
        int i = 0;
        for (const auto &tr : traces) {
            Populations init{0.0, 0.0, 0.0};
            init[static_cast<size_t>(tr.init)] = 1.0;
            for (size_t k = 0; k < tr.time.size(); ++k) {
                Populations model = rate_equation_evolve(init, p, tr.time[k]);
                r(i++) = model[0] - tr.populations[k][0];
                r(i++) = model[1] - tr.populations[k][1];
                r(i++) = model[2] - tr.populations[k][2];
            }
        }
    };
    LsqResult res = levenberg_marquardt(residual, m, x0);
    if (!res.converged) throw NumericalError("T1 fit did not converge");
    T1Fit out;
    out.T1_01 = std::exp(res.params(0));
    out.T1_12 = std::exp(res.params(1));
    out.T1_02 = std::exp(res.params(2));
    out.rms = res.rms;
    for (double v : {out.T1_01, out.T1_12, out.T1_02}) {
        if (!std::isfinite(v) || v > 1e9) throw NumericalError("T1 fit: unidentifiable time");
    }
    return out;
}

double ramsey_model(double t, const RamseyParams &p) {
    double env = std::exp(-std::pow(std::max(t, 0.0) / p.T2, p.n));
    return p.amplitude * std::cos(p.detuning * t + p.phase) * env + p.baseline * std::exp(-t / p.T1);
}

RamseyFit fit_t2(const std::vector<double> &time, const std::vector<double> &signal, double T1) {
    const size_t n = time.size();
    if (n != signal.size()) throw ValidationError("Ramsey trace lengths differ");
    if (n < 20) throw ValidationError("Ramsey trace needs at least 20 points");
    require_positive(T1, "T1");
    const double span = time.back() - time.front();
    require_positive(span, "Ramsey time span");

    // Remove the mean and locate the fringe frequency by a DFT scan.
    double mean = 0.0;
    for (double v : signal) mean += v;
    mean /= static_cast<double>(n);
    const double w_max = kPi * static_cast<double>(n - 1) / span;  // Nyquist
    const int grid = 4000;
    double best_w = 0.0, best_pow = -1.0;
    cplx best_c{};
    for (int g = 1; g <= grid; ++g) {
        double w = w_max * g / grid;
        cplx acc{};
        for (size_t k = 0; k < n; ++k) {
            acc += (signal[k] - mean) * std::exp(cplx(0.0, -w * (time[k] - time.front())));
        }
        if (std::norm(acc) > best_pow) {
            best_pow = std::norm(acc);
            best_w = w;
            best_c = acc;
        }
    }
    if (best_w * span / kTwoPi < 3.0) {
        throw NumericalError("Ramsey fit: fewer than three fringe periods in the trace");
    }
    double a0 = 0.0;
    for (size_t k = 0; k < std::min<size_t>(n, 10); ++k) a0 = std::max(a0, std::abs(signal[k] - mean));

    // Envelope decay time from the RMS of the detrended trace in two halves.
    double e1 = 0.0, e2 = 0.0;
    for (size_t k = 0; k < n / 2; ++k) e1 += std::pow(signal[k] - mean, 2);
    for (size_t k = n / 2; k < n; ++k) e2 += std::pow(signal[k] - mean, 2);
    double ratio = std::sqrt(std::max(e2, 1e-300) / std::max(e1, 1e-300));
    double tau0 = ratio < 0.999 ? -0.5 * span / std::log(ratio) : span;

    Eigen::VectorXd x0(6);
    x0 << std::max(a0, 1e-3), best_w, std::arg(best_c), std::log(tau0), 0.0, mean;
    auto unpack = [T1](const Eigen::VectorXd &x) {
        RamseyParams p;
        p.amplitude = x(0);
        p.detuning = x(1);
        p.phase = x(2);
        p.T2 = std::exp(x(3));
        p.n = std::exp(x(4));
        p.baseline = x(5);
        p.T1 = T1;
        return p;
    };
    auto residual = [&](const Eigen::VectorXd &x, Eigen::VectorXd &r) {
        RamseyParams p = unpack(x);
        for (size_t k = 0; k < n; ++k) r(static_cast<Eigen::Index>(k)) = ramsey_model(time[k], p) - signal[k];
    };
    LsqResult res = levenberg_marquardt(residual, static_cast<int>(n), x0);
    if (!res.converged) throw NumericalError("Ramsey fit did not converge");
    RamseyFit out;
    out.params = unpack(res.params);
    if (out.params.amplitude < 0.0) {
        out.params.amplitude = -out.params.amplitude;
        out.params.phase += kPi;
    }
    out.params.phase = std::remainder(out.params.phase, kTwoPi);
    out.rms = res.rms;
    if (!std::isfinite(out.params.T2) || out.params.T2 > 1e6 * span) {
        throw NumericalError("Ramsey fit: dephasing time unidentifiable");
    }
    return out;
}

std::array<double, 3> voltages_from_populations(const Populations &p, const ReadoutCalib &calib) {
    std::array<double, 3> v{};
    for (int j = 0; j < 3; ++j) {
        for (int s = 0; s < 3; ++s) v[j] += p[s] * calib.V[s][j];
    }
    return v;
}

ReadoutResult populations_from_voltages(const std::array<double, 3> &v, const ReadoutCalib &calib) {
    Eigen::Matrix3d m;
    Eigen::Vector3d b(v[0], v[1], v[2]);
    for (int j = 0; j < 3; ++j) {
        for (int s = 0; s < 3; ++s) m(j, s) = calib.V[s][j];
    }
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(m);
    const auto &sv = svd.singularValues();
    ReadoutResult out;
    if (!(sv(0) > 0.0) || sv(2) <= 1e-14 * sv(0)) {
        throw ValidationError("readout calibration matrix is singular");
    }
    out.condition_number = sv(0) / sv(2);
    out.ill_conditioned = out.condition_number > 1e6;

    Eigen::Vector3d raw = m.fullPivLu().solve(b);
    bool inside = (raw.array() >= -1e-12).all() && (raw.array() <= 1.0 + 1e-12).all() &&
                  std::abs(raw.sum() - 1.0) <= 1e-6;
    if (inside) {
        out.populations = {raw(0), raw(1), raw(2)};
        return out;
    }

    // Constrained least squares on the simplex: try every support and keep
    // the feasible equality-constrained solution with the smallest residual.
    out.projected = true;
    double best = std::numeric_limits<double>::infinity();
    for (int mask = 1; mask < 8; ++mask) {
        std::vector<int> idx;
        for (int s = 0; s < 3; ++s) {
            if (mask & (1 << s)) idx.push_back(s);
        }
        const int k = static_cast<int>(idx.size());
        Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
        for (int a = 0; a < k; ++a) {
            for (int c = 0; c < k; ++c) kkt(a, c) = m.col(idx[a]).dot(m.col(idx[c]));
            kkt(a, k) = kkt(k, a) = 1.0;
            rhs(a) = m.col(idx[a]).dot(b);
        }
        rhs(k) = 1.0;
        Eigen::VectorXd sol = kkt.fullPivLu().solve(rhs);
        Eigen::Vector3d p = Eigen::Vector3d::Zero();
        for (int a = 0; a < k; ++a) p(idx[a]) = sol(a);
        if ((p.array() < -1e-12).any()) continue;
        double r = (m * p - b).squaredNorm();
        if (r < best) {
            best = r;
            p = p.cwiseMax(0.0);
            p /= p.sum();
            out.populations = {p(0), p(1), p(2)};
        }
    }
    return out;
}

}  // namespace qutrit
