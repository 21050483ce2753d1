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

#include "qutrit/propagator.hpp"

#include <cmath>
#include <sstream>

#include "qutrit/hgate.hpp"
#include "qutrit/parallel.hpp"
#include "qutrit/xgate.hpp"

namespace qutrit {

namespace {

// Prefix integrals of the linearly interpolated detuning at sample points.
std::vector<double> detuning_prefix(const PulseSchedule &s) {
    std::vector<double> prefix(s.size(), 0.0);
    for (size_t k = 1; k < s.size(); ++k) {
        prefix[k] = prefix[k - 1] + 0.5 * (s.detuning[k - 1] + s.detuning[k]) * s.dt;
    }
    return prefix;
}

double detuning_integral_at(const PulseSchedule &s, const std::vector<double> &prefix, double t) {
    const size_t n = s.size();
    double x = std::clamp(t / s.dt, 0.0, static_cast<double>(n - 1));
    size_t k = std::min(static_cast<size_t>(x), n - 2);
    double w = x - static_cast<double>(k);
    double end = s.detuning[k] + w * (s.detuning[k + 1] - s.detuning[k]);
    return prefix[k] + 0.5 * (s.detuning[k] + end) * w * s.dt;
}

void check_sim_dt(const PulseSchedule &s, const SimConfig &cfg) {
    if (!(cfg.dt > 0.0)) throw ValidationError("simulation dt must be positive");
    if (cfg.dt > s.dt * (1.0 + 1e-9)) {
        throw ValidationError("simulation dt is coarser than the schedule sampling");
    }
}

// Shrinks the step so every integration step lies inside one sample
// interval; the interpolated Hamiltonian is then smooth on each step and
// the integrator keeps its nominal order.
SimConfig aligned(const PulseSchedule &s, const SimConfig &cfg) {
    SimConfig out = cfg;
    double per_sample = std::ceil(s.dt / cfg.dt - 1e-9);
    out.dt = s.dt / std::max(1.0, per_sample);
    return out;
}

}  // namespace

Integrator integrator_from_string(const std::string &name) {
    if (name == "piecewise_expm") return Integrator::piecewise_expm;
    if (name == "magnus4") return Integrator::magnus4;
    if (name == "rk4") return Integrator::rk4;
    throw ValidationError("unknown integrator '" + name + "'");
}

void ErrorKnobs::validate() const {
    for (double v : {eta1, eta2, zeta1, zeta2}) {
        if (!std::isfinite(v) || std::abs(v) > 0.5) {
            throw ValidationError("error knobs must lie in [-0.5, 0.5]");
        }
    }
}

Matrix propagate(const HamiltonianFn &hamiltonian, int dim, double duration,
                 const SimConfig &cfg,
                 const std::function<void(double, const Matrix &)> &on_step) {
    if (!(cfg.dt > 0.0) || !(duration > 0.0)) {
        throw ValidationError("propagate: dt and duration must be positive");
    }
    const size_t steps =
        static_cast<size_t>(std::max(1.0, std::ceil(duration / cfg.dt - 1e-9)));
    const double h = duration / static_cast<double>(steps);
    Matrix u = Matrix::Identity(dim, dim);
    Matrix h1(dim, dim), h2(dim, dim), h3(dim, dim);
    const double gauss = std::sqrt(3.0) / 6.0;
    for (size_t k = 0; k < steps; ++k) {
        const double t0 = static_cast<double>(k) * h;
        switch (cfg.method) {
            case Integrator::piecewise_expm: {
                hamiltonian(t0 + 0.5 * h, h1);
                u = expm_hermitian_raw(h1, h) * u;
                break;
            }
            case Integrator::magnus4: {
                hamiltonian(t0 + (0.5 - gauss) * h, h1);
                hamiltonian(t0 + (0.5 + gauss) * h, h2);
                Matrix comm = h2 * h1 - h1 * h2;
                Matrix k4 = 0.5 * h * (h1 + h2) - kI * (std::sqrt(3.0) / 12.0 * h * h) * comm;
                u = expm_hermitian_raw(k4, 1.0) * u;
                break;
            }
            case Integrator::rk4: {
                hamiltonian(t0, h1);
                hamiltonian(t0 + 0.5 * h, h2);
                hamiltonian(t0 + h, h3);
                Matrix k1 = -kI * h1 * u;
                Matrix k2 = -kI * h2 * (u + 0.5 * h * k1);
                Matrix k3 = -kI * h2 * (u + 0.5 * h * k2);
                Matrix k4 = -kI * h3 * (u + h * k3);
                u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                break;
            }
        }
        if (on_step) on_step(t0 + h, u);
    }
    return u;
}

Matrix schedule_hamiltonian(const PulseSchedule &s, const ErrorKnobs &knobs, double t) {
    cplx o1, o2;
    double delta;
    s.sample(t, o1, o2, delta);
    const double d1 = kTwoPi * knobs.zeta1 / s.duration;
    const double d2 = kTwoPi * knobs.zeta2 / s.duration;
    Matrix h = Matrix::Zero(3, 3);
    h(1, 1) = delta;
    h(0, 1) = 0.5 * o1 * (1.0 + knobs.eta1) * std::exp(cplx(0.0, d1 * t));
    h(1, 2) = 0.5 * o2 * (1.0 + knobs.eta2) * std::exp(cplx(0.0, -d2 * t));
    h(1, 0) = std::conj(h(0, 1));
    h(2, 1) = std::conj(h(1, 2));
    return h;
}

UnitaryMatrix evolve(const PulseSchedule &s, const ErrorKnobs &knobs, const SimConfig &cfg) {
    s.validate(false);
    knobs.validate();
    check_sim_dt(s, cfg);
    if (cfg.frame != Frame::two_photon_rotating) {
        throw ValidationError("evolve requires the two-photon rotating frame");
    }
    auto ham = [&](double t, Matrix &h) { h = schedule_hamiltonian(s, knobs, t); };
    Matrix u = propagate(ham, 3, s.duration, aligned(s, cfg));
    // rk4 drifts off the unitary manifold at O(dt^4); accept it with a loose
    // check scaled to the method rather than the strict library tolerance.
    double tol = cfg.method == Integrator::rk4 ? 1e-4 : 1e-9;
    return UnitaryMatrix(std::move(u), tol);
}

std::string Trajectory::to_csv() const {
    std::ostringstream out;
    out.precision(10);
    out << "time_ns,P0,P1,P2\n";
    for (size_t k = 0; k < time.size(); ++k) {
        out << time[k] << ',' << populations[k][0] << ',' << populations[k][1] << ','
            << populations[k][2] << '\n';
    }
    return out.str();
}

Trajectory population_trajectory(const PulseSchedule &s, int initial_state, const SimConfig &cfg) {
    if (initial_state < 0 || initial_state > 2) {
        throw ValidationError("initial state must be 0, 1 or 2");
    }
    s.validate(false);
    check_sim_dt(s, cfg);
    Trajectory tr;
    tr.time.push_back(0.0);
    std::array<double, 3> p0{0.0, 0.0, 0.0};
    p0[static_cast<size_t>(initial_state)] = 1.0;
    tr.populations.push_back(p0);
    ErrorKnobs none;
    auto ham = [&](double t, Matrix &h) { h = schedule_hamiltonian(s, none, t); };
    propagate(ham, 3, s.duration, aligned(s, cfg), [&](double t, const Matrix &u) {
        tr.time.push_back(t);
        std::array<double, 3> p{};
        for (int r = 0; r < 3; ++r) p[static_cast<size_t>(r)] = std::norm(u(r, initial_state));
        tr.populations.push_back(p);
    });
    return tr;
}

RobustnessScan robustness_scan(RobustGate gate, const std::vector<double> &eta_grid,
                               const std::vector<double> &zeta_grid, const SimConfig &cfg,
                               double duration, double schedule_dt) {
    XKind kind = gate == RobustGate::X ? XKind::X : XKind::X02;
    PulseSchedule s = rabi_from_invariant(make_lr_design(kind, duration), schedule_dt);
    Matrix corr = residual_phase_correction(kind).matrix();
    Matrix target = x_target(kind);
    auto fidelity = [&](const ErrorKnobs &k) {
        return average_gate_fidelity(Matrix(corr * evolve(s, k, cfg).matrix()), target);
    };

    RobustnessScan out;
    out.eta_grid = eta_grid;
    out.zeta_grid = zeta_grid;
    out.nominal = fidelity(ErrorKnobs{});
    const size_t ne = eta_grid.size(), nz = zeta_grid.size();
    out.amplitude.assign(ne, std::vector<double>(ne, 0.0));
    out.detuning.assign(nz, std::vector<double>(nz, 0.0));
    const size_t total = ne * ne + nz * nz;
    parallel_for(total, [&](size_t idx) {
        if (idx < ne * ne) {
            size_t i = idx / ne, j = idx % ne;
            ErrorKnobs k;
            k.eta1 = eta_grid[i];
            k.eta2 = eta_grid[j];
            out.amplitude[i][j] = fidelity(k);
        } else {
            size_t r = idx - ne * ne;
            size_t i = r / nz, j = r % nz;
            ErrorKnobs k;
            k.zeta1 = zeta_grid[i];
            k.zeta2 = zeta_grid[j];
            out.detuning[i][j] = fidelity(k);
        }
    });
    return out;
}

void TransmonModel::validate() const {
    if (levels < 4) throw ValidationError("transmon model needs at least 4 levels");
    if (!std::isfinite(omega01) || !std::isfinite(anharmonicity)) {
        throw ValidationError("transmon model parameters must be finite");
    }
}

double TransmonModel::level_energy(int n) const {
    return n * omega01 + 0.5 * n * (n - 1) * anharmonicity;
}

double TransmonModel::coupling(int n) { return std::sqrt(static_cast<double>(n + 1)); }

PulseSchedule apply_drag(const PulseSchedule &s, const DragParams &drag, double anharmonicity) {
    if ((drag.lambda1 != 0.0 || drag.lambda2 != 0.0) && anharmonicity == 0.0) {
        throw ValidationError("DRAG correction requires a nonzero anharmonicity");
    }
    PulseSchedule out = s;
    auto add = [&](std::vector<cplx> &env, const std::vector<cplx> &src, double lambda) {
        if (lambda == 0.0) return;
        const size_t n = src.size();
        for (size_t k = 0; k < n; ++k) {
            cplx d;
            if (k == 0) {
                d = (-3.0 * src[0] + 4.0 * src[1] - src[2]) / (2.0 * s.dt);
            } else if (k + 1 == n) {
                d = (3.0 * src[n - 1] - 4.0 * src[n - 2] + src[n - 3]) / (2.0 * s.dt);
            } else {
                d = (src[k + 1] - src[k - 1]) / (2.0 * s.dt);
            }
            env[k] = src[k] + kI * (lambda / anharmonicity) * d;
        }
    };
    add(out.omega1, s.omega1, drag.lambda1);
    add(out.omega2, s.omega2, drag.lambda2);
    return out;
}

Matrix transmon_hamiltonian(const PulseSchedule &s, const TransmonModel &model, double t,
                            double detuning_integral) {
    const int L = model.levels;
    const double alpha = model.anharmonicity;
    cplx o1, o2;
    double delta;
    s.sample(t, o1, o2, delta);
    const double chi = alpha * t + 2.0 * detuning_integral;
    const cplx e_plus = std::exp(cplx(0.0, chi));
    const cplx e_minus = std::conj(e_plus);
    Matrix h = Matrix::Zero(L, L);
    for (int n = 0; n < L; ++n) {
        double r = 0.0;
        if (n == 1) {
            r = delta;
        } else if (n >= 3) {
            r = 0.5 * (n - 1) * (n - 2) * alpha - (n - 2) * delta;
        }
        h(n, n) = r;
    }
    const cplx tone2 = 0.5 * o2 / std::sqrt(2.0);
    for (int n = 0; n + 1 < L; ++n) {
        cplx c;
        if (n == 0) {
            c = 0.5 * o1 + tone2 * e_plus;
        } else {
            c = TransmonModel::coupling(n) * (0.5 * o1 * e_minus + tone2);
        }
        h(n, n + 1) = c;
        h(n + 1, n) = std::conj(c);
    }
    return h;
}

TransmonResult transmon_evolve(const PulseSchedule &s, const TransmonModel &model,
                               const std::optional<DragParams> &drag, const SimConfig &cfg) {
    model.validate();
    s.validate(false);
    check_sim_dt(s, cfg);
    if (cfg.frame != Frame::multilevel_transmon) {
        throw ValidationError("transmon_evolve requires the multilevel transmon frame");
    }
    PulseSchedule driven = drag ? apply_drag(s, *drag, model.anharmonicity) : s;
    const std::vector<double> prefix = detuning_prefix(driven);
    auto ham = [&](double t, Matrix &h) {
        h = transmon_hamiltonian(driven, model, t, detuning_integral_at(driven, prefix, t));
    };
    TransmonResult res;
    res.propagator = propagate(ham, model.levels, s.duration, aligned(s, cfg));
    res.block = res.propagator.topLeftCorner(3, 3);
    res.leakage = 1.0 - (res.block.adjoint() * res.block).trace().real() / 3.0;
    return res;
}

CoherentError coherent_error(const Matrix &block, const Matrix &reference) {
    if (block.rows() != reference.rows() || block.cols() != reference.cols()) {
        throw ValidationError("coherent_error: dimension mismatch");
    }
    const double d = static_cast<double>(block.rows());
    Matrix c = block * reference.adjoint();
    double overlap = 0.0;
    for (Eigen::Index i = 0; i < c.rows(); ++i) overlap += std::abs(c(i, i));
    double norm = (block.adjoint() * block).trace().real();
    CoherentError e;
    e.fidelity = std::clamp((overlap * overlap + norm) / (d * (d + 1.0)), 0.0, 1.0);
    e.error = 1.0 - e.fidelity;
    e.leakage = std::max(0.0, 1.0 - norm / d);
    return e;
}

PulseSchedule design_schedule(DesignGate gate, double duration, double dt) {
    if (gate == DesignGate::H) return chirped_h_schedule(duration, dt);
    return rabi_from_invariant(make_lr_design(XKind::X, duration), dt);
}

std::vector<CoherentError> coherent_error_scan(ScanAxis axis, const std::vector<double> &values,
                                               DesignGate gate, const CoherentScanOptions &opt) {
    for (size_t k = 1; k < values.size(); ++k) {
        if (!(values[k] > values[k - 1])) {
            throw ValidationError("coherent_error_scan: values must be increasing");
        }
    }
    std::vector<CoherentError> out(values.size());
    parallel_for(values.size(), [&](size_t k) {
        double duration = opt.fixed_duration;
        double alpha_mhz = opt.fixed_anharmonicity_mhz;
        if (axis == ScanAxis::anharmonicity) {
            alpha_mhz = -std::abs(values[k]);
        } else {
            duration = values[k];
        }
        PulseSchedule s = design_schedule(gate, duration, opt.schedule_dt);
        SimConfig ideal_cfg = opt.sim;
        ideal_cfg.frame = Frame::two_photon_rotating;
        Matrix reference = evolve(s, {}, ideal_cfg).matrix();
        TransmonModel model;
        model.levels = opt.levels;
        model.anharmonicity = kTwoPi * alpha_mhz * 1e-3;
        TransmonResult r = transmon_evolve(s, model, std::nullopt, opt.sim);
        out[k] = coherent_error(r.block, reference);
    });
    return out;
}

}  // namespace qutrit
