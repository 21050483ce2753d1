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

#include "qutrit/benchmarking.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "json.hpp"

#include "qutrit/hgate.hpp"
#include "qutrit/least_squares.hpp"
#include "qutrit/parallel.hpp"
#include "qutrit/xgate.hpp"

namespace qutrit {

namespace {

constexpr size_t kClifford = 216;

std::vector<size_t> draw_cliffords(int m, uint64_t seed, uint64_t sample) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(m), static_cast<uint32_t>(sample)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<size_t> pick(0, kClifford - 1);
    std::vector<size_t> out(static_cast<size_t>(m));
    for (auto &c : out) c = pick(rng);
    return out;
}

std::vector<size_t> close_sequence(const std::vector<size_t> &random,
                                   std::optional<size_t> interleaved) {
    const auto &g = CliffordGroup::instance();
    std::vector<size_t> seq;
    size_t acc = g.identity_index();
    for (size_t c : random) {
        seq.push_back(c);
        acc = g.then(acc, c);
        if (interleaved) {
            seq.push_back(*interleaved);
            acc = g.then(acc, *interleaved);
        }
    }
    seq.push_back(g.inverse(acc));
    return seq;
}

std::vector<double> step_parameters(const RBConfig &cfg, size_t length) {
    const auto *dep = std::get_if<DepolarizingNoise>(&cfg.noise);
    if (!dep) return {};
    std::vector<double> p(length, dep->p);
    if (cfg.interleaved) {
        // Layout c1 g c2 g ... cm g c_inv: odd positions hold the gate.
        for (size_t k = 1; k + 1 < length; k += 2) p[k] = cfg.interleaved_p;
    }
    return p;
}

RBResult run_sequences(const RBConfig &cfg, const std::vector<Matrix> &ops) {
    const size_t nl = cfg.lengths.size();
    const size_t ns = static_cast<size_t>(cfg.n_sequences);
    std::vector<double> survival(nl * ns, 0.0);
    parallel_for(nl * ns, [&](size_t idx) {
        const size_t li = idx / ns, si = idx % ns;
        const int m = cfg.lengths[li];
        auto seq = close_sequence(draw_cliffords(m, cfg.seed, si), cfg.interleaved);
        double p0 = sequence_survival(seq, ops, step_parameters(cfg, seq.size()));
        const int n_shots = cfg.effective_shots();
        if (n_shots > 0) {
            std::seed_seq shot_seed{static_cast<uint32_t>(cfg.seed), static_cast<uint32_t>(cfg.seed >> 32),
                                    static_cast<uint32_t>(m), static_cast<uint32_t>(si), 0x5eedu};
            std::mt19937_64 rng(shot_seed);
            std::binomial_distribution<int> shots(n_shots, std::clamp(p0, 0.0, 1.0));
            p0 = static_cast<double>(shots(rng)) / n_shots;
        }
        survival[idx] = p0;
    });
    RBResult res;
    for (size_t li = 0; li < nl; ++li) {
        double mean = 0.0, var = 0.0;
        for (size_t si = 0; si < ns; ++si) mean += survival[li * ns + si];
        mean /= static_cast<double>(ns);
        for (size_t si = 0; si < ns; ++si) var += std::pow(survival[li * ns + si] - mean, 2);
        double sd = ns > 1 ? std::sqrt(var / static_cast<double>(ns - 1)) : 0.0;
        res.points.push_back({cfg.lengths[li], mean, sd});
    }
    try {
        res.fit = fit_decay(res.points);
        res.r = clifford_error(std::min(res.fit->p, 1.0));
    } catch (const Error &e) {
        res.fit.reset();
        res.fit_error = e.what();
    }
    return res;
}

Matrix simulate_block(const PulseSchedule &s, const NoiseModel &noise) {
    if (const auto *pn = std::get_if<PulseNoise>(&noise)) {
        return evolve(s, pn->knobs, pn->sim).matrix();
    }
    if (const auto *tn = std::get_if<TransmonNoise>(&noise)) {
        return transmon_evolve(s, tn->model).block;
    }
    return evolve(s).matrix();
}

double noise_duration(const NoiseModel &noise) {
    if (const auto *pn = std::get_if<PulseNoise>(&noise)) return pn->duration;
    if (const auto *tn = std::get_if<TransmonNoise>(&noise)) return tn->duration;
    return 35.0;
}

}  // namespace

NoiseModel parse_noise(const std::string &text) {
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto numbers = [&](size_t expected) {
        std::vector<double> v;
        std::stringstream ss(tail);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                size_t used = 0;
                v.push_back(std::stod(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception &) {
                throw ValidationError("noise model: bad number '" + item + "'");
            }
        }
        if (v.size() != expected) throw ValidationError("noise model '" + text + "': wrong argument count");
        return v;
    };
    if (head == "ideal" && tail.empty()) return IdealNoise{};
    if (head == "depolarizing") {
        double p = numbers(1)[0];
        if (!(p > 0.0 && p <= 1.0)) throw ValidationError("depolarizing parameter must be in (0, 1]");
        return DepolarizingNoise{p};
    }
    if (head == "pulse") {
        auto v = numbers(4);
        PulseNoise pn;
        pn.knobs = {v[0], v[1], v[2], v[3]};
        pn.knobs.validate();
        return pn;
    }
    if (head == "transmon") {
        TransmonNoise tn;
        tn.model.anharmonicity = kTwoPi * numbers(1)[0] * 1e-3;
        tn.model.validate();
        return tn;
    }
    throw ValidationError("unknown noise model '" + text + "'");
}

std::string describe_noise(const NoiseModel &noise) {
    std::ostringstream out;
    out.precision(10);
    if (std::holds_alternative<IdealNoise>(noise)) {
        out << "ideal";
    } else if (const auto *d = std::get_if<DepolarizingNoise>(&noise)) {
        out << "depolarizing:" << d->p;
    } else if (const auto *p = std::get_if<PulseNoise>(&noise)) {
        out << "pulse:" << p->knobs.eta1 << ',' << p->knobs.eta2 << ',' << p->knobs.zeta1 << ','
            << p->knobs.zeta2;
    } else if (const auto *t = std::get_if<TransmonNoise>(&noise)) {
        out << "transmon:" << t->model.anharmonicity / kTwoPi * 1e3;
    }
    return out.str();
}

void RBConfig::validate() const {
    if (lengths.empty()) throw ValidationError("RB lengths must not be empty");
    for (size_t k = 0; k < lengths.size(); ++k) {
        if (lengths[k] < 1) throw ValidationError("RB lengths must be at least 1");
        if (k > 0 && lengths[k] <= lengths[k - 1]) {
            throw ValidationError("RB lengths must be strictly increasing");
        }
    }
    if (n_sequences < 1) throw ValidationError("RB needs at least one sequence per length");
    if (shots && *shots < 0) throw ValidationError("RB shots must be nonnegative");
    if (interleaved && *interleaved >= kClifford) throw ValidationError("interleaved index out of range");
    if (!(interleaved_p > 0.0 && interleaved_p <= 1.0)) {
        throw ValidationError("interleaved depolarizing parameter must be in (0, 1]");
    }
}

int RBConfig::effective_shots() const {
    if (shots) return *shots;
    return std::holds_alternative<DepolarizingNoise>(noise) ? 0 : 200;
}

std::vector<size_t> random_cliffords(int m, uint64_t seed) {
    if (m < 1) throw ValidationError("sequence length must be at least 1");
    return draw_cliffords(m, seed, 0);
}

std::vector<size_t> rb_sequence(int m, uint64_t seed, std::optional<size_t> interleaved) {
    if (interleaved && *interleaved >= kClifford) throw ValidationError("interleaved index out of range");
    return close_sequence(random_cliffords(m, seed), interleaved);
}

double sequence_survival(const std::vector<size_t> &sequence, const std::vector<Matrix> &ops,
                         const std::vector<double> &step_p) {
    if (!step_p.empty() && step_p.size() != sequence.size()) {
        throw ValidationError("sequence_survival: step parameters do not match the sequence");
    }
    Matrix rho = Matrix::Zero(3, 3);
    rho(0, 0) = 1.0;
    for (size_t k = 0; k < sequence.size(); ++k) {
        const Matrix &g = ops.at(sequence[k]);
        rho = g * rho * g.adjoint();
        if (!step_p.empty() && step_p[k] != 1.0) {
            cplx tr = rho.trace();
            rho *= step_p[k];
            for (int i = 0; i < 3; ++i) rho(i, i) += (1.0 - step_p[k]) * tr / 3.0;
        }
    }
    return rho(0, 0).real();
}

DecayFit fit_decay(const std::vector<SurvivalPoint> &points) {
    std::vector<double> xs;
    for (const auto &pt : points) {
        if (std::find(xs.begin(), xs.end(), pt.length) == xs.end()) xs.push_back(pt.length);
    }
    if (xs.size() < 3) throw ValidationError("decay fit needs at least three distinct lengths");
    double ymin = points[0].mean, ymax = points[0].mean;
    for (const auto &pt : points) {
        ymin = std::min(ymin, pt.mean);
        ymax = std::max(ymax, pt.mean);
    }
    if (ymax - ymin < 1e-12) throw NumericalError("decay fit: data show no decay, p unidentifiable");

    const auto &first = *std::min_element(points.begin(), points.end(),
                                          [](auto &a, auto &b) { return a.length < b.length; });
    const auto &last = *std::max_element(points.begin(), points.end(),
                                         [](auto &a, auto &b) { return a.length < b.length; });
    const double b0 = 1.0 / 3.0;
    double ratio = (last.mean - b0) / (first.mean - b0);
    double p0 = 0.99;
    if (ratio > 0.0 && std::isfinite(ratio)) {
        p0 = std::pow(ratio, 1.0 / (last.length - first.length));
    }
    p0 = std::clamp(p0, 0.05, 0.9999);
    double a0 = (first.mean - b0) / std::pow(p0, first.length);

    const int m = static_cast<int>(points.size());
    auto residual = [&](const Eigen::VectorXd &x, Eigen::VectorXd &r) {
        for (int i = 0; i < m; ++i) {
            const auto &pt = points[static_cast<size_t>(i)];
            r(i) = x(0) * std::pow(x(1), pt.length) + x(2) - pt.mean;
        }
    };
    auto jacobian = [&](const Eigen::VectorXd &x, Eigen::MatrixXd &j) {
        for (int i = 0; i < m; ++i) {
            const double len = points[static_cast<size_t>(i)].length;
            j(i, 0) = std::pow(x(1), len);
            j(i, 1) = x(0) * len * std::pow(x(1), len - 1.0);
            j(i, 2) = 1.0;
        }
    };
    Eigen::VectorXd x0(3);
    x0 << a0, p0, b0;
    LsqResult res = levenberg_marquardt(residual, m, x0, jacobian, 1e-15, 10000);
    DecayFit fit;
    fit.A = res.params(0);
    fit.p = res.params(1);
    fit.B = res.params(2);
    fit.residual = res.rms;
    fit.p_stderr = std::sqrt(std::max(0.0, res.covariance(1, 1)));
    if (!res.converged || !(fit.p > 0.0) || fit.p > 1.0 + 1e-3) {
        throw NumericalError("decay fit failed to find 0 < p <= 1");
    }
    return fit;
}

double clifford_error(double p) {
    if (!(p > 0.0) || p > 1.0 + 1e-3) throw ValidationError("depolarizing parameter out of range");
    return (1.0 - p) * (1.0 - 1.0 / 3.0);
}

double irb_error(double p_gate, double p_ref) {
    if (!(p_gate > 0.0) || !(p_ref > 0.0) || p_gate > 1.0 + 1e-3 || p_ref > 1.0 + 1e-3) {
        throw ValidationError("depolarizing parameter out of range");
    }
    return (1.0 - p_gate / p_ref) * (1.0 - 1.0 / 3.0);
}

double incoherent_error_estimate(const DeviceParams &device, double tau_ns) {
    device.validate();
    if (tau_ns < 0.0) throw ValidationError("gate time must be nonnegative");
    double rate_per_us = 2.0 / device.T2_01 + 2.0 / device.T2_12 + 2.0 / device.T2_02 +
                         1.0 / device.T1_01 + 1.0 / device.T1_12;
    return rate_per_us / 12.0 * tau_ns * 1e-3;
}

NativeGates ideal_native_gates() {
    NativeGates g;
    for (int k = 0; k < 7; ++k) g[static_cast<size_t>(k)] = physical_gate_matrix(static_cast<GateKind>(k));
    return g;
}

NativePulse native_pulse(GateKind kind, double duration, double dt) {
    NativePulse np;
    np.right = Matrix::Identity(3, 3);
    switch (kind) {
        case GateKind::H:
        case GateKind::H_inv: {
            ChirpOptions opt;
            opt.sign = kind == GateKind::H ? 1 : -1;
            np.schedule = chirped_h_schedule(duration, dt, opt);
            auto [left, right] = h_phase_gates(solve_h_conditions(opt.sign));
            np.left = left;
            np.right = right;
            return np;
        }
        case GateKind::X:
        case GateKind::X_inv:
        case GateKind::X02: {
            XKind xk = kind == GateKind::X ? XKind::X : kind == GateKind::X_inv ? XKind::X_inverse : XKind::X02;
            np.schedule = rabi_from_invariant(make_lr_design(xk, duration), std::min(dt, duration / 200.0));
            np.left = residual_phase_correction(xk).matrix();
            return np;
        }
        case GateKind::X01:
        case GateKind::X12: {
            np.schedule = pi_pulse_schedule(kind == GateKind::X01 ? 1 : 2, duration, dt);
            np.left = diagonal_correction(evolve(np.schedule).matrix(), physical_gate_matrix(kind));
            return np;
        }
        case GateKind::VirtualPhase: break;
    }
    throw ValidationError("native_pulse: virtual phases have no pulse");
}

NativeGates simulated_native_gates(const NoiseModel &noise) {
    if (std::holds_alternative<IdealNoise>(noise) || std::holds_alternative<DepolarizingNoise>(noise)) {
        return ideal_native_gates();
    }
    NativeGates g;
    const double duration = noise_duration(noise);
    parallel_for(7, [&](size_t k) {
        NativePulse np = native_pulse(static_cast<GateKind>(k), duration);
        g[k] = np.left * simulate_block(np.schedule, noise) * np.right;
    });
    return g;
}

std::vector<Matrix> clifford_operators_from_native(const NativeGates &natives) {
    const auto &group = CliffordGroup::instance();
    std::vector<Matrix> ops;
    ops.reserve(group.size());
    for (const auto &e : group.elements()) {
        Matrix u = Matrix::Identity(3, 3);
        for (const auto &op : e.word) {
            if (op.is_virtual()) {
                u = gate_matrix(op) * u;
            } else {
                Matrix z = phase_frame(op.phi1, op.phi2);
                u = z.adjoint() * natives[static_cast<size_t>(op.kind)] * z * u;
            }
        }
        ops.push_back(std::move(u));
    }
    return ops;
}

std::vector<Matrix> clifford_operators(const NoiseModel &noise) {
    if (std::holds_alternative<IdealNoise>(noise) || std::holds_alternative<DepolarizingNoise>(noise)) {
        std::vector<Matrix> ops;
        for (const auto &e : CliffordGroup::instance().elements()) ops.push_back(e.canonical);
        return ops;
    }
    return clifford_operators_from_native(simulated_native_gates(noise));
}

RBResult run_rb(const RBConfig &cfg) {
    cfg.validate();
    return run_sequences(cfg, clifford_operators(cfg.noise));
}

IRBResult run_irb(const RBConfig &cfg, size_t gate) {
    cfg.validate();
    auto ops = clifford_operators(cfg.noise);
    RBConfig ref = cfg;
    ref.interleaved.reset();
    RBConfig inter = cfg;
    inter.interleaved = gate;
    inter.validate();
    IRBResult out;
    out.reference = run_sequences(ref, ops);
    out.interleaved = run_sequences(inter, ops);
    if (!out.reference.fit || !out.interleaved.fit) {
        throw NumericalError("IRB: decay fit failed (" + out.reference.fit_error +
                             out.interleaved.fit_error + ")");
    }
    out.r_gate = irb_error(out.interleaved.fit->p, out.reference.fit->p);
    return out;
}

std::string rb_result_to_json(const RBConfig &cfg, const RBResult &res) {
    nlohmann::json j;
    j["version"] = 1;
    j["units"] = {{"length", "Cliffords"}, {"survival", "probability"}};
    j["config"] = {{"lengths", cfg.lengths},
                   {"n_sequences", cfg.n_sequences},
                   {"shots", cfg.effective_shots()},
                   {"seed", cfg.seed},
                   {"noise", describe_noise(cfg.noise)}};
    if (cfg.interleaved) j["config"]["interleaved"] = *cfg.interleaved;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto &p : res.points) pts.push_back({{"m", p.length}, {"mean", p.mean}, {"std", p.stddev}});
    j["points"] = pts;
    if (res.fit) {
        j["fit"] = {{"A", res.fit->A}, {"p", res.fit->p}, {"B", res.fit->B},
                    {"residual", res.fit->residual}, {"p_stderr", res.fit->p_stderr}};
        j["r"] = res.r;
    } else {
        j["fit"] = nullptr;
        j["fit_error"] = res.fit_error;
    }
    return j.dump(1);
}

}  // namespace qutrit
