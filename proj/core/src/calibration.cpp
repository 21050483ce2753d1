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

#include "qutrit/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"

#include "qutrit/clifford.hpp"
#include "qutrit/least_squares.hpp"
#include "qutrit/parallel.hpp"

namespace qutrit {

namespace {

using Array16 = std::array<double, CalibParams::kCount>;

bool is_h_kind(size_t kind) {
    return kind == static_cast<size_t>(GateKind::H) || kind == static_cast<size_t>(GateKind::H_inv);
}

// Central differences in the interior, one-sided at the ends.
std::vector<cplx> derivative(const std::vector<cplx> &y, double dt) {
    const size_t n = y.size();
    std::vector<cplx> d(n, 0.0);
    if (n < 2) return d;
    d[0] = (y[1] - y[0]) / dt;
    d[n - 1] = (y[n - 1] - y[n - 2]) / dt;
    for (size_t k = 1; k + 1 < n; ++k) d[k] = (y[k + 1] - y[k - 1]) / (2.0 * dt);
    return d;
}

void render_tone(std::vector<cplx> &tone, double amp, double lambda, double detuning, double alpha,
                 double dt) {
    if (lambda != 0.0) {
        if (alpha == 0.0) throw ValidationError("render_x_pulses: DRAG needs a nonzero anharmonicity");
        std::vector<cplx> d = derivative(tone, dt);
        for (size_t k = 0; k < tone.size(); ++k) {
            tone[k] = amp * tone[k] + kI * (lambda * amp / alpha) * d[k];
        }
    } else if (amp != 1.0) {
        for (auto &v : tone) v *= amp;
    }
    if (detuning != 0.0) {
        for (size_t k = 0; k < tone.size(); ++k) {
            tone[k] *= std::exp(cplx(0.0, detuning * static_cast<double>(k) * dt));
        }
    }
}

Matrix phase_pair(double a, double b) {
    Matrix p = Matrix::Identity(3, 3);
    p(1, 1) = std::exp(cplx(0.0, a));
    p(2, 2) = std::exp(cplx(0.0, b));
    return p;
}

std::vector<double> cache_key(size_t kind, const CalibParams &p) {
    if (is_h_kind(kind)) return {static_cast<double>(kind), p.A_h1, p.A_h2, p.B_h1, p.B_h2};
    return {static_cast<double>(kind), p.A_x1, p.A_x2, p.D_x1, p.D_x2, p.lambda_x1, p.lambda_x2};
}

uint64_t derive_seed(uint64_t seed, uint32_t a, uint32_t b) {
    std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), a, b};
    std::array<uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<uint64_t>(out[0]) << 32) | out[1];
}

struct Population {
    std::vector<Array16> x;
    std::vector<double> f;
};

double safe_eval(const CalibObjective &objective, const Array16 &x, const std::vector<SequenceSet> &sets) {
    try {
        double z = objective(CalibParams::from_array(x), sets);
        return std::isfinite(z) ? z : std::numeric_limits<double>::infinity();
    } catch (const Error &) {
        return std::numeric_limits<double>::infinity();
    }
}

void evaluate_all(Population &pop, const CalibObjective &objective, const std::vector<SequenceSet> &sets) {
    pop.f.assign(pop.x.size(), 0.0);
    parallel_for(pop.x.size(), [&](size_t i) { pop.f[i] = safe_eval(objective, pop.x[i], sets); });
}

size_t best_index(const std::vector<double> &f) {
    return static_cast<size_t>(std::min_element(f.begin(), f.end()) - f.begin());
}

double converged_fraction(const std::vector<double> &f, double tol) {
    const double best = f[best_index(f)];
    if (!std::isfinite(best)) return 0.0;
    size_t n = 0;
    for (double v : f) {
        if (std::isfinite(v) && std::abs(v - best) <= tol * std::max(std::abs(best), 1e-300)) ++n;
    }
    return static_cast<double>(n) / static_cast<double>(f.size());
}

HistoryEntry summarize(const std::vector<double> &f, int iteration, int phase) {
    HistoryEntry h;
    h.iteration = iteration;
    h.phase = phase;
    h.population = static_cast<int>(f.size());
    h.best = f[best_index(f)];
    std::vector<double> finite;
    for (double v : f) {
        if (std::isfinite(v)) finite.push_back(v);
    }
    if (finite.empty()) {
        h.mean = h.spread = std::numeric_limits<double>::infinity();
        return h;
    }
    h.mean = std::accumulate(finite.begin(), finite.end(), 0.0) / static_cast<double>(finite.size());
    double var = 0.0;
    for (double v : finite) var += (v - h.mean) * (v - h.mean);
    h.spread = std::sqrt(var / static_cast<double>(finite.size()));
    return h;
}

// One rand/1/bin generation. Trial vectors draw from a per-candidate stream
// so the outcome does not depend on the evaluation schedule.
void de_generation(Population &pop, const Array16 &lo, const Array16 &hi, double F, double CR,
                   const CalibObjective &objective, const std::vector<SequenceSet> &sets,
                   uint64_t seed, uint32_t phase, uint32_t gen) {
    const size_t np = pop.x.size();
    std::vector<size_t> free_dims;
    for (size_t j = 0; j < CalibParams::kCount; ++j) {
        if (hi[j] > lo[j]) free_dims.push_back(j);
    }
    std::vector<Array16> trials(np);
    for (size_t i = 0; i < np; ++i) {
        std::seed_seq ss{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), phase, gen,
                         static_cast<uint32_t>(i)};
        std::mt19937_64 rng(ss);
        std::uniform_int_distribution<size_t> pick(0, np - 1);
        size_t r1, r2, r3;
        do { r1 = pick(rng); } while (r1 == i);
        do { r2 = pick(rng); } while (r2 == i || r2 == r1);
        do { r3 = pick(rng); } while (r3 == i || r3 == r1 || r3 == r2);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        Array16 t = pop.x[i];
        if (!free_dims.empty()) {
            std::uniform_int_distribution<size_t> jr(0, free_dims.size() - 1);
            const size_t jrand = free_dims[jr(rng)];
            for (size_t j : free_dims) {
                if (j == jrand || u(rng) < CR) {
                    double v = pop.x[r1][j] + F * (pop.x[r2][j] - pop.x[r3][j]);
                    t[j] = std::clamp(v, lo[j], hi[j]);
                }
            }
        }
        trials[i] = t;
    }
    std::vector<double> ft(np);
    parallel_for(np, [&](size_t i) { ft[i] = safe_eval(objective, trials[i], sets); });
    for (size_t i = 0; i < np; ++i) {
        if (ft[i] <= pop.f[i]) {
            pop.x[i] = trials[i];
            pop.f[i] = ft[i];
        }
    }
}

std::vector<double> truncated_survival(const SequenceSet &set, const std::vector<Matrix> &ops) {
    const auto &group = CliffordGroup::instance();
    std::vector<double> out;
    for (int t : set.truncations) {
        if (t < 1 || static_cast<size_t>(t) > set.cliffords.size()) {
            throw ValidationError("truncation outside the sequence");
        }
        std::vector<size_t> seq(set.cliffords.begin(), set.cliffords.begin() + t);
        size_t acc = group.identity_index();
        for (size_t c : seq) acc = group.then(acc, c);
        seq.push_back(group.inverse(acc));
        out.push_back(sequence_survival(seq, ops));
    }
    return out;
}

}  // namespace

const std::array<const char *, CalibParams::kCount> &CalibParams::names() {
    static const std::array<const char *, kCount> n{
        "A_x1",  "A_x2",  "D_x1",   "D_x2",   "lambda_x1", "lambda_x2", "A_h1",   "A_h2",
        "B_h1",  "B_h2",  "phi_h1", "phi_h2", "phi_x1",    "phi_x2",    "phi_x3", "phi_x4"};
    return n;
}

std::array<double, CalibParams::kCount> CalibParams::to_array() const {
    return {A_x1, A_x2, D_x1, D_x2, lambda_x1, lambda_x2, A_h1, A_h2,
            B_h1, B_h2, phi_h1, phi_h2, phi_x1, phi_x2, phi_x3, phi_x4};
}

CalibParams CalibParams::from_array(const std::array<double, kCount> &v) {
    CalibParams p;
    p.A_x1 = v[0];
    p.A_x2 = v[1];
    p.D_x1 = v[2];
    p.D_x2 = v[3];
    p.lambda_x1 = v[4];
    p.lambda_x2 = v[5];
    p.A_h1 = v[6];
    p.A_h2 = v[7];
    p.B_h1 = v[8];
    p.B_h2 = v[9];
    p.phi_h1 = v[10];
    p.phi_h2 = v[11];
    p.phi_x1 = v[12];
    p.phi_x2 = v[13];
    p.phi_x3 = v[14];
    p.phi_x4 = v[15];
    return p;
}

void CalibBounds::validate() const {
    auto lo = lower.to_array(), hi = upper.to_array();
    for (size_t j = 0; j < CalibParams::kCount; ++j) {
        if (!std::isfinite(lo[j]) || !std::isfinite(hi[j])) {
            throw ValidationError(std::string("calibration bound for ") + CalibParams::names()[j] +
                                  " is not finite");
        }
        if (lo[j] > hi[j]) {
            throw ValidationError(std::string("calibration bound for ") + CalibParams::names()[j] +
                                  " is inverted");
        }
    }
}

bool CalibBounds::contains(const CalibParams &p) const {
    auto lo = lower.to_array(), hi = upper.to_array(), v = p.to_array();
    for (size_t j = 0; j < CalibParams::kCount; ++j) {
        if (v[j] < lo[j] || v[j] > hi[j]) return false;
    }
    return true;
}

CalibBounds CalibBounds::defaults() {
    const double dmax = kTwoPi * 2e-3;
    CalibBounds b;
    b.lower = CalibParams::from_array(
        {0.9, 0.9, -dmax, -dmax, -1.0, -1.0, 0.9, 0.9, 0.9, 0.9, -0.2, -0.2, -0.2, -0.2, -0.2, -0.2});
    b.upper = CalibParams::from_array(
        {1.1, 1.1, dmax, dmax, 1.0, 1.0, 1.1, 1.1, 1.1, 1.1, 0.2, 0.2, 0.2, 0.2, 0.2, 0.2});
    return b;
}

CalibBounds CalibBounds::around(const CalibParams &p, const std::vector<std::string> &free,
                                const std::vector<double> &half_width) {
    if (free.size() != half_width.size()) {
        throw ValidationError("CalibBounds::around: one half width per free knob");
    }
    Array16 lo = p.to_array(), hi = p.to_array();
    const auto &names = CalibParams::names();
    for (size_t i = 0; i < free.size(); ++i) {
        auto it = std::find_if(names.begin(), names.end(), [&](const char *n) { return free[i] == n; });
        if (it == names.end()) throw ValidationError("unknown calibration knob '" + free[i] + "'");
        if (!(half_width[i] >= 0.0)) throw ValidationError("half width must be nonnegative");
        size_t j = static_cast<size_t>(it - names.begin());
        lo[j] -= half_width[i];
        hi[j] += half_width[i];
    }
    return {CalibParams::from_array(lo), CalibParams::from_array(hi)};
}

PulseSchedule render_x_pulses(const CalibParams &params, const PulseSchedule &base,
                              double anharmonicity) {
    PulseSchedule s = base;
    render_tone(s.omega1, params.A_x1, params.lambda_x1, params.D_x1, anharmonicity, s.dt);
    render_tone(s.omega2, params.A_x2, params.lambda_x2, params.D_x2, anharmonicity, s.dt);
    return s;
}

PulseSchedule render_h_pulses(const CalibParams &params, const PulseSchedule &base) {
    PulseSchedule s = base;
    if (params.A_h1 != 1.0) {
        for (auto &v : s.omega1) v *= params.A_h1;
    }
    if (params.A_h2 != 1.0) {
        for (auto &v : s.omega2) v *= params.A_h2;
    }
    const double chirp = params.B_h1 * params.A_h1;
    if (chirp != 1.0) {
        for (auto &v : s.detuning) v *= chirp;
    }
    if (params.B_h2 != params.B_h1) {
        const double mismatch = (params.B_h1 - params.B_h2) * params.A_h1;
        double acc = 0.0;
        for (size_t k = 0; k < s.size(); ++k) {
            if (k > 0) acc += 0.5 * (base.detuning[k] + base.detuning[k - 1]) * s.dt;
            s.omega2[k] *= std::exp(cplx(0.0, mismatch * acc));
        }
    }
    return s;
}

std::vector<SequenceSet> make_sequence_sets(int count, uint64_t seed, int length,
                                            const std::vector<int> &truncations) {
    if (count < 1) throw ValidationError("need at least one sequence set");
    if (length < 1) throw ValidationError("sequence length must be positive");
    if (truncations.size() < 3) throw ValidationError("need at least three truncation lengths");
    for (int t : truncations) {
        if (t < 1 || t > length) throw ValidationError("truncation outside the sequence length");
    }
    std::vector<SequenceSet> sets;
    for (int k = 0; k < count; ++k) {
        SequenceSet s;
        s.cliffords = random_cliffords(length, derive_seed(seed, 0x5e75u, static_cast<uint32_t>(k)));
        s.truncations = truncations;
        sets.push_back(std::move(s));
    }
    return sets;
}

ObjectiveFit fit_objective_decay(const std::vector<int> &lengths, const std::vector<double> &survival) {
    if (lengths.size() != survival.size() || lengths.size() < 3) {
        throw ValidationError("objective fit needs at least three matched points");
    }
    const double b = 1.0 / 3.0;
    const size_t first = static_cast<size_t>(std::min_element(lengths.begin(), lengths.end()) - lengths.begin());
    const size_t last = static_cast<size_t>(std::max_element(lengths.begin(), lengths.end()) - lengths.begin());
    double p0 = 0.99;
    double ratio = (survival[last] - b) / (survival[first] - b);
    if (ratio > 0.0 && std::isfinite(ratio) && lengths[last] > lengths[first]) {
        p0 = std::pow(ratio, 1.0 / (lengths[last] - lengths[first]));
    }
    p0 = std::clamp(p0, 0.5, 1.0);
    double a0 = (survival[first] - b) / std::pow(p0, lengths[first]);

    const int m = static_cast<int>(lengths.size());
    auto residual = [&](const Eigen::VectorXd &x, Eigen::VectorXd &r) {
        for (int i = 0; i < m; ++i) {
            r(i) = x(0) * std::pow(x(1), lengths[static_cast<size_t>(i)]) + b - survival[static_cast<size_t>(i)];
        }
    };
    auto jacobian = [&](const Eigen::VectorXd &x, Eigen::MatrixXd &j) {
        for (int i = 0; i < m; ++i) {
            const double len = lengths[static_cast<size_t>(i)];
            j(i, 0) = std::pow(x(1), len);
            j(i, 1) = x(0) * len * std::pow(x(1), len - 1.0);
        }
    };
    Eigen::VectorXd x0(2);
    x0 << a0, p0;
    LsqResult res = levenberg_marquardt(residual, m, x0, jacobian, 1e-15, 4000);
    ObjectiveFit fit{res.params(0), res.params(1), res.rms};
    if (!(fit.p > 0.0) || !std::isfinite(fit.A)) throw NumericalError("objective decay fit failed");
    return fit;
}

CalibrationModel::CalibrationModel(CalibBackend backend) : backend_(std::move(backend)) {
    if (backend_.kind == CalibBackendKind::transmon) backend_.model.validate();
    for (size_t k = 0; k < 7; ++k) {
        base_[k] = native_pulse(static_cast<GateKind>(k), backend_.duration, backend_.schedule_dt);
    }
}

Matrix CalibrationModel::simulate(size_t kind, const CalibParams &params) const {
    auto key = cache_key(kind, params);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    const NativePulse &np = base_[kind];
    PulseSchedule s = is_h_kind(kind) ? render_h_pulses(params, np.schedule)
                                      : render_x_pulses(params, np.schedule, backend_.model.anharmonicity);
    Matrix block = backend_.kind == CalibBackendKind::transmon
                       ? transmon_evolve(s, backend_.model, std::nullopt, backend_.transmon_sim).block
                       : evolve(s, {}, backend_.sim).matrix();
    Matrix gate = np.left * block * np.right;
    std::lock_guard<std::mutex> lock(mutex_);
    if (cache_.size() > 4096) cache_.clear();
    cache_.emplace(std::move(key), gate);
    return gate;
}

size_t CalibrationModel::cache_size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.size();
}

NativeGates CalibrationModel::native_gates(const CalibParams &params) const {
    NativeGates g;
    const Matrix post_h = phase_pair(params.phi_h1, params.phi_h2);
    const Matrix pre_x = phase_pair(params.phi_x1, params.phi_x2);
    const Matrix post_x = phase_pair(params.phi_x3, params.phi_x4);
    for (size_t k = 0; k < 7; ++k) {
        Matrix u = simulate(k, params);
        g[k] = is_h_kind(k) ? Matrix(post_h * u) : Matrix(post_x * u * pre_x);
    }
    return g;
}

std::vector<double> CalibrationModel::survival(const CalibParams &params, const SequenceSet &set) const {
    return truncated_survival(set, clifford_operators_from_native(native_gates(params)));
}

std::vector<double> CalibrationModel::set_scores(const CalibParams &params,
                                                 const std::vector<SequenceSet> &sets) const {
    if (sets.empty()) throw ValidationError("objective needs at least one sequence set");
    const auto ops = clifford_operators_from_native(native_gates(params));
    std::vector<double> scores;
    for (const auto &set : sets) {
        ObjectiveFit fit = fit_objective_decay(set.truncations, truncated_survival(set, ops));
        scores.push_back(0.3 * fit.residual - fit.p);
    }
    return scores;
}

double CalibrationModel::objective(const CalibParams &params, const std::vector<SequenceSet> &sets) const {
    auto s = set_scores(params, sets);
    return std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
}

double rb_objective(const CalibParams &params, const std::vector<SequenceSet> &sets,
                    const CalibrationModel &model) {
    return model.objective(params, sets);
}

void OptimizerConfig::validate() const {
    if (population < 4) throw ValidationError("population must be at least 4");
    for (double r : {mutation1, crossover1, mutation2, crossover2}) {
        if (!(r > 0.0 && r < 1.0)) throw ValidationError("mutation and crossover rates must lie in (0, 1)");
    }
    if (mutation1 < mutation2 || crossover1 < crossover2) {
        throw ValidationError("Phase I rates must not be below Phase II rates");
    }
    if (phase1_sequences < 1 || phase2_sequences < 1) throw ValidationError("need at least one sequence set per phase");
    if (phase1_max_iterations < 1 || phase2_max_iterations < 0) throw ValidationError("invalid iteration limits");
    if (!(convergence_threshold > 0.0 && convergence_threshold <= 1.0)) {
        throw ValidationError("convergence threshold must lie in (0, 1]");
    }
    if (!(convergence_tolerance >= 0.0)) throw ValidationError("convergence tolerance must be nonnegative");
    if (sequence_length < 1) throw ValidationError("sequence length must be positive");
}

OptimizationResult two_phase_optimize(const OptimizerConfig &cfg, const CalibBounds &bounds,
                                      const CalibObjective &objective,
                                      const std::vector<CalibParams> &seeds) {
    cfg.validate();
    bounds.validate();
    if (!objective) throw ValidationError("objective is empty");
    const Array16 lo = bounds.lower.to_array(), hi = bounds.upper.to_array();
    const size_t np = static_cast<size_t>(cfg.population);

    // Latin hypercube: one stratum per member and dimension.
    Population pop;
    pop.x.assign(np, lo);
    {
        std::seed_seq ss{static_cast<uint32_t>(cfg.seed), static_cast<uint32_t>(cfg.seed >> 32), 0x1a7cu};
        std::mt19937_64 rng(ss);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (size_t j = 0; j < CalibParams::kCount; ++j) {
            std::vector<size_t> perm(np);
            std::iota(perm.begin(), perm.end(), size_t{0});
            std::shuffle(perm.begin(), perm.end(), rng);
            for (size_t i = 0; i < np; ++i) {
                double frac = (static_cast<double>(perm[i]) + u(rng)) / static_cast<double>(np);
                pop.x[i][j] = hi[j] > lo[j] ? lo[j] + frac * (hi[j] - lo[j]) : lo[j];
            }
        }
    }
    for (size_t i = 0; i < seeds.size() && i < np; ++i) {
        Array16 v = seeds[i].to_array();
        for (size_t j = 0; j < CalibParams::kCount; ++j) v[j] = std::clamp(v[j], lo[j], hi[j]);
        pop.x[i] = v;
    }

    const auto sets1 = make_sequence_sets(cfg.phase1_sequences, derive_seed(cfg.seed, 1, 0),
                                          cfg.sequence_length, cfg.truncations);
    const auto sets2 = make_sequence_sets(cfg.phase2_sequences, derive_seed(cfg.seed, 2, 0),
                                          cfg.sequence_length, cfg.truncations);

    OptimizationResult res;
    int iteration = 0;
    evaluate_all(pop, objective, sets1);
    res.phase1_initial_z = pop.f[best_index(pop.f)];

    for (int g = 0; g < cfg.phase1_max_iterations; ++g) {
        de_generation(pop, lo, hi, cfg.mutation1, cfg.crossover1, objective, sets1, cfg.seed, 1,
                      static_cast<uint32_t>(g));
        res.history.push_back(summarize(pop.f, ++iteration, 1));
        ++res.phase1_iterations;
        if (converged_fraction(pop.f, cfg.convergence_tolerance) >= cfg.convergence_threshold) {
            res.phase1_converged = true;
            break;
        }
    }
    res.phase1_best_z = pop.f[best_index(pop.f)];
    res.improved = res.phase1_best_z < res.phase1_initial_z;

    evaluate_all(pop, objective, sets2);
    for (int g = 0; g < cfg.phase2_max_iterations; ++g) {
        de_generation(pop, lo, hi, cfg.mutation2, cfg.crossover2, objective, sets2, cfg.seed, 2,
                      static_cast<uint32_t>(g));
        res.history.push_back(summarize(pop.f, ++iteration, 2));
        ++res.phase2_iterations;
        if (converged_fraction(pop.f, cfg.convergence_tolerance) >= cfg.convergence_threshold) break;
    }

    const size_t b = best_index(pop.f);
    res.best = CalibParams::from_array(pop.x[b]);
    res.best_z = pop.f[b];
    for (const auto &x : pop.x) res.final_population.push_back(CalibParams::from_array(x));
    res.validation_scores.resize(sets2.size());
    for (size_t k = 0; k < sets2.size(); ++k) {
        res.validation_scores[k] = safe_eval(objective, pop.x[b], {sets2[k]});
    }
    auto [mn, mx] = std::minmax_element(res.validation_scores.begin(), res.validation_scores.end());
    res.validation_variation = (*mx - *mn) / std::max(std::abs(res.phase1_best_z), 1e-300);
    return res;
}

std::string history_to_csv(const std::vector<HistoryEntry> &history) {
    std::ostringstream os;
    os.precision(12);
    os << "iteration,phase,best_Z,mean_Z,population_spread\n";
    for (const auto &h : history) {
        os << h.iteration << ',' << h.phase << ',' << h.best << ',' << h.mean << ',' << h.spread << '\n';
    }
    return os.str();
}

std::string calib_params_to_json(const CalibParams &p) {
    nlohmann::ordered_json j;
    auto v = p.to_array();
    for (size_t k = 0; k < CalibParams::kCount; ++k) j[CalibParams::names()[k]] = v[k];
    return j.dump(2);
}

CalibParams calib_params_from_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("calibration parameters: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("calibration parameters must be a JSON object");
    Array16 v = CalibParams{}.to_array();
    const auto &names = CalibParams::names();
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto pos = std::find_if(names.begin(), names.end(), [&](const char *n) { return it.key() == n; });
        if (pos == names.end()) throw ValidationError("unknown calibration knob '" + it.key() + "'");
        if (!it->is_number()) throw ValidationError("calibration knob '" + it.key() + "' must be a number");
        v[static_cast<size_t>(pos - names.begin())] = it->get<double>();
    }
    return CalibParams::from_array(v);
}

std::string optimization_result_to_json(const OptimizationResult &res) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["units"] = {{"D", "rad/ns"}, {"phi", "rad"}, {"Z", "dimensionless"}};
    j["best"] = nlohmann::ordered_json::parse(calib_params_to_json(res.best));
    j["best_Z"] = res.best_z;
    j["phase1_initial_Z"] = res.phase1_initial_z;
    j["phase1_best_Z"] = res.phase1_best_z;
    j["phase1_iterations"] = res.phase1_iterations;
    j["phase2_iterations"] = res.phase2_iterations;
    j["phase1_converged"] = res.phase1_converged;
    j["improved"] = res.improved;
    j["validation_scores"] = res.validation_scores;
    j["validation_variation"] = res.validation_variation;
    return j.dump(2);
}

}  // namespace qutrit
