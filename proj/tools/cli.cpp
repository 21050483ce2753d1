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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "io.hpp"
#include "qutrit/benchmarking.hpp"
#include "qutrit/calibration.hpp"
#include "qutrit/clifford.hpp"
#include "qutrit/device.hpp"
#include "qutrit/hgate.hpp"
#include "qutrit/propagator.hpp"
#include "qutrit/qudit_algorithms.hpp"
#include "qutrit/xgate.hpp"

namespace qutrit::cli {

namespace {

using json = nlohmann::ordered_json;

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

// Writes `content` to `path`, or to `out` when no path was given.
void emit(OutputSet &files, const std::string &path, const std::string &content, std::ostream &out) {
    if (path.empty()) {
        out << content;
        if (!content.empty() && content.back() != '\n') out << '\n';
    } else {
        files.add(path, content.back() == '\n' ? content : content + "\n");
    }
}

json parse_json_file(const std::string &path) {
    std::string text = read_file(path);
    try {
        return json::parse(text);
    } catch (const json::exception &e) {
        throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void require_object(const json &j, const std::string &where, const std::set<std::string> &allowed) {
    if (!j.is_object()) throw ValidationError(where + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ValidationError("unknown key '" + it.key() + "' in " + where);
        }
    }
}

template <typename T>
void read_key(const json &j, const char *key, T &dst, const std::string &where) {
    if (!j.contains(key)) return;
    try {
        dst = j.at(key).get<T>();
    } catch (const json::exception &) {
        throw ValidationError(std::string("key '") + key + "' in " + where + " has the wrong type");
    }
}

// ---- design -------------------------------------------------------------

struct DesignArgs {
    std::string gate;
    double T = 35.0;
    double dt = 0.05;
    std::string out;
};

int cmd_design(const DesignArgs &a, std::ostream &out) {
    if (!(a.T > 0.0) || !(a.dt > 0.0)) throw ValidationError("T and dt must be positive");
    PulseSchedule s;
    Matrix realised, target;
    std::ostringstream summary;
    if (a.gate == "h" || a.gate == "h-inv") {
        ChirpOptions opt;
        opt.sign = a.gate == "h" ? 1 : -1;
        HGateSolution sol = solve_h_conditions(opt.sign);
        s = chirped_h_schedule(a.T, a.dt, opt);
        auto [left, right] = h_phase_gates(sol);
        realised = left * evolve(s).matrix() * right;
        target = opt.sign > 0 ? hadamard3() : Matrix(hadamard3().adjoint());
        summary << "gate " << a.gate << ": A = " << fixed(sol.A, 6) << ", delta = " << fixed(sol.delta, 6)
                << ", theta = " << fixed(sol.theta, 6) << "\n"
                << "Omega1*T = " << fixed(sol.omega1_T, 6) << ", Delta*T = " << fixed(sol.delta_T, 6) << "\n"
                << "Omega/2pi = " << fixed(sol.omega1_T / a.T / kTwoPi * 1e3, 4)
                << " MHz, Delta/2pi = " << fixed(std::abs(sol.delta_T) / a.T / kTwoPi * 1e3, 4) << " MHz\n";
    } else {
        XKind kind = xkind_from_string(a.gate);
        LRDesign d = make_lr_design(kind, a.T);
        s = rabi_from_invariant(d, std::min(a.dt, a.T / 200.0));
        realised = residual_phase_correction(kind).matrix() * evolve(s).matrix();
        target = x_target(kind);
        summary << "gate " << a.gate << ": lambda = " << fixed(d.lambda, 4)
                << ", theta = " << fixed(d.theta_target / kPi, 4) << " pi (" << fixed(d.theta_target, 6)
                << ")\n";
    }
    summary << "T = " << a.T << " ns, samples = " << s.size()
            << ", fidelity = " << fixed(average_gate_fidelity(realised, target), 10) << "\n";
    out << summary.str();
    if (!a.out.empty()) {
        OutputSet files;
        files.add(a.out, s.to_json() + "\n");
        files.commit();
    }
    return kOk;
}

// ---- rb / irb ------------------------------------------------------------

struct RBArgs {
    std::string config;
    std::string noise;
    std::string lengths;
    int sequences = -1;
    int shots = -1;
    int64_t seed = -1;
    double interleaved_p = -1.0;
    std::string gate;
    std::string out;
};

RBConfig rb_config_from(const RBArgs &a) {
    RBConfig cfg;
    cfg.noise = DepolarizingNoise{0.9847};
    if (!a.config.empty()) {
        json j = parse_json_file(a.config);
        const std::string where = "'" + a.config + "'";
        require_object(j, where, {"lengths", "sequences", "shots", "seed", "noise", "interleaved_p"});
        read_key(j, "lengths", cfg.lengths, where);
        read_key(j, "sequences", cfg.n_sequences, where);
        if (j.contains("shots")) {
            int shots = 0;
            read_key(j, "shots", shots, where);
            cfg.shots = shots;
        }
        read_key(j, "seed", cfg.seed, where);
        read_key(j, "interleaved_p", cfg.interleaved_p, where);
        if (j.contains("noise")) {
            std::string n;
            read_key(j, "noise", n, where);
            cfg.noise = parse_noise(n);
        }
    }
    if (!a.noise.empty()) cfg.noise = parse_noise(a.noise);
    if (!a.lengths.empty()) cfg.lengths = parse_int_list(a.lengths);
    if (a.sequences >= 0) cfg.n_sequences = a.sequences;
    if (a.shots >= 0) cfg.shots = a.shots;
    if (a.seed >= 0) cfg.seed = static_cast<uint64_t>(a.seed);
    if (a.interleaved_p >= 0.0) cfg.interleaved_p = a.interleaved_p;
    cfg.validate();
    return cfg;
}

std::string rb_summary(const RBResult &r) {
    if (!r.fit) return "fit failed: " + r.fit_error;
    std::ostringstream os;
    os << "p = " << fixed(r.fit->p, 5) << " +- " << fixed(r.fit->p_stderr, 5) << ", r_c = " << fixed(r.r, 5)
       << ", A = " << fixed(r.fit->A, 4) << ", B = " << fixed(r.fit->B, 4)
       << ", residual = " << std::scientific << std::setprecision(2) << r.fit->residual;
    return os.str();
}

int cmd_rb(const RBArgs &a, std::ostream &out) {
    RBConfig cfg = rb_config_from(a);
    RBResult r = run_rb(cfg);
    if (!r.fit) throw NumericalError("RB decay fit failed: " + r.fit_error);
    OutputSet files;
    if (!a.out.empty()) files.add(a.out, rb_result_to_json(cfg, r) + "\n");
    files.commit();
    out << rb_summary(r) << "\n";
    return kOk;
}

size_t resolve_gate(const std::string &name) {
    static const std::pair<const char *, GateKind> kNames[] = {
        {"h", GateKind::H},     {"h-inv", GateKind::H_inv}, {"x", GateKind::X},     {"x-inv", GateKind::X_inv},
        {"x01", GateKind::X01}, {"x12", GateKind::X12},     {"x02", GateKind::X02}};
    const auto &group = CliffordGroup::instance();
    for (const auto &[n, k] : kNames) {
        if (name == n) return group.index_of(physical_gate_matrix(k));
    }
    if (name == "s") return group.index_of(gate_matrix(s_op()));
    if (name == "z") return group.index_of(gate_matrix(z_op()));
    try {
        size_t pos = 0;
        long v = std::stol(name, &pos);
        if (pos == name.size() && v >= 0 && static_cast<size_t>(v) < group.size()) return static_cast<size_t>(v);
    } catch (const std::exception &) {
    }
    throw ValidationError("unknown gate '" + name + "' (use h, h-inv, x, x-inv, x01, x12, x02, s, z or 0..215)");
}

int cmd_irb(const RBArgs &a, std::ostream &out) {
    if (a.gate.empty()) throw ValidationError("irb needs --gate");
    RBConfig cfg = rb_config_from(a);
    size_t gate = resolve_gate(a.gate);
    IRBResult r = run_irb(cfg, gate);
    if (!r.reference.fit || !r.interleaved.fit) {
        throw NumericalError("IRB decay fit failed: " + r.reference.fit_error + r.interleaved.fit_error);
    }
    json j;
    j["version"] = 1;
    j["units"] = {{"length", "Cliffords"}, {"r_gate", "dimensionless"}};
    j["gate"] = a.gate;
    j["clifford_index"] = gate;
    j["reference"] = json::parse(rb_result_to_json(cfg, r.reference));
    RBConfig icfg = cfg;
    icfg.interleaved = gate;
    j["interleaved"] = json::parse(rb_result_to_json(icfg, r.interleaved));
    j["r_gate"] = r.r_gate;
    OutputSet files;
    if (!a.out.empty()) files.add(a.out, j.dump(2) + "\n");
    files.commit();
    out << "reference: " << rb_summary(r.reference) << "\n"
        << "interleaved: " << rb_summary(r.interleaved) << "\n"
        << "r_gate = " << fixed(r.r_gate, 5) << "\n";
    return kOk;
}

// ---- qudit algorithms ----------------------------------------------------

int cmd_ramsey(int d, int points, const std::string &path, std::ostream &out) {
    if (d < 2) throw ValidationError("--d must be at least 2");
    if (points < 2) throw ValidationError("--points must be at least 2");
    std::ostringstream os;
    os << csv_preamble("phi:rad");
    os << "phi";
    for (int k = 0; k < d; ++k) os << ",P" << k;
    os << "\n" << std::setprecision(15);
    for (int i = 0; i < points; ++i) {
        double phi = kTwoPi * i / (points - 1);
        os << phi;
        for (int k = 0; k < d; ++k) os << ',' << ramsey_population(d, k, phi);
        os << "\n";
    }
    OutputSet files;
    emit(files, path, os.str(), out);
    files.commit();
    return kOk;
}

int cmd_kitaev(int d, int N, double phase, const std::string &digits_text, const std::string &path,
               std::ostream &out) {
    if (d < 2 || N < 1) throw ValidationError("need --d >= 2 and --N >= 1");
    if (!digits_text.empty()) {
        if (static_cast<int>(digits_text.size()) != N) throw ValidationError("--digits must have N entries");
        phase = 0.0;
        double scale = 1.0;
        for (char c : digits_text) {
            int v = c - '0';
            if (v < 0 || v >= d) throw ValidationError("digit outside [0, d)");
            scale /= d;
            phase += v * scale;
        }
    }
    if (!(phase >= 0.0 && phase < 1.0)) throw ValidationError("--phase must lie in [0, 1)");
    auto digits = kitaev_estimate(d, N, exact_phase_oracle(d, kTwoPi * phase));
    double est = 0.0, scale = 1.0;
    for (int v : digits) {
        scale /= d;
        est += v * scale;
    }
    json j;
    j["version"] = 1;
    j["units"] = {{"phase", "fraction of 2pi"}, {"fwhm", "rad"}};
    j["d"] = d;
    j["N"] = N;
    j["phase"] = phase;
    j["digits"] = digits;
    j["estimate"] = est;
    j["fwhm"] = kitaev_fwhm(d, N);
    OutputSet files;
    emit(files, path, j.dump(2), out);
    files.commit();
    return kOk;
}

int cmd_parity(int d, int m, const std::string &perm, const std::string &path, std::ostream &out) {
    if (static_cast<int>(perm.size()) != d) throw ValidationError("--perm must list d images");
    std::vector<int> images;
    for (char c : perm) {
        if (c < '0' || c > '9') throw ValidationError("--perm must be a string of digits");
        images.push_back(c - '0');
    }
    DihedralElement g = DihedralElement::from_images(d, images);
    int outcome = parity_check(d, m, g);
    json j;
    j["version"] = 1;
    j["units"] = json::object();
    j["d"] = d;
    j["m"] = m;
    j["perm"] = perm;
    j["shift"] = g.shift;
    j["reflected"] = g.reflected;
    j["parity"] = g.even() ? "even" : "odd";
    j["outcome"] = outcome;
    OutputSet files;
    emit(files, path, j.dump(2), out);
    files.commit();
    return kOk;
}

// ---- calibrate -----------------------------------------------------------

struct CalibArgs {
    std::string config;
    std::string backend;
    int population = -1;
    int64_t seed = -1;
    std::string out;
    std::string history;
};

CalibParams knobs_from(const json &j, const CalibParams &base, const std::string &where) {
    require_object(j, where, std::set<std::string>(CalibParams::names().begin(), CalibParams::names().end()));
    auto v = base.to_array();
    const auto &names = CalibParams::names();
    for (size_t k = 0; k < CalibParams::kCount; ++k) read_key(j, names[k], v[k], where);
    return CalibParams::from_array(v);
}

int cmd_calibrate(const CalibArgs &a, std::ostream &out) {
    OptimizerConfig opt;
    CalibBounds bounds = CalibBounds::defaults();
    CalibBackend backend;
    CalibParams start;
    bool have_start = false;
    std::vector<std::string> free;
    double alpha_mhz = backend.model.anharmonicity / kTwoPi * 1e3;
    if (!a.config.empty()) {
        json j = parse_json_file(a.config);
        const std::string where = "'" + a.config + "'";
        require_object(j, where, {"seed", "optimizer", "bounds", "free", "start", "backend"});
        read_key(j, "seed", opt.seed, where);
        if (j.contains("optimizer")) {
            const json &o = j["optimizer"];
            const std::string w = "optimizer";
            require_object(o, w,
                           {"population", "mutation1", "crossover1", "mutation2", "crossover2", "phase1_sequences",
                            "phase2_sequences", "phase1_max_iterations", "phase2_max_iterations",
                            "convergence_threshold", "convergence_tolerance", "sequence_length", "truncations"});
            read_key(o, "population", opt.population, w);
            read_key(o, "mutation1", opt.mutation1, w);
            read_key(o, "crossover1", opt.crossover1, w);
            read_key(o, "mutation2", opt.mutation2, w);
            read_key(o, "crossover2", opt.crossover2, w);
            read_key(o, "phase1_sequences", opt.phase1_sequences, w);
            read_key(o, "phase2_sequences", opt.phase2_sequences, w);
            read_key(o, "phase1_max_iterations", opt.phase1_max_iterations, w);
            read_key(o, "phase2_max_iterations", opt.phase2_max_iterations, w);
            read_key(o, "convergence_threshold", opt.convergence_threshold, w);
            read_key(o, "convergence_tolerance", opt.convergence_tolerance, w);
            read_key(o, "sequence_length", opt.sequence_length, w);
            read_key(o, "truncations", opt.truncations, w);
        }
        if (j.contains("bounds")) {
            const json &b = j["bounds"];
            require_object(b, "bounds", {"lower", "upper"});
            if (b.contains("lower")) bounds.lower = knobs_from(b["lower"], bounds.lower, "bounds.lower");
            if (b.contains("upper")) bounds.upper = knobs_from(b["upper"], bounds.upper, "bounds.upper");
        }
        if (j.contains("start")) {
            start = knobs_from(j["start"], start, "start");
            have_start = true;
        }
        read_key(j, "free", free, where);
        if (j.contains("backend")) {
            const json &b = j["backend"];
            require_object(b, "backend", {"kind", "anharmonicity_mhz", "levels", "duration"});
            std::string kind = "ideal";
            read_key(b, "kind", kind, "backend");
            if (kind == "transmon") {
                backend.kind = CalibBackendKind::transmon;
            } else if (kind != "ideal") {
                throw ValidationError("backend.kind must be 'ideal' or 'transmon'");
            }
            read_key(b, "anharmonicity_mhz", alpha_mhz, "backend");
            read_key(b, "levels", backend.model.levels, "backend");
            read_key(b, "duration", backend.duration, "backend");
        }
    }
    if (!a.backend.empty()) {
        if (a.backend == "transmon") {
            backend.kind = CalibBackendKind::transmon;
        } else if (a.backend == "ideal") {
            backend.kind = CalibBackendKind::ideal;
        } else {
            throw ValidationError("--backend must be 'ideal' or 'transmon'");
        }
    }
    backend.model.anharmonicity = kTwoPi * alpha_mhz * 1e-3;
    if (a.population >= 0) opt.population = a.population;
    if (a.seed >= 0) opt.seed = static_cast<uint64_t>(a.seed);
    if (!free.empty()) {
        // Knobs outside `free` are pinned to the start point.
        auto lo = bounds.lower.to_array(), hi = bounds.upper.to_array(), s = start.to_array();
        const auto &names = CalibParams::names();
        for (size_t k = 0; k < CalibParams::kCount; ++k) {
            if (std::find(free.begin(), free.end(), names[k]) == free.end()) lo[k] = hi[k] = s[k];
        }
        for (const auto &f : free) {
            if (std::find_if(names.begin(), names.end(), [&](const char *n) { return f == n; }) == names.end()) {
                throw ValidationError("unknown knob '" + f + "' in free");
            }
        }
        bounds.lower = CalibParams::from_array(lo);
        bounds.upper = CalibParams::from_array(hi);
    }
    opt.validate();
    bounds.validate();

    CalibrationModel model(backend);
    auto objective = [&](const CalibParams &p, const std::vector<SequenceSet> &sets) {
        return model.objective(p, sets);
    };
    std::vector<CalibParams> seeds;
    if (have_start) seeds.push_back(start);
    OptimizationResult res = two_phase_optimize(opt, bounds, objective, seeds);

    OutputSet files;
    if (!a.out.empty()) files.add(a.out, optimization_result_to_json(res) + "\n");
    if (!a.history.empty()) files.add(a.history, csv_preamble("Z:dimensionless") + history_to_csv(res.history));
    files.commit();
    out << "best Z = " << fixed(res.best_z, 6) << " (phase I " << fixed(res.phase1_initial_z, 6) << " -> "
        << fixed(res.phase1_best_z, 6) << ", " << res.phase1_iterations << " + " << res.phase2_iterations
        << " iterations), validation variation = " << fixed(100.0 * res.validation_variation, 3) << "%"
        << (res.improved ? "" : " [no improvement over initialisation]") << "\n";
    return kOk;
}

// ---- fit -----------------------------------------------------------------

T1Trace trace_from_csv(const std::string &path, int init) {
    CsvTable t = read_csv(path);
    T1Trace tr;
    tr.init = init;
    tr.time = t.values(t.column("time"));
    size_t c0 = t.column("P0"), c1 = t.column("P1"), c2 = t.column("P2");
    for (const auto &r : t.rows) tr.populations.push_back({r[c0], r[c1], r[c2]});
    return tr;
}

int cmd_fit_t1(const std::string &trace1, const std::string &trace2, const std::string &path, std::ostream &out) {
    if (trace1.empty() || trace2.empty()) throw ValidationError("fit t1 needs --trace1 and --trace2");
    T1Fit f = fit_t1({trace_from_csv(trace1, 1), trace_from_csv(trace2, 2)});
    json j;
    j["version"] = 1;
    j["units"] = {{"T1", "us"}};
    j["T1_01"] = f.T1_01;
    j["T1_12"] = f.T1_12;
    j["T1_02"] = f.T1_02;
    j["rms"] = f.rms;
    OutputSet files;
    emit(files, path, j.dump(2), out);
    files.commit();
    return kOk;
}

int cmd_fit_t2(const std::string &input, double t1, const std::string &path, std::ostream &out) {
    if (input.empty()) throw ValidationError("fit t2 needs --input");
    CsvTable t = read_csv(input);
    RamseyFit f = fit_t2(t.values(t.column("time")), t.values(t.column("P")), t1);
    json j;
    j["version"] = 1;
    j["units"] = {{"T2", "us"}, {"detuning", "rad/us"}, {"phase", "rad"}};
    j["T2"] = f.params.T2;
    j["n"] = f.params.n;
    j["detuning"] = f.params.detuning;
    j["amplitude"] = f.params.amplitude;
    j["phase"] = f.params.phase;
    j["baseline"] = f.params.baseline;
    j["T1"] = f.params.T1;
    j["rms"] = f.rms;
    OutputSet files;
    emit(files, path, j.dump(2), out);
    files.commit();
    return kOk;
}

int cmd_fit_readout(const std::string &calib_path, const std::string &input, const std::string &path,
                    std::ostream &out, std::ostream &err) {
    if (calib_path.empty() || input.empty()) throw ValidationError("fit readout needs --calib and --input");
    json j = parse_json_file(calib_path);
    require_object(j, "'" + calib_path + "'", {"V", "version", "units"});
    ReadoutCalib calib;
    try {
        auto v = j.at("V").get<std::vector<std::vector<double>>>();
        if (v.size() != 3) throw ValidationError("V must be 3x3");
        for (size_t n = 0; n < 3; ++n) {
            if (v[n].size() != 3) throw ValidationError("V must be 3x3");
            for (size_t k = 0; k < 3; ++k) calib.V[n][k] = v[n][k];
        }
    } catch (const json::exception &) {
        throw ValidationError("'" + calib_path + "' needs a 3x3 numeric array V");
    }
    CsvTable t = read_csv(input);
    size_t ct = t.column("time"), c1 = t.column("V1"), c2 = t.column("V2"), c3 = t.column("V3");
    std::ostringstream os;
    os << csv_preamble("time:us") << "time,P0,P1,P2,projected\n" << std::setprecision(15);
    bool warned = false;
    for (const auto &r : t.rows) {
        ReadoutResult res = populations_from_voltages({r[c1], r[c2], r[c3]}, calib);
        warned = warned || res.ill_conditioned;
        os << r[ct] << ',' << res.populations[0] << ',' << res.populations[1] << ',' << res.populations[2] << ','
           << (res.projected ? 1 : 0) << "\n";
    }
    OutputSet files;
    emit(files, path, os.str(), out);
    files.commit();
    if (warned) err << "warning: readout calibration is ill-conditioned (condition number > 1e6)\n";
    return kOk;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Pulse design, simulation and benchmarking for a superconducting qutrit", "qutrit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "qutrit 0.1.0");

    DesignArgs design;
    auto *c_design = app.add_subcommand("design", "Design a gate pulse and verify it");
    c_design->add_option("gate", design.gate, "h, h-inv, x, x-inv or x02")
        ->required()
        ->check(CLI::IsMember({"h", "h-inv", "x", "x-inv", "x02"}));
    c_design->add_option("--T", design.T, "Gate time in ns")->capture_default_str();
    c_design->add_option("--dt", design.dt, "Sample spacing in ns")->capture_default_str();
    c_design->add_option("--out", design.out, "Schedule JSON output");

    RBArgs rb;
    auto add_rb_options = [](CLI::App *c, RBArgs &a) {
        c->add_option("--config", a.config, "JSON config (lengths, sequences, shots, seed, noise, interleaved_p)");
        c->add_option("--noise", a.noise,
                      "ideal | depolarizing:P | pulse:ETA1,ETA2,ZETA1,ZETA2 | transmon:ALPHA_MHZ "
                      "(default depolarizing:0.9847)");
        c->add_option("--lengths", a.lengths, "Comma-separated sequence lengths");
        c->add_option("--sequences", a.sequences, "Random sequences per length");
        c->add_option("--shots", a.shots, "Shots per sequence (0 = exact)");
        c->add_option("--seed", a.seed, "Random seed");
        c->add_option("--out", a.out, "Result JSON output");
    };
    auto *c_rb = app.add_subcommand("rb", "Standard randomized benchmarking");
    add_rb_options(c_rb, rb);
    RBArgs irb;
    auto *c_irb = app.add_subcommand("irb", "Interleaved randomized benchmarking");
    add_rb_options(c_irb, irb);
    c_irb->add_option("--gate", irb.gate, "Interleaved gate name or Clifford index")->required();
    c_irb->add_option("--interleaved-p", irb.interleaved_p,
                      "Depolarizing parameter of the interleaved gate (depolarizing noise only)");

    int r_d = 3, r_points = 200;
    std::string r_out;
    auto *c_ramsey = app.add_subcommand("ramsey", "Qudit Ramsey populations over one phase period (CSV)");
    c_ramsey->add_option("--d", r_d, "Qudit dimension")->capture_default_str();
    c_ramsey->add_option("--points", r_points, "Number of phase samples")->capture_default_str();
    c_ramsey->add_option("--out", r_out, "CSV output (default stdout)");

    int k_d = 3, k_n = 4;
    double k_phase = 0.0;
    std::string k_digits, k_out;
    auto *c_kitaev = app.add_subcommand("kitaev", "Base-d iterative phase estimation (JSON)");
    c_kitaev->add_option("--d", k_d, "Qudit dimension")->capture_default_str();
    c_kitaev->add_option("--N", k_n, "Number of digits")->capture_default_str();
    auto *k_phase_opt = c_kitaev->add_option("--phase", k_phase, "Phase as a fraction of 2pi in [0, 1)");
    c_kitaev->add_option("--digits", k_digits, "Phase given by its base-d digits, e.g. 1021")->excludes(k_phase_opt);
    c_kitaev->add_option("--out", k_out, "JSON output (default stdout)");

    int p_d = 3, p_m = 1;
    std::string p_perm, p_out;
    auto *c_parity = app.add_subcommand("parity", "Dihedral parity check (JSON)");
    c_parity->add_option("--d", p_d, "Qudit dimension")->capture_default_str();
    c_parity->add_option("--m", p_m, "Input basis state, gcd(m, d) = 1")->capture_default_str();
    c_parity->add_option("--perm", p_perm, "Permutation images, e.g. 43210")->required();
    c_parity->add_option("--out", p_out, "JSON output (default stdout)");

    CalibArgs calib;
    auto *c_calib = app.add_subcommand("calibrate", "Two-phase evolutionary calibration on simulated RB");
    c_calib->add_option("--config", calib.config, "JSON config (seed, optimizer, bounds, free, start, backend)");
    c_calib->add_option("--backend", calib.backend, "ideal or transmon");
    c_calib->add_option("--population", calib.population, "Population size");
    c_calib->add_option("--seed", calib.seed, "Random seed");
    c_calib->add_option("--out", calib.out, "Result JSON output");
    c_calib->add_option("--history", calib.history, "History CSV output");

    auto *c_fit = app.add_subcommand("fit", "Device characterisation fits");
    c_fit->require_subcommand(1);
    std::string t1_a, t1_b, t1_out;
    auto *c_t1 = c_fit->add_subcommand("t1", "Joint T1 fit of traces prepared in |1> and |2>");
    c_t1->add_option("--trace1", t1_a, "CSV time,P0,P1,P2 after preparing |1>")->required();
    c_t1->add_option("--trace2", t1_b, "CSV time,P0,P1,P2 after preparing |2>")->required();
    c_t1->add_option("--out", t1_out, "JSON output (default stdout)");
    std::string t2_in, t2_out;
    double t2_t1 = 60.7;
    auto *c_t2 = c_fit->add_subcommand("t2", "Stretched-exponential Ramsey fit");
    c_t2->add_option("--input", t2_in, "CSV time,P")->required();
    c_t2->add_option("--T1", t2_t1, "Relaxation time of the background in us")->capture_default_str();
    c_t2->add_option("--out", t2_out, "JSON output (default stdout)");
    std::string ro_calib, ro_in, ro_out;
    auto *c_ro = c_fit->add_subcommand("readout", "Voltage to population inversion");
    c_ro->add_option("--calib", ro_calib, "JSON with 3x3 reference voltages V[n][j]")->required();
    c_ro->add_option("--input", ro_in, "CSV time,V1,V2,V3")->required();
    c_ro->add_option("--out", ro_out, "CSV output (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (c_design->parsed()) return cmd_design(design, out);
        if (c_rb->parsed()) return cmd_rb(rb, out);
        if (c_irb->parsed()) return cmd_irb(irb, out);
        if (c_ramsey->parsed()) return cmd_ramsey(r_d, r_points, r_out, out);
        if (c_kitaev->parsed()) return cmd_kitaev(k_d, k_n, k_phase, k_digits, k_out, out);
        if (c_parity->parsed()) return cmd_parity(p_d, p_m, p_perm, p_out, out);
        if (c_calib->parsed()) return cmd_calibrate(calib, out);
        if (c_t1->parsed()) return cmd_fit_t1(t1_a, t1_b, t1_out, out);
        if (c_t2->parsed()) return cmd_fit_t2(t2_in, t2_t1, t2_out, out);
        if (c_ro->parsed()) return cmd_fit_readout(ro_calib, ro_in, ro_out, out, err);
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const NumericalError &e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    } catch (const IoError &e) {
        err << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kNumerical;
    }
    err << "error: no command given\n";
    return kUsage;
}

}  // namespace qutrit::cli
