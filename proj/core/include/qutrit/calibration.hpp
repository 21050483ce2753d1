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

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qutrit/benchmarking.hpp"
#include "qutrit/propagator.hpp"
#include "qutrit/pulse_schedule.hpp"

namespace qutrit {

/// Experimental gate knobs. Amplitude and chirp factors are dimensionless
/// (identity 1), frequency corrections are in rad/ns, DRAG coefficients are
/// dimensionless and virtual phases are in rad.
struct CalibParams {
    double A_x1 = 1.0, A_x2 = 1.0;
    double D_x1 = 0.0, D_x2 = 0.0;
    double lambda_x1 = 0.0, lambda_x2 = 0.0;
    double A_h1 = 1.0, A_h2 = 1.0;
    double B_h1 = 1.0, B_h2 = 1.0;
    double phi_h1 = 0.0, phi_h2 = 0.0;
    double phi_x1 = 0.0, phi_x2 = 0.0, phi_x3 = 0.0, phi_x4 = 0.0;

    static constexpr size_t kCount = 16;
    static const std::array<const char *, kCount> &names();

    std::array<double, kCount> to_array() const;
    static CalibParams from_array(const std::array<double, kCount> &v);
    bool operator==(const CalibParams &o) const { return to_array() == o.to_array(); }
};

struct CalibBounds {
    CalibParams lower;
    CalibParams upper;

    /// Throws ValidationError for non-finite or inverted bounds.
    void validate() const;
    bool contains(const CalibParams &p) const;
    /// A, B in [0.9, 1.1]; frequency corrections within 2 pi x 2 MHz;
    /// DRAG in [-1, 1]; virtual phases within 0.2 rad.
    static CalibBounds defaults();
    /// Bounds that pin every knob to `p` except the listed ones, which get
    /// [p - half_width, p + half_width].
    static CalibBounds around(const CalibParams &p, const std::vector<std::string> &free,
                              const std::vector<double> &half_width);
};

/// Tone-wise DRAG-style rendering of an X-family schedule: tone i becomes
/// (A_i Omega_i + i lambda_i A_i Omega_i'/alpha) e^{i D_i t}. Identity knobs
/// return the base samples unchanged. Throws ValidationError when alpha = 0
/// with a nonzero lambda.
PulseSchedule render_x_pulses(const CalibParams &params, const PulseSchedule &base,
                              double anharmonicity);

/// Rendering of a chirped H schedule: tone amplitudes scale with A_h1, A_h2
/// and the chirp with B_h1 A_h1, so the chirp stays locked to the rendered
/// tone-1 amplitude (base ratio 0.6581). A chirp mismatch B_h2 != B_h1
/// becomes a phase ramp (B_h1 - B_h2) int Delta_base dt on tone 2.
PulseSchedule render_h_pulses(const CalibParams &params, const PulseSchedule &base);

/// One random Clifford sequence probed at several truncation lengths; each
/// truncation is closed by its inverting element.
struct SequenceSet {
    std::vector<size_t> cliffords;
    std::vector<int> truncations;
};

/// `count` independent sets of `length` random Cliffords.
std::vector<SequenceSet> make_sequence_sets(int count, uint64_t seed, int length = 50,
                                            const std::vector<int> &truncations = {1, 2, 5, 10,
                                                                                  20, 35, 50});

enum class CalibBackendKind { ideal, transmon };

struct CalibBackend {
    CalibBackendKind kind = CalibBackendKind::ideal;
    TransmonModel model;  ///< anharmonicity also sets the DRAG scale for the ideal backend
    double duration = 35.0;
    double schedule_dt = 0.05;
    SimConfig sim{0.02, Integrator::magnus4, Frame::two_photon_rotating};
    SimConfig transmon_sim{0.01, Integrator::magnus4, Frame::multilevel_transmon};
};

/// Decay fit used by the objective: A p^x + 1/3 with the asymptote pinned to
/// the fully mixed value, which stays well conditioned for nearly flat data.
struct ObjectiveFit {
    double A = 0.0;
    double p = 0.0;
    double residual = 0.0;  ///< rms
};
ObjectiveFit fit_objective_decay(const std::vector<int> &lengths,
                                 const std::vector<double> &survival);

/// Renders and simulates the seven physical gates for given knobs and
/// evaluates the RB objective. Simulated pulse blocks are cached by the knob
/// values they depend on, so thread-safe repeated calls are cheap when only
/// virtual phases change.
class CalibrationModel {
  public:
    explicit CalibrationModel(CalibBackend backend = {});

    const CalibBackend &backend() const { return backend_; }

    /// Physical gate operators: P(phi_post) left U(rendered) right P(phi_pre)
    /// with P(a, b) = diag(1, e^{ia}, e^{ib}). X-family gates use
    /// (phi_x1, phi_x2) before and (phi_x3, phi_x4) after; H gates use
    /// (phi_h1, phi_h2) after.
    NativeGates native_gates(const CalibParams &params) const;

    /// Survival of every truncation of one set.
    std::vector<double> survival(const CalibParams &params, const SequenceSet &set) const;

    /// Z = mean over sets of (0.3 eps - p_fit). Throws NumericalError if a
    /// fit fails.
    double objective(const CalibParams &params, const std::vector<SequenceSet> &sets) const;

    /// Per-set terms 0.3 eps - p_fit.
    std::vector<double> set_scores(const CalibParams &params,
                                   const std::vector<SequenceSet> &sets) const;

    size_t cache_size() const;

  private:
    Matrix simulate(size_t kind, const CalibParams &params) const;

    CalibBackend backend_;
    std::array<NativePulse, 7> base_;
    mutable std::mutex mutex_;
    mutable std::map<std::vector<double>, Matrix> cache_;
};

/// Convenience wrapper around CalibrationModel::objective.
double rb_objective(const CalibParams &params, const std::vector<SequenceSet> &sets,
                    const CalibrationModel &model);

struct OptimizerConfig {
    int population = 40;
    double mutation1 = 0.8;
    double crossover1 = 0.9;
    double mutation2 = 0.4;
    double crossover2 = 0.5;
    int phase1_sequences = 5;
    int phase2_sequences = 6;
    int phase1_max_iterations = 40;
    int phase2_max_iterations = 15;
    /// Stop a phase once this fraction of the population is within
    /// convergence_tolerance (relative) of the best fitness.
    double convergence_threshold = 0.88;
    double convergence_tolerance = 0.01;
    int sequence_length = 50;
    std::vector<int> truncations{1, 2, 5, 10, 20, 35, 50};
    uint64_t seed = 1;

    void validate() const;
};

struct HistoryEntry {
    int iteration = 0;
    int phase = 1;
    double best = 0.0;
    double mean = 0.0;
    double spread = 0.0;  ///< standard deviation of population fitness
    int population = 0;
};

struct OptimizationResult {
    CalibParams best;
    double best_z = 0.0;            ///< on the Phase II sets
    double phase1_initial_z = 0.0;  ///< best of the initial population
    double phase1_best_z = 0.0;
    int phase1_iterations = 0;
    int phase2_iterations = 0;
    bool phase1_converged = false;
    bool improved = false;  ///< false flags a run that never beat its initialisation
    std::vector<HistoryEntry> history;
    std::vector<CalibParams> final_population;
    std::vector<double> validation_scores;  ///< per Phase II set, at `best`
    /// (max - min) of validation_scores relative to |phase1_best_z|.
    double validation_variation = 0.0;
};

using CalibObjective =
    std::function<double(const CalibParams &, const std::vector<SequenceSet> &)>;

/// Two-phase differential evolution (rand/1/bin) with Latin hypercube
/// initialisation. Phase II continues from the Phase I population on fresh
/// sequence sets with the lower rates. `seeds` replace the first members of
/// the initial population (clamped into bounds). Candidates whose objective
/// throws get +infinity.
OptimizationResult two_phase_optimize(const OptimizerConfig &cfg, const CalibBounds &bounds,
                                      const CalibObjective &objective,
                                      const std::vector<CalibParams> &seeds = {});

/// CSV "iteration,phase,best_Z,mean_Z,population_spread".
std::string history_to_csv(const std::vector<HistoryEntry> &history);
std::string calib_params_to_json(const CalibParams &p);
CalibParams calib_params_from_json(const std::string &text);
std::string optimization_result_to_json(const OptimizationResult &res);

}  // namespace qutrit
