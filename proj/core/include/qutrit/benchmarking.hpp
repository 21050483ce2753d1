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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qutrit/clifford.hpp"
#include "qutrit/device.hpp"
#include "qutrit/linalg.hpp"
#include "qutrit/propagator.hpp"

namespace qutrit {

struct IdealNoise {};
/// rho -> p rho + (1 - p) Tr(rho) I/3 after every Clifford.
struct DepolarizingNoise {
    double p = 1.0;
};
/// Physical gates replaced by simulated pulse propagators with control errors.
struct PulseNoise {
    ErrorKnobs knobs;
    double duration = 35.0;
    SimConfig sim;
};
/// Physical gates replaced by the computational block of the transmon model.
struct TransmonNoise {
    TransmonModel model;
    double duration = 35.0;
};
using NoiseModel = std::variant<IdealNoise, DepolarizingNoise, PulseNoise, TransmonNoise>;

/// Parses "ideal", "depolarizing:P", "pulse:ETA1,ETA2,ZETA1,ZETA2" or
/// "transmon:ALPHA_MHZ".
NoiseModel parse_noise(const std::string &text);
std::string describe_noise(const NoiseModel &noise);

struct RBConfig {
    std::vector<int> lengths{1, 5, 10, 20, 35, 50, 75, 100};
    int n_sequences = 30;
    /// Projective shots per sequence; 0 = exact survival probabilities.
    /// Unset means 200 for unitary noise models and exact propagation for
    /// the depolarizing channel.
    std::optional<int> shots;
    uint64_t seed = 1;
    NoiseModel noise = IdealNoise{};
    /// Clifford interleaved after every random element (IRB).
    std::optional<size_t> interleaved;
    /// Depolarizing parameter of the interleaved gate under depolarizing
    /// noise; 1 means the interleaved gate itself is error-free.
    double interleaved_p = 1.0;

    void validate() const;
    int effective_shots() const;
};

/// Random Clifford indices followed by the inverting element. With an
/// interleaved gate g the sequence is c1 g c2 g ... cm g c_inv.
std::vector<size_t> rb_sequence(int m, uint64_t seed, std::optional<size_t> interleaved = {});

/// Draws the same m random Cliffords as rb_sequence for (m, seed).
std::vector<size_t> random_cliffords(int m, uint64_t seed);

struct SurvivalPoint {
    int length = 0;
    double mean = 0.0;
    double stddev = 0.0;
};

struct DecayFit {
    double A = 0.0;
    double p = 0.0;
    double B = 0.0;
    double residual = 0.0;  ///< rms
    double p_stderr = 0.0;
};

/// Least-squares fit of A p^x + B. Needs at least three distinct lengths;
/// throws NumericalError for data without decay.
DecayFit fit_decay(const std::vector<SurvivalPoint> &points);

struct RBResult {
    std::vector<SurvivalPoint> points;
    std::optional<DecayFit> fit;
    std::string fit_error;  ///< set when the fit failed
    double r = 0.0;         ///< error per Clifford from the fit
};

/// Executes RB sequences on a 3x3 density matrix. Sequences for different
/// (length, sample) pairs are seeded independently and run in parallel.
RBResult run_rb(const RBConfig &cfg);

struct IRBResult {
    RBResult reference;
    RBResult interleaved;
    double r_gate = 0.0;
};

/// Runs reference and interleaved RB on the same random sequences.
IRBResult run_irb(const RBConfig &cfg, size_t gate);

/// (1 - p)(1 - 1/3).
double clifford_error(double p);
/// (1 - p_gate/p_ref)(1 - 1/3); negative when p_gate > p_ref.
double irb_error(double p_gate, double p_ref);

/// (2/T2_01 + 2/T2_12 + 2/T2_02 + 1/T1_01 + 1/T1_12) tau / 12, tau in ns.
double incoherent_error_estimate(const DeviceParams &device, double tau_ns);

/// 3x3 operators of the seven physical gates, indexed by GateKind.
using NativeGates = std::array<Matrix, 7>;

NativeGates ideal_native_gates();

/// Pulse recipe of one physical gate: the realised gate is
/// left * U(schedule) * right, with the diagonal phases fixed from the ideal
/// three-level design and applied virtually.
struct NativePulse {
    PulseSchedule schedule;
    Matrix left;
    Matrix right;
};
NativePulse native_pulse(GateKind kind, double duration, double dt = 0.05);

/// Operators of the physical gates as realised by simulated pulses under a
/// pulse or transmon noise model, each followed by its ideal-design phase
/// correction.
NativeGates simulated_native_gates(const NoiseModel &noise);

/// Operator of each Clifford element built from its native word, using
/// `natives` for physical gates and exact virtual phases.
std::vector<Matrix> clifford_operators_from_native(const NativeGates &natives);

/// Noisy 3x3 operator of each Clifford element under a unitary noise
/// model (pulse or transmon); ideal matrices for the other models.
std::vector<Matrix> clifford_operators(const NoiseModel &noise);

/// Population of |0> after executing the sequence on |0><0|. `step_p`
/// holds the depolarizing parameter applied after each element (empty =
/// none).
double sequence_survival(const std::vector<size_t> &sequence, const std::vector<Matrix> &ops,
                         const std::vector<double> &step_p = {});

std::string rb_result_to_json(const RBConfig &cfg, const RBResult &res);

}  // namespace qutrit
