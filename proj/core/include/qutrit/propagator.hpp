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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qutrit/linalg.hpp"
#include "qutrit/pulse_schedule.hpp"

namespace qutrit {

enum class Integrator {
    piecewise_expm,  ///< exp of the midpoint Hamiltonian per step (2nd order).
    magnus4,         ///< Two-point Gauss-Legendre Magnus expansion (4th order).
    rk4,             ///< Classical Runge-Kutta on dU/dt = -i H U; not exactly unitary.
};

enum class Frame { two_photon_rotating, multilevel_transmon };

struct SimConfig {
    double dt = 0.02;
    Integrator method = Integrator::magnus4;
    Frame frame = Frame::two_photon_rotating;
};

Integrator integrator_from_string(const std::string &name);

/// Systematic control errors: fractional amplitude errors eta and detuning
/// errors delta_k = 2 pi zeta_k / T on the two tones.
struct ErrorKnobs {
    double eta1 = 0.0;
    double eta2 = 0.0;
    double zeta1 = 0.0;
    double zeta2 = 0.0;

    void validate() const;
    bool is_zero() const { return eta1 == 0 && eta2 == 0 && zeta1 == 0 && zeta2 == 0; }
};

/// Time-ordered propagator of a Hamiltonian callable over [0, T]. The
/// callable fills a dim x dim Hermitian matrix for time t. If `on_step` is
/// set it is called after every step with (t_end, U_so_far).
using HamiltonianFn = std::function<void(double t, Matrix &h)>;
Matrix propagate(const HamiltonianFn &hamiltonian, int dim, double duration,
                 const SimConfig &cfg,
                 const std::function<void(double, const Matrix &)> &on_step = {});

/// Instantaneous 3-level Hamiltonian of a schedule with error knobs:
/// Delta|1><1| + (Omega1 (1+eta1) e^{i d1 t}|0><1| + Omega2 (1+eta2)
/// e^{-i d2 t}|1><2| + h.c.)/2.
Matrix schedule_hamiltonian(const PulseSchedule &s, const ErrorKnobs &knobs, double t);

/// Propagator of a schedule in the two-photon rotating frame.
UnitaryMatrix evolve(const PulseSchedule &s, const ErrorKnobs &knobs = {},
                     const SimConfig &cfg = {});

struct Trajectory {
    std::vector<double> time;
    std::vector<std::array<double, 3>> populations;

    /// CSV with header "time_ns,P0,P1,P2".
    std::string to_csv() const;
};

Trajectory population_trajectory(const PulseSchedule &s, int initial_state,
                                 const SimConfig &cfg = {});

enum class RobustGate { X, X02 };

/// Fidelity grids of an X-type gate (after its residual phase correction)
/// under amplitude errors (eta1 = grid[i], eta2 = grid[j]) and detuning
/// errors (zeta1 = grid[i], zeta2 = grid[j]).
struct RobustnessScan {
    std::vector<double> eta_grid;
    std::vector<double> zeta_grid;
    std::vector<std::vector<double>> amplitude;  ///< [i][j] over eta_grid.
    std::vector<std::vector<double>> detuning;   ///< [i][j] over zeta_grid.
    double nominal = 0.0;                        ///< Fidelity at zero error.
};

RobustnessScan robustness_scan(RobustGate gate, const std::vector<double> &eta_grid,
                               const std::vector<double> &zeta_grid, const SimConfig &cfg = {},
                               double duration = 35.0, double schedule_dt = 0.05);

/// Weakly anharmonic ladder with energies n w01 + n(n-1)/2 alpha.
struct TransmonModel {
    int levels = 4;
    double omega01 = kTwoPi * 4.993;       ///< rad/ns
    double anharmonicity = kTwoPi * -0.2;  ///< rad/ns, negative for a transmon

    void validate() const;
    double level_energy(int n) const;
    /// Matrix element of the drive between n and n+1 relative to 0<->1.
    static double coupling(int n);
};

/// First-order DRAG quadrature added to each tone: Omega + i lambda Omega'/alpha.
struct DragParams {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};

/// Adds DRAG quadratures using central differences of the real envelopes.
/// Throws ValidationError when alpha = 0 with a nonzero coefficient.
PulseSchedule apply_drag(const PulseSchedule &s, const DragParams &drag, double anharmonicity);

struct TransmonResult {
    Matrix propagator;  ///< levels x levels
    Matrix block;       ///< computational 3x3 block
    double leakage = 0.0;
};

/// Propagates the schedule on the multi-level ladder. Each tone sits in its
/// own rotating frame (tone 1 on 0<->1, tone 2 on 1<->2, both following the
/// chirp) and couples every neighbouring transition with sqrt(n+1)
/// elements; counter-rotating terms are dropped.
TransmonResult transmon_evolve(const PulseSchedule &s, const TransmonModel &model,
                               const std::optional<DragParams> &drag = std::nullopt,
                               const SimConfig &cfg = {0.01, Integrator::magnus4,
                                                      Frame::multilevel_transmon});

/// Multi-level Hamiltonian at time t, exposed for tests.
Matrix transmon_hamiltonian(const PulseSchedule &s, const TransmonModel &model, double t,
                            double detuning_integral);

struct CoherentError {
    double fidelity = 0.0;
    double error = 0.0;    ///< 1 - fidelity
    double leakage = 0.0;  ///< 1 - Tr(M^dag M)/3
};

/// Fidelity of a (possibly leaky) computational block against a unitary
/// reference after the best diagonal phase frame change on the output.
CoherentError coherent_error(const Matrix &block, const Matrix &reference);

enum class ScanAxis { anharmonicity, gate_time };
enum class DesignGate { H, X };

struct CoherentScanOptions {
    double fixed_duration = 35.0;             ///< ns, for the anharmonicity axis
    double fixed_anharmonicity_mhz = -200.0;  ///< alpha/2pi, for the gate-time axis
    int levels = 4;
    double schedule_dt = 0.05;
    SimConfig sim{0.01, Integrator::magnus4, Frame::multilevel_transmon};
};

/// Design schedule for H (chirped) or X (invariant-based) at gate time T.
PulseSchedule design_schedule(DesignGate gate, double duration, double dt);

/// Coherent error of the uncalibrated gate on the transmon ladder relative
/// to the ideal three-level evolution of the same schedule. `values` are
/// |alpha|/2pi in MHz for the anharmonicity axis or T in ns for gate time.
std::vector<CoherentError> coherent_error_scan(ScanAxis axis, const std::vector<double> &values,
                                               DesignGate gate,
                                               const CoherentScanOptions &opt = {});

}  // namespace qutrit
