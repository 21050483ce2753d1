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

#include "qutrit/linalg.hpp"
#include "qutrit/pulse_schedule.hpp"

namespace qutrit {

/// Reduced parameters of a constant-drive qutrit Hadamard.
struct HGateSolution {
    double A = 0.0;        ///< Pulse area Omega*T.
    double delta = 0.0;    ///< Half phase Delta*T/2, carries the sign.
    double theta = 0.0;    ///< Mixing angle, tan(theta) = Omega1/Omega2.
    double omega1_T = 0.0;
    double omega2_T = 0.0;
    double delta_T = 0.0;  ///< Signed; positive for H, negative for H^-1.
    int sign = +1;
};

/// The qutrit Hadamard (discrete Fourier transform on three levels).
Matrix hadamard3();

/// Generator H = Delta|1><1| + (Omega1|0><1| + Omega2|1><2| + h.c.)/2 for
/// constant real parameters (any consistent time unit).
Matrix lambda_hamiltonian(double omega1, double omega2, double delta);

/// Closed-form propagator of the constant-drive Hamiltonian over unit time,
/// with arguments given as pulse areas.
UnitaryMatrix propagator_constant(double omega1_T, double omega2_T, double delta_T);

/// Left-hand sides of the two equal-modulus conditions at (A, delta):
/// first is delta^2 - (A/2)^2 (1 - 2/(3 sin^2(A/2))), second is
/// cos(A/2) cos(delta) + (2 delta/A) sin(A/2) sin(delta).
std::pair<double, double> h_condition_residuals(double A, double delta);

/// Smallest-area solution of the equal-modulus conditions. `sign` = +1 gives
/// the positive-detuning branch realising H, -1 the branch realising H^-1.
HGateSolution solve_h_conditions(int sign = +1);

/// Diagonal phase gates (left, right) that turn the constant-drive
/// propagator into H (sign +1) or H^-1 (sign -1).
std::pair<Matrix, Matrix> h_phase_gates(const HGateSolution &sol);

/// left * U * right.
UnitaryMatrix h_phase_sandwich(const UnitaryMatrix &u, const HGateSolution &sol);

struct ChirpOptions {
    double edge = 5.0;            ///< Rise/fall time in ns.
    double sigma_fraction = 0.5;  ///< Gaussian sigma as a fraction of `edge`.
    int sign = +1;
};

/// Unit-height flat-top envelope with truncated Gaussian edges, evaluated
/// at time t. The edge is shifted so it reaches 0 at t = 0 and t = T.
double flat_top_envelope(double t, double duration, double edge, double sigma);

/// Chirped Hadamard schedule: Omega1 = Omega2 share the flat-top envelope,
/// scaled so its trapezoidal area equals the constant-drive pulse area, and
/// the detuning follows the same envelope with the solved Delta/Omega ratio.
PulseSchedule chirped_h_schedule(double duration, double dt, const ChirpOptions &opt = {});

}  // namespace qutrit
