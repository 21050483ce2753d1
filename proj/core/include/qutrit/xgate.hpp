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

#include <string>
#include <utility>

#include "qutrit/linalg.hpp"
#include "qutrit/pulse_schedule.hpp"

namespace qutrit {

/// X-type gates reachable with the invariant-based two-tone design.
enum class XKind { X, X_inverse, X02 };

std::string to_string(XKind kind);
XKind xkind_from_string(const std::string &name);

/// Parameters of one invariant-based design.
struct LRDesign {
    double lambda = 0.0;
    double duration = 0.0;
    double theta_target = 0.0;
    XKind kind = XKind::X;
};

/// Permutation matrices |k> -> |k+1 mod 3>, its inverse, and the single
/// swaps on {0,1}, {1,2}, {0,2}.
Matrix x_gate();
Matrix x_inverse_gate();
Matrix x01_gate();
Matrix x12_gate();
Matrix x02_gate();
Matrix x_target(XKind kind);

/// LR phase that realises each kind: -3pi/2 for X and X^-1, -pi for X02.
double theta_for_kind(XKind kind);

/// gamma = lambda s^3 (1-s)^3 and the degree-11 beta ramp from 0 to pi/2,
/// with s = t/T. Throws ValidationError for t outside [0, T].
std::pair<double, double> gamma_beta(double t, double lambda, double duration);

double gamma_dot(double t, double lambda, double duration);

/// (1386 pi / T) [s(1-s)]^5.
double beta_dot(double t, double duration);

/// theta = -int_0^T beta_dot / sin(gamma) dt, evaluated on s in [0, 1] by
/// adaptive Simpson quadrature. Independent of T.
double lr_phase(double lambda, double duration = 1.0);

/// Bisection for lr_phase(lambda) = theta_target on lambda in [20, 60].
double solve_lambda(double theta_target);

/// Builds a design for `kind` at gate time T with lambda solved from the
/// kind's LR phase.
LRDesign make_lr_design(XKind kind, double duration);

/// Drive envelopes obtained by inverting the auxiliary equations:
///   Omega1 = 2 (gamma' cos beta + beta' cot gamma sin beta)
///   Omega2 = 2 (-gamma' sin beta + beta' cot gamma cos beta)
/// with zero detuning. The X schedule is the time reverse of the X^-1 one.
PulseSchedule rabi_from_invariant(const LRDesign &design, double dt);

/// Evaluates the two envelopes of the (non-reversed) design at time t.
std::pair<double, double> invariant_rabi(double t, double lambda, double duration);

/// Ideal propagator at the end of an invariant-based design.
UnitaryMatrix evolution_from_theta(double theta);

/// Diagonal D with D * U_design equal to the kind's permutation target up to
/// a global phase, where U_design is the ideal propagator of the design.
UnitaryMatrix residual_phase_correction(XKind kind);

/// Generic version: for a propagator `u` whose support matches the
/// permutation `target`, returns the diagonal phase D with D u ~ target.
Matrix diagonal_correction(const Matrix &u, const Matrix &target);

/// Resonant sine-squared pi pulse on one transition (1 for 0<->1, 2 for
/// 1<->2). Used for the single-swap gates X01 and X12.
PulseSchedule pi_pulse_schedule(int transition, double duration, double dt);

}  // namespace qutrit
