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
#include <string>
#include <vector>

#include "qutrit/linalg.hpp"

namespace qutrit {

using Populations = std::array<double, 3>;

/// Per-transition device characterisation. Frequencies in GHz, times in us.
struct DeviceParams {
    double f01 = 0.0, f12 = 0.0, f02 = 0.0;
    double T1_01 = 0.0, T1_12 = 0.0, T1_02 = 0.0;
    double T2_01 = 0.0, T2_12 = 0.0, T2_02 = 0.0;
    double n01 = 1.0, n12 = 1.0, n02 = 1.0;  ///< stretch exponents

    void validate() const;
    /// Reference transmon used throughout the examples and tests.
    static DeviceParams reference();
};

/// Cascaded relaxation from |p0> for t microseconds:
///   dP2/dt = -(1/T1_12 + 1/T1_02) P2
///   dP1/dt = P2/T1_12 - P1/T1_01
///   dP0/dt = P1/T1_01 + P2/T1_02
/// Solved in closed form; P0 is set to 1 - P1 - P2 so the sum is exact.
Populations rate_equation_evolve(const Populations &p0, const DeviceParams &params, double t);

/// Population trace after preparing |init> (1 or 2).
struct T1Trace {
    int init = 1;
    std::vector<double> time;  ///< us
    std::vector<Populations> populations;
};

struct T1Fit {
    double T1_01 = 0.0, T1_12 = 0.0, T1_02 = 0.0;
    double rms = 0.0;
};

/// Joint least-squares fit of the rate equations to traces prepared in |1>
/// and |2>. Each trace needs at least 10 points. Throws NumericalError on a
/// trace without decay or a fit that does not converge.
T1Fit fit_t1(const std::vector<T1Trace> &traces);

/// Ramsey fringe parameters.
struct RamseyParams {
    double amplitude = 0.5;
    double detuning = 0.0;  ///< rad/us
    double phase = 0.0;
    double T2 = 1.0;        ///< us
    double n = 1.0;         ///< stretch exponent
    double baseline = 0.5;  ///< amplitude of the relaxation background
    double T1 = 1e300;      ///< us, fixed (known from the T1 fit)
};

/// a cos(dw t + phi0) exp(-(t/T2)^n) + b exp(-t/T1).
double ramsey_model(double t, const RamseyParams &p);

struct RamseyFit {
    RamseyParams params;
    double rms = 0.0;
};

/// Fits T2, n and the fringe parameters to a Ramsey trace with the
/// relaxation background time constant `T1` held fixed. The trace must span
/// at least three fringe periods; otherwise NumericalError.
RamseyFit fit_t2(const std::vector<double> &time, const std::vector<double> &signal, double T1);

/// Reference voltages V[n][j] for prepared state n at frequency point j.
struct ReadoutCalib {
    std::array<std::array<double, 3>, 3> V{};
};

struct ReadoutResult {
    Populations populations{};
    double condition_number = 0.0;
    bool ill_conditioned = false;  ///< condition number above 1e6
    bool projected = false;        ///< raw solution left the simplex
};

/// Solves V_j = sum_n P_n V[n][j]; when the raw solution leaves [0,1]^3 or
/// misses sum P = 1 by more than 1e-6, returns the constrained least-squares
/// solution on the probability simplex instead.
ReadoutResult populations_from_voltages(const std::array<double, 3> &v, const ReadoutCalib &calib);

/// Forward model: voltages produced by populations p.
std::array<double, 3> voltages_from_populations(const Populations &p, const ReadoutCalib &calib);

}  // namespace qutrit
