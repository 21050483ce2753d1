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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qutrit/linalg.hpp"

namespace qutrit {

/// Uniformly sampled drive envelopes in the two-photon rotating frame.
///
/// Sample k sits at time k * dt and the last sample at `duration`. Envelopes
/// are complex so DRAG quadratures and phase ramps can be carried; designs
/// from the analytic modules are purely real. Units: rad/ns and ns.
struct PulseSchedule {
    double dt = 0.0;
    double duration = 0.0;
    std::vector<cplx> omega1;
    std::vector<cplx> omega2;
    std::vector<double> detuning;

    /// All-zero schedule with round(T/dt)+1 samples. The stored step is
    /// adjusted to T / round(T/dt) so the final sample lands exactly on T.
    static PulseSchedule zeros(double duration, double dt);

    size_t size() const { return detuning.size(); }
    double time(size_t k) const { return static_cast<double>(k) * dt; }

    /// Throws ValidationError on mismatched track lengths, nonpositive dt,
    /// non-finite samples, or (when `require_zero_ends`) drive envelopes
    /// that do not start and end at zero within `end_tol`.
    void validate(bool require_zero_ends = true, double end_tol = 1e-9) const;

    bool is_real(double tol = 0.0) const;

    /// Linear interpolation of the three tracks at time t in [0, duration].
    void sample(double t, cplx &o1, cplx &o2, double &delta) const;

    /// Integral of the linearly interpolated detuning from 0 to t.
    double detuning_integral(double t) const;

    std::vector<double> omega1_real() const;
    std::vector<double> omega2_real() const;

    /// JSON object {version, units, dt, duration, omega1[], omega2[],
    /// detuning[]} plus omega1_imag[] / omega2_imag[] when an envelope has a
    /// nonzero quadrature.
    std::string to_json() const;
    static PulseSchedule from_json(const std::string &text);
};

/// Number of samples on [0, T] with step dt: round(T/dt) + 1.
size_t sample_count(double duration, double dt);

/// Trapezoidal integral of uniformly spaced samples.
double trapezoid(std::span<const double> y, double dt);

/// Time-reversed copy: sample k becomes sample n-1-k.
PulseSchedule time_reversed(const PulseSchedule &s);

}  // namespace qutrit
