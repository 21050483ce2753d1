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

#include "qutrit/pulse_schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace qutrit {

namespace {

constexpr const char *kScheduleVersion = "1";

template <typename T>
bool all_finite(const std::vector<T> &v) {
    return std::all_of(v.begin(), v.end(), [](const T &x) {
        if constexpr (std::is_same_v<T, cplx>) {
            return std::isfinite(x.real()) && std::isfinite(x.imag());
        } else {
            return std::isfinite(x);
        }
    });
}

std::vector<double> read_array(const nlohmann::json &j, const char *key) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw ValidationError(std::string("schedule JSON missing array '") + key + "'");
    }
    return j.at(key).get<std::vector<double>>();
}

}  // namespace

size_t sample_count(double duration, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ValidationError("time step must be positive and finite");
    }
    if (!(duration > 0.0) || !std::isfinite(duration)) {
        throw ValidationError("duration must be positive and finite");
    }
    double steps = std::round(duration / dt);
    if (steps < 1.0) {
        throw ValidationError("time step exceeds duration");
    }
    return static_cast<size_t>(steps) + 1;
}

PulseSchedule PulseSchedule::zeros(double duration, double dt) {
    size_t n = sample_count(duration, dt);
    PulseSchedule s;
    s.duration = duration;
    s.dt = duration / static_cast<double>(n - 1);
    s.omega1.assign(n, cplx{});
    s.omega2.assign(n, cplx{});
    s.detuning.assign(n, 0.0);
    return s;
}

void PulseSchedule::validate(bool require_zero_ends, double end_tol) const {
    if (!(dt > 0.0) || !(duration > 0.0)) {
        throw ValidationError("schedule dt and duration must be positive");
    }
    size_t n = detuning.size();
    if (omega1.size() != n || omega2.size() != n) {
        throw ValidationError("schedule tracks have different lengths");
    }
    if (n < 2) {
        throw ValidationError("schedule needs at least two samples");
    }
    if (std::abs(static_cast<double>(n - 1) * dt - duration) > 1e-9 * std::max(1.0, duration)) {
        throw ValidationError("schedule sample count does not match duration/dt");
    }
    if (!all_finite(omega1) || !all_finite(omega2) || !all_finite(detuning)) {
        throw ValidationError("schedule contains non-finite samples");
    }
    if (require_zero_ends) {
        double ends = std::max({std::abs(omega1.front()), std::abs(omega1.back()),
                                std::abs(omega2.front()), std::abs(omega2.back())});
        if (ends > end_tol) {
            throw ValidationError("drive envelopes must start and end at zero");
        }
    }
}

bool PulseSchedule::is_real(double tol) const {
    for (size_t k = 0; k < omega1.size(); ++k) {
        if (std::abs(omega1[k].imag()) > tol || std::abs(omega2[k].imag()) > tol) {
            return false;
        }
    }
    return true;
}

void PulseSchedule::sample(double t, cplx &o1, cplx &o2, double &delta) const {
    const size_t n = size();
    double x = std::clamp(t / dt, 0.0, static_cast<double>(n - 1));
    size_t k = std::min(static_cast<size_t>(x), n - 2);
    double w = x - static_cast<double>(k);
    o1 = omega1[k] + w * (omega1[k + 1] - omega1[k]);
    o2 = omega2[k] + w * (omega2[k + 1] - omega2[k]);
    delta = detuning[k] + w * (detuning[k + 1] - detuning[k]);
}

double PulseSchedule::detuning_integral(double t) const {
    const size_t n = size();
    double x = std::clamp(t / dt, 0.0, static_cast<double>(n - 1));
    size_t k = std::min(static_cast<size_t>(x), n - 2);
    double acc = 0.0;
    for (size_t j = 0; j < k; ++j) {
        acc += 0.5 * (detuning[j] + detuning[j + 1]) * dt;
    }
    double w = x - static_cast<double>(k);
    double end = detuning[k] + w * (detuning[k + 1] - detuning[k]);
    acc += 0.5 * (detuning[k] + end) * w * dt;
    return acc;
}

std::vector<double> PulseSchedule::omega1_real() const {
    std::vector<double> out(omega1.size());
    std::transform(omega1.begin(), omega1.end(), out.begin(), [](cplx c) { return c.real(); });
    return out;
}

std::vector<double> PulseSchedule::omega2_real() const {
    std::vector<double> out(omega2.size());
    std::transform(omega2.begin(), omega2.end(), out.begin(), [](cplx c) { return c.real(); });
    return out;
}

std::string PulseSchedule::to_json() const {
    nlohmann::json j;
    j["version"] = kScheduleVersion;
    j["units"] = {{"time", "ns"}, {"omega", "rad/ns"}, {"detuning", "rad/ns"}};
    j["dt"] = dt;
    j["duration"] = duration;
    j["omega1"] = omega1_real();
    j["omega2"] = omega2_real();
    j["detuning"] = detuning;
    auto imag = [](const std::vector<cplx> &v) {
        std::vector<double> out(v.size());
        std::transform(v.begin(), v.end(), out.begin(), [](cplx c) { return c.imag(); });
        return out;
    };
    if (!is_real()) {
        j["omega1_imag"] = imag(omega1);
        j["omega2_imag"] = imag(omega2);
    }
    return j.dump(1);
}

PulseSchedule PulseSchedule::from_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("schedule JSON parse error: ") + e.what());
    }
    PulseSchedule s;
    try {
        s.dt = j.at("dt").get<double>();
        s.duration = j.at("duration").get<double>();
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("schedule JSON missing dt/duration: ") + e.what());
    }
    auto o1 = read_array(j, "omega1");
    auto o2 = read_array(j, "omega2");
    s.detuning = read_array(j, "detuning");
    std::vector<double> i1(o1.size(), 0.0), i2(o2.size(), 0.0);
    if (j.contains("omega1_imag")) i1 = read_array(j, "omega1_imag");
    if (j.contains("omega2_imag")) i2 = read_array(j, "omega2_imag");
    if (i1.size() != o1.size() || i2.size() != o2.size()) {
        throw ValidationError("schedule quadrature arrays have wrong length");
    }
    s.omega1.resize(o1.size());
    s.omega2.resize(o2.size());
    for (size_t k = 0; k < o1.size(); ++k) s.omega1[k] = {o1[k], i1[k]};
    for (size_t k = 0; k < o2.size(); ++k) s.omega2[k] = {o2[k], i2[k]};
    s.validate(false);
    return s;
}

double trapezoid(std::span<const double> y, double dt) {
    if (y.size() < 2) return 0.0;
    double acc = 0.5 * (y.front() + y.back());
    for (size_t k = 1; k + 1 < y.size(); ++k) acc += y[k];
    return acc * dt;
}

PulseSchedule time_reversed(const PulseSchedule &s) {
    PulseSchedule r = s;
    std::reverse(r.omega1.begin(), r.omega1.end());
    std::reverse(r.omega2.begin(), r.omega2.end());
    std::reverse(r.detuning.begin(), r.detuning.end());
    return r;
}

}  // namespace qutrit
