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

#include <gtest/gtest.h>

#include <random>

#include "qutrit/device.hpp"

namespace qutrit {
namespace {

// Independent RK4 integration of the cascaded rate equations.
Populations rk4_rates(Populations p, const DeviceParams &d, double t, int steps = 20000) {
    auto f = [&](const Populations &q) {
        double g2 = 1.0 / d.T1_12 + 1.0 / d.T1_02;
        return Populations{q[1] / d.T1_01 + q[2] / d.T1_02, q[2] / d.T1_12 - q[1] / d.T1_01, -g2 * q[2]};
    };
    const double h = t / steps;
    for (int s = 0; s < steps; ++s) {
        auto add = [](const Populations &a, const Populations &b, double c) {
            return Populations{a[0] + c * b[0], a[1] + c * b[1], a[2] + c * b[2]};
        };
        Populations k1 = f(p), k2 = f(add(p, k1, h / 2)), k3 = f(add(p, k2, h / 2)), k4 = f(add(p, k3, h));
        for (int i = 0; i < 3; ++i) p[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    return p;
}

std::vector<T1Trace> synthetic_t1(const DeviceParams &d, double noise, unsigned seed, int points = 60,
                                  double span = 236.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, noise);
    std::vector<T1Trace> out;
    for (int init : {1, 2}) {
        T1Trace tr;
        tr.init = init;
        Populations p0{0, 0, 0};
        p0[static_cast<size_t>(init)] = 1.0;
        for (int k = 0; k < points; ++k) {
            double t = span * k / (points - 1);
            Populations p = rate_equation_evolve(p0, d, t);
            if (noise > 0) {
                for (double &x : p) x += g(rng);
            }
            tr.time.push_back(t);
            tr.populations.push_back(p);
        }
        out.push_back(tr);
    }
    return out;
}

TEST(DeviceParams, ReferenceAndValidation) {
    DeviceParams d = DeviceParams::reference();
    EXPECT_NO_THROW(d.validate());
    EXPECT_DOUBLE_EQ(d.T1_01, 60.7);
    EXPECT_DOUBLE_EQ(d.T1_12, 28.4);
    EXPECT_DOUBLE_EQ(d.T1_02, 523.1);
    EXPECT_DOUBLE_EQ(d.T2_01, 4.6);
    d.T1_12 = 0.0;
    EXPECT_THROW(d.validate(), ValidationError);
    d = DeviceParams::reference();
    d.T2_02 = -1.0;
    EXPECT_THROW(d.validate(), ValidationError);
}

TEST(RateEquations, ClosedFormExamples) {
    DeviceParams d = DeviceParams::reference();
    for (double t : {0.0, 5.0, 60.7, 300.0}) {
        Populations p = rate_equation_evolve({0, 1, 0}, d, t);
        EXPECT_NEAR(p[1], std::exp(-t / d.T1_01), 1e-14);
        EXPECT_NEAR(p[2], 0.0, 1e-15);
    }
    Populations p = rate_equation_evolve({0, 0, 1}, d, 28.4);
    EXPECT_NEAR(p[2], std::exp(-(1 / 28.4 + 1 / 523.1) * 28.4), 1e-14);
    EXPECT_NEAR(p[2], 0.3484, 1e-4);
    Populations inf = rate_equation_evolve({0, 0, 1}, d, 1e5);
    EXPECT_NEAR(inf[0], 1.0, 1e-12);
    EXPECT_NEAR(inf[1], 0.0, 1e-12);
    EXPECT_NEAR(inf[2], 0.0, 1e-12);
}

TEST(RateEquations, MatchesNumericalIntegration) {
    DeviceParams d = DeviceParams::reference();
    for (Populations p0 : {Populations{0, 0, 1}, Populations{0.2, 0.5, 0.3}, Populations{0, 1, 0}}) {
        for (double t : {3.0, 30.0, 150.0}) {
            Populations a = rate_equation_evolve(p0, d, t);
            Populations b = rk4_rates(p0, d, t);
            for (int i = 0; i < 3; ++i) EXPECT_NEAR(a[static_cast<size_t>(i)], b[static_cast<size_t>(i)], 1e-10);
        }
    }
}

TEST(RateEquations, ConservationPositivityAndDegenerateRates) {
    DeviceParams d = DeviceParams::reference();
    // Equal decay constants make the closed form degenerate.
    DeviceParams eq = d;
    eq.T1_12 = 1.0 / (1.0 / eq.T1_01 - 1.0 / eq.T1_02);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        double a = u(rng), b = u(rng) * (1 - a);
        Populations p0{a, b, 1 - a - b};
        double t = 400.0 * u(rng);
        for (const DeviceParams &dp : {d, eq}) {
            Populations p = rate_equation_evolve(p0, dp, t);
            EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 4e-16);
            for (double x : p) EXPECT_GE(x, -1e-15);
        }
        Populations pe = rate_equation_evolve(p0, eq, t);
        Populations re = rk4_rates(p0, eq, t, 4000);
        for (int i = 0; i < 3; ++i) EXPECT_NEAR(pe[static_cast<size_t>(i)], re[static_cast<size_t>(i)], 1e-9);
    }
    EXPECT_THROW(rate_equation_evolve({0.5, 0.6, 0}, d, 1.0), ValidationError);
    EXPECT_THROW(rate_equation_evolve({-0.1, 1.1, 0}, d, 1.0), ValidationError);
    EXPECT_THROW(rate_equation_evolve({0, 1, 0}, d, -1.0), ValidationError);
}

TEST(FitT1, NoiselessRoundTrip) {
    DeviceParams d = DeviceParams::reference();
    T1Fit f = fit_t1(synthetic_t1(d, 0.0, 0));
    EXPECT_NEAR(f.T1_01, 60.7, 0.01 * 60.7);
    EXPECT_NEAR(f.T1_12, 28.4, 0.01 * 28.4);
    EXPECT_NEAR(f.T1_02, 523.1, 0.01 * 523.1);
    EXPECT_LT(f.rms, 1e-6);
}

TEST(FitT1, NoisyRoundTrip) {
    DeviceParams d = DeviceParams::reference();
    // The weak direct 2->0 channel needs dense sampling: with 1% noise its
    // time constant has a Cramer-Rao spread near 1.2% on this grid.
    for (unsigned seed = 1; seed <= 5; ++seed) {
        T1Fit f = fit_t1(synthetic_t1(d, 0.01, seed, 1500, 150.0));
        EXPECT_NEAR(f.T1_01, 60.7, 0.05 * 60.7) << seed;
        EXPECT_NEAR(f.T1_12, 28.4, 0.05 * 28.4) << seed;
        EXPECT_NEAR(f.T1_02, 523.1, 0.05 * 523.1) << seed;
        EXPECT_NEAR(f.rms, 0.01, 0.003);
    }
}

TEST(FitT1, DegenerateInputs) {
    auto traces = synthetic_t1(DeviceParams::reference(), 0.0, 0);
    auto flat = traces;
    for (auto &tr : flat) {
        for (auto &p : tr.populations) {
            p = Populations{0, 0, 0};
            p[static_cast<size_t>(tr.init)] = 1.0;
        }
    }
    EXPECT_THROW(fit_t1(flat), NumericalError);
    auto short_trace = traces;
    short_trace[0].time.resize(9);
    short_trace[0].populations.resize(9);
    EXPECT_THROW(fit_t1(short_trace), ValidationError);
}

std::vector<double> grid(double t_end, int n) {
    std::vector<double> t;
    for (int k = 0; k < n; ++k) t.push_back(t_end * k / (n - 1));
    return t;
}

TEST(FitT2, NoiselessRoundTrip) {
    for (double t2 : {4.6, 4.4, 4.2}) {
        RamseyParams p;
        p.amplitude = 0.45;
        p.detuning = kTwoPi * 1.0;
        p.phase = 0.1;
        p.T2 = t2;
        p.n = 1.0;
        p.baseline = 0.5;
        p.T1 = 60.7;
        auto t = grid(15.0, 301);
        std::vector<double> s;
        for (double x : t) s.push_back(ramsey_model(x, p));
        RamseyFit f = fit_t2(t, s, 60.7);
        EXPECT_NEAR(f.params.T2, t2, 0.02 * t2);
        EXPECT_NEAR(f.params.n, 1.0, 0.05);
        EXPECT_NEAR(f.params.detuning, p.detuning, 1e-3);
        EXPECT_LT(f.rms, 1e-6);
    }
}

TEST(FitT2, StretchedExponentAndNoise) {
    RamseyParams p;
    p.amplitude = 0.4;
    p.detuning = kTwoPi * 0.8;
    p.T2 = 5.0;
    p.n = 1.6;
    p.T1 = 28.4;
    auto t = grid(15.0, 301);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 0.005);
    std::vector<double> s;
    for (double x : t) s.push_back(ramsey_model(x, p) + g(rng));
    RamseyFit f = fit_t2(t, s, 28.4);
    EXPECT_NEAR(f.params.T2, 5.0, 0.1);
    EXPECT_NEAR(f.params.n, 1.6, 0.1);
}

TEST(FitT2, RejectsTracesWithoutFringes) {
    RamseyParams p;
    p.detuning = 0.0;
    p.T2 = 4.6;
    p.T1 = 60.7;
    auto t = grid(15.0, 301);
    std::vector<double> s;
    for (double x : t) s.push_back(ramsey_model(x, p));
    EXPECT_THROW(fit_t2(t, s, 60.7), NumericalError);
    EXPECT_THROW(fit_t2(grid(15.0, 10), std::vector<double>(10, 0.5), 60.7), ValidationError);
}

TEST(RamseyModel, Formula) {
    RamseyParams p;
    p.amplitude = 0.3;
    p.detuning = 2.0;
    p.phase = 0.4;
    p.T2 = 3.0;
    p.n = 2.0;
    p.baseline = 0.2;
    p.T1 = 50.0;
    double t = 1.7;
    double expect = 0.3 * std::cos(2.0 * t + 0.4) * std::exp(-std::pow(t / 3.0, 2)) + 0.2 * std::exp(-t / 50.0);
    EXPECT_NEAR(ramsey_model(t, p), expect, 1e-15);
}

ReadoutCalib sample_calib() {
    ReadoutCalib c;
    c.V = {{{1.0, 0.2, -0.3}, {0.1, 0.9, 0.4}, {-0.2, 0.3, 1.1}}};
    return c;
}

TEST(Readout, PureRowsAndMixtures) {
    ReadoutCalib c = sample_calib();
    for (int n = 0; n < 3; ++n) {
        ReadoutResult r = populations_from_voltages(c.V[static_cast<size_t>(n)], c);
        for (int k = 0; k < 3; ++k) EXPECT_NEAR(r.populations[static_cast<size_t>(k)], n == k ? 1.0 : 0.0, 1e-12);
        EXPECT_FALSE(r.ill_conditioned);
    }
    std::array<double, 3> mix{};
    for (int j = 0; j < 3; ++j) mix[static_cast<size_t>(j)] = 0.5 * (c.V[0][static_cast<size_t>(j)] + c.V[2][static_cast<size_t>(j)]);
    ReadoutResult r = populations_from_voltages(mix, c);
    EXPECT_NEAR(r.populations[0], 0.5, 1e-12);
    EXPECT_NEAR(r.populations[1], 0.0, 1e-12);
    EXPECT_NEAR(r.populations[2], 0.5, 1e-12);
    EXPECT_FALSE(r.projected);
}

TEST(Readout, ForwardInverseRoundTripOnInterior) {
    ReadoutCalib c = sample_calib();
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        double a = u(rng), b = u(rng), e = u(rng), s = a + b + e;
        Populations p{a / s, b / s, e / s};
        ReadoutResult r = populations_from_voltages(voltages_from_populations(p, c), c);
        for (int k = 0; k < 3; ++k) EXPECT_NEAR(r.populations[static_cast<size_t>(k)], p[static_cast<size_t>(k)], 1e-10);
    }
}

TEST(Readout, ProjectionAndConditioning) {
    ReadoutCalib c = sample_calib();
    // Voltages of an unphysical population vector get projected.
    auto v = voltages_from_populations({1.2, -0.1, -0.1}, c);
    ReadoutResult r = populations_from_voltages(v, c);
    EXPECT_TRUE(r.projected);
    double sum = 0.0;
    for (double x : r.populations) {
        EXPECT_GE(x, -1e-12);
        EXPECT_LE(x, 1.0 + 1e-12);
        sum += x;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
    EXPECT_GT(r.populations[0], 0.9);

    ReadoutCalib ill;
    ill.V = {{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {1.0, 1e-8, 1e-8}}};
    ReadoutResult ri = populations_from_voltages(ill.V[0], ill);
    EXPECT_TRUE(ri.ill_conditioned);
    EXPECT_GT(ri.condition_number, 1e6);

    ReadoutCalib singular;
    singular.V = {{{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}}};
    EXPECT_THROW(populations_from_voltages({1, 0, 0}, singular), ValidationError);
}

}  // namespace
}  // namespace qutrit
