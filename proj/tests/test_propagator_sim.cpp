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

#include <cmath>
#include <random>

#include "qutrit/hgate.hpp"
#include "qutrit/propagator.hpp"
#include "qutrit/pulse_schedule.hpp"
#include "qutrit/xgate.hpp"
#include "support.hpp"

namespace qutrit {
namespace {

using testing::parity_swap;
using testing::taylor_expm;

PulseSchedule h_schedule() { return chirped_h_schedule(35.0, 0.05); }
PulseSchedule x_schedule(XKind kind = XKind::X) {
    return rabi_from_invariant(make_lr_design(kind, 35.0), 0.05);
}

double unitarity_defect(const Matrix &u) {
    return max_abs_diff(Matrix(u.adjoint() * u), Matrix::Identity(u.cols(), u.cols()));
}

// Smooth two-tone drive with a linear chirp, sampled coarsely so the
// integrator error dominates over nothing else.
PulseSchedule smooth_test_schedule() {
    PulseSchedule s = PulseSchedule::zeros(20.0, 0.5);
    for (size_t k = 0; k < s.size(); ++k) {
        double t = s.time(k);
        double env = std::pow(std::sin(kPi * t / 20.0), 2);
        s.omega1[k] = 0.4 * env;
        s.omega2[k] = cplx(0.3 * env, 0.1 * env);
        s.detuning[k] = 0.05 * (t - 10.0);
    }
    return s;
}

TEST(Evolve, ZeroScheduleIsIdentity) {
    PulseSchedule s = PulseSchedule::zeros(10.0, 0.05);
    EXPECT_LT(max_abs_diff(evolve(s).matrix(), Matrix::Identity(3, 3)), 1e-15);
}

TEST(Evolve, ConstantDriveMatchesSeriesExponential) {
    PulseSchedule s = PulseSchedule::zeros(3.0, 0.1);
    for (size_t k = 0; k < s.size(); ++k) {
        s.omega1[k] = 0.9;
        s.omega2[k] = 0.6;
        s.detuning[k] = -0.4;
    }
    Matrix oracle = taylor_expm(lambda_hamiltonian(0.9, 0.6, -0.4), 3.0);
    for (Integrator m : {Integrator::piecewise_expm, Integrator::magnus4}) {
        EXPECT_LT(max_abs_diff(evolve(s, {}, {0.1, m}).matrix(), oracle), 1e-12);
    }
}

TEST(Evolve, UnitaryAndDeterministic) {
    for (const PulseSchedule &s : {h_schedule(), x_schedule(), x_schedule(XKind::X02)}) {
        for (Integrator m : {Integrator::piecewise_expm, Integrator::magnus4}) {
            Matrix a = evolve(s, {}, {0.02, m}).matrix();
            Matrix b = evolve(s, {}, {0.02, m}).matrix();
            EXPECT_LT(unitarity_defect(a), 1e-9);
            EXPECT_EQ(max_abs_diff(a, b), 0.0);
        }
        Matrix r = evolve(s, {}, {0.02, Integrator::rk4}).matrix();
        EXPECT_LT(unitarity_defect(r), 1e-6);
    }
}

TEST(Evolve, DefaultStepConverges) {
    for (const PulseSchedule &s : {h_schedule(), x_schedule(), x_schedule(XKind::X02)}) {
        Matrix coarse = evolve(s, {}, {0.02}).matrix();
        Matrix fine = evolve(s, {}, {0.01}).matrix();
        EXPECT_LT(max_abs_diff(coarse, fine), 1e-8);
    }
}

TEST(Evolve, KnobsAlsoStayUnitary) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-0.15, 0.15);
    PulseSchedule s = x_schedule();
    for (int trial = 0; trial < 20; ++trial) {
        ErrorKnobs k{u(rng), u(rng), u(rng), u(rng)};
        EXPECT_LT(unitarity_defect(evolve(s, k).matrix()), 1e-9);
    }
}

double convergence_ratio(Integrator method) {
    PulseSchedule s = smooth_test_schedule();
    Matrix ref = evolve(s, {}, {0.5 / 64, Integrator::magnus4}).matrix();
    double e1 = max_abs_diff(evolve(s, {}, {0.25, method}).matrix(), ref);
    double e2 = max_abs_diff(evolve(s, {}, {0.125, method}).matrix(), ref);
    return e1 / e2;
}

TEST(Evolve, RungeKuttaIsFourthOrder) {
    double ratio = convergence_ratio(Integrator::rk4);
    EXPECT_GT(ratio, 12.0);
    EXPECT_LT(ratio, 20.0);
}

TEST(Evolve, MidpointExponentialIsSecondOrder) {
    double ratio = convergence_ratio(Integrator::piecewise_expm);
    EXPECT_GT(ratio, 3.0);
    EXPECT_LT(ratio, 5.0);
}

TEST(Evolve, MagnusIsFourthOrder) {
    double ratio = convergence_ratio(Integrator::magnus4);
    EXPECT_GT(ratio, 12.0);
    EXPECT_LT(ratio, 20.0);
}

TEST(Evolve, RejectsCoarseStepAndWrongFrame) {
    PulseSchedule s = x_schedule();
    EXPECT_THROW(evolve(s, {}, {0.1}), ValidationError);
    EXPECT_THROW(evolve(s, {}, {0.0}), ValidationError);
    EXPECT_THROW(evolve(s, {}, {0.02, Integrator::magnus4, Frame::multilevel_transmon}), ValidationError);
    EXPECT_THROW(evolve(s, ErrorKnobs{0.6, 0, 0, 0}), ValidationError);
}

TEST(Evolve, DesignedGatesReachTargets) {
    auto [left, right] = h_phase_gates(solve_h_conditions());
    EXPECT_GE(average_gate_fidelity(Matrix(left * evolve(h_schedule()).matrix() * right), hadamard3()),
              0.9999);
    Matrix x = residual_phase_correction(XKind::X).matrix() * evolve(x_schedule()).matrix();
    EXPECT_GE(average_gate_fidelity(x, x_gate()), 0.9999);
}

TEST(IntegratorNames, Parse) {
    EXPECT_EQ(integrator_from_string("rk4"), Integrator::rk4);
    EXPECT_EQ(integrator_from_string("magnus4"), Integrator::magnus4);
    EXPECT_EQ(integrator_from_string("piecewise_expm"), Integrator::piecewise_expm);
    EXPECT_THROW(integrator_from_string("euler"), ValidationError);
}

TEST(ScheduleHamiltonian, MatchesDefinitionWithKnobs) {
    PulseSchedule s = smooth_test_schedule();
    ErrorKnobs k{0.1, -0.05, 0.2, -0.3};
    const double t = 7.0;  // a sample point, so no interpolation
    size_t idx = 14;
    Matrix h = schedule_hamiltonian(s, k, t);
    cplx e01 = 0.5 * s.omega1[idx] * 1.1 * std::exp(cplx(0, kTwoPi * 0.2 / 20.0 * t));
    cplx e12 = 0.5 * s.omega2[idx] * 0.95 * std::exp(cplx(0, -kTwoPi * -0.3 / 20.0 * t));
    EXPECT_NEAR(std::abs(h(0, 1) - e01), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(h(1, 2) - e12), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(h(1, 1) - s.detuning[idx]), 0.0, 1e-15);
    EXPECT_EQ(h(0, 2), cplx(0.0));
    EXPECT_LT(max_abs_diff(h, Matrix(h.adjoint())), 1e-15);
}

TEST(Trajectory, ProbabilityConservedAndHadamardEndpoint) {
    Trajectory tr = population_trajectory(h_schedule(), 0);
    EXPECT_EQ(tr.time.size(), tr.populations.size());
    for (const auto &p : tr.populations) EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-9);
    for (double p : tr.populations.back()) EXPECT_NEAR(p, 1.0 / 3.0, 1e-3);
    EXPECT_NEAR(tr.time.back(), 35.0, 1e-12);
}

TEST(Trajectory, HadamardTrajectoriesMirror) {
    Trajectory a = population_trajectory(h_schedule(), 0);
    Trajectory b = population_trajectory(h_schedule(), 2);
    ASSERT_EQ(a.populations.size(), b.populations.size());
    double worst = 0.0;
    for (size_t k = 0; k < a.populations.size(); ++k) {
        worst = std::max({worst, std::abs(a.populations[k][0] - b.populations[k][2]),
                          std::abs(a.populations[k][1] - b.populations[k][1]),
                          std::abs(a.populations[k][2] - b.populations[k][0])});
    }
    EXPECT_LT(worst, 1e-6);
}

TEST(Trajectory, CyclicShiftMovesZeroToOne) {
    auto p = population_trajectory(x_schedule(), 0).populations.back();
    EXPECT_NEAR(p[0], 0.0, 1e-3);
    EXPECT_NEAR(p[1], 1.0, 1e-3);
    EXPECT_NEAR(p[2], 0.0, 1e-3);
}

TEST(Trajectory, EndpointsMatchGateColumns) {
    PulseSchedule s = x_schedule(XKind::X02);
    Matrix u = evolve(s).matrix();
    for (int init = 0; init < 3; ++init) {
        auto p = population_trajectory(s, init).populations.back();
        for (int r = 0; r < 3; ++r) EXPECT_NEAR(p[r], std::norm(u(r, init)), 1e-12);
    }
}

TEST(Trajectory, CsvAndValidation) {
    Trajectory tr = population_trajectory(x_schedule(), 1);
    std::string csv = tr.to_csv();
    EXPECT_EQ(csv.rfind("time_ns,P0,P1,P2\n", 0), 0u);
    EXPECT_EQ(static_cast<size_t>(std::count(csv.begin(), csv.end(), '\n')), tr.time.size() + 1);
    EXPECT_THROW(population_trajectory(x_schedule(), 3), ValidationError);
    EXPECT_THROW(population_trajectory(x_schedule(), -1), ValidationError);
}

TEST(ParityTime, ReversedScheduleIsParityConjugate) {
    Matrix p = parity_swap();
    for (XKind kind : {XKind::X, XKind::X_inverse, XKind::X02}) {
        PulseSchedule s = x_schedule(kind);
        Matrix u = evolve(s).matrix();
        Matrix ur = evolve(time_reversed(s)).matrix();
        EXPECT_LT(max_abs_diff(ur, Matrix(p * u * p)), 1e-8) << to_string(kind);
        // Real symmetric generators: reversing time transposes the propagator.
        EXPECT_LT(max_abs_diff(ur, Matrix(u.transpose())), 1e-8) << to_string(kind);
    }
}

class RobustnessTest : public ::testing::Test {
  protected:
    static void SetUpTestSuite() {
        std::vector<double> grid;
        for (int k = -3; k <= 3; ++k) grid.push_back(0.05 * k);
        x_ = new RobustnessScan(robustness_scan(RobustGate::X, grid, grid));
        x02_ = new RobustnessScan(robustness_scan(RobustGate::X02, grid, grid));
    }
    static void TearDownTestSuite() {
        delete x_;
        delete x02_;
    }
    static RobustnessScan *x_;
    static RobustnessScan *x02_;
};
RobustnessScan *RobustnessTest::x_ = nullptr;
RobustnessScan *RobustnessTest::x02_ = nullptr;

TEST_F(RobustnessTest, NominalIsBest) {
    for (const RobustnessScan *s : {x_, x02_}) {
        EXPECT_GE(s->nominal, 0.9999);
        for (const auto &grid : {s->amplitude, s->detuning}) {
            for (const auto &row : grid) {
                for (double f : row) EXPECT_LE(f, s->nominal + 1e-6);
            }
        }
        // Grid centre reproduces the nominal value.
        EXPECT_NEAR(s->amplitude[3][3], s->nominal, 1e-15);
        EXPECT_NEAR(s->detuning[3][3], s->nominal, 1e-15);
    }
}

TEST_F(RobustnessTest, CentralRegionAndCorners) {
    for (const RobustnessScan *s : {x_, x02_}) {
        for (size_t i = 2; i <= 4; ++i) {
            for (size_t j = 2; j <= 4; ++j) EXPECT_GE(s->amplitude[i][j], 0.99);
        }
        EXPECT_GE(s->amplitude[6][6], 0.95);
    }
}

TEST_F(RobustnessTest, SwapGateSymmetricUnderToneExchange) {
    for (size_t i = 0; i < 7; ++i) {
        for (size_t j = 0; j < 7; ++j) {
            EXPECT_NEAR(x02_->amplitude[i][j], x02_->amplitude[j][i], 1e-6);
        }
    }
}

TEST(Transmon, ModelValidationAndLadder) {
    TransmonModel m;
    EXPECT_NO_THROW(m.validate());
    EXPECT_NEAR(m.level_energy(0), 0.0, 0.0);
    EXPECT_NEAR(m.level_energy(1), m.omega01, 1e-15);
    EXPECT_NEAR(m.level_energy(3), 3 * m.omega01 + 3 * m.anharmonicity, 1e-12);
    EXPECT_NEAR(TransmonModel::coupling(0), 1.0, 0.0);
    EXPECT_NEAR(TransmonModel::coupling(2), std::sqrt(3.0), 1e-15);
    m.levels = 3;
    EXPECT_THROW(m.validate(), ValidationError);
    EXPECT_THROW(transmon_evolve(x_schedule(), m), ValidationError);
}

TEST(Transmon, HamiltonianIsHermitian) {
    TransmonModel m;
    m.levels = 5;
    PulseSchedule s = apply_drag(h_schedule(), {0.4, -0.3}, m.anharmonicity);
    for (double t : {0.0, 3.3, 17.5, 30.0}) {
        Matrix h = transmon_hamiltonian(s, m, t, s.detuning_integral(t));
        EXPECT_EQ(h.rows(), 5);
        EXPECT_LT(max_abs_diff(h, Matrix(h.adjoint())), 1e-15);
    }
}

TEST(Transmon, DecouplingLimitRecoversThreeLevelResult) {
    TransmonModel m;
    m.anharmonicity = -kTwoPi * 2.0;
    for (const PulseSchedule &s : {h_schedule(), x_schedule()}) {
        Matrix ideal = evolve(s).matrix();
        TransmonResult r = transmon_evolve(s, m);
        EXPECT_EQ(r.propagator.rows(), 4);
        EXPECT_LT(unitarity_defect(r.propagator), 1e-9);
        EXPECT_GE(coherent_error(r.block, ideal).fidelity, 1 - 1e-3);
    }
}

TEST(Transmon, HadamardErrorBelowShiftErrorAndLeakageSmall) {
    TransmonModel m;
    auto err = [&](const PulseSchedule &s) { return coherent_error(transmon_evolve(s, m).block, evolve(s).matrix()); };
    CoherentError h = err(h_schedule()), x = err(x_schedule());
    EXPECT_LT(h.error, x.error);
    EXPECT_LT(h.leakage, 0.1 * h.error);
    EXPECT_LT(x.leakage, 0.1 * x.error);
}

TEST(Transmon, DragQuadrature) {
    PulseSchedule s = x_schedule();
    PulseSchedule same = apply_drag(s, {}, -1.2);
    for (size_t k = 0; k < s.size(); ++k) EXPECT_EQ(same.omega1[k], s.omega1[k]);
    EXPECT_THROW(apply_drag(s, {0.5, 0.0}, 0.0), ValidationError);

    PulseSchedule d = apply_drag(s, {0.5, -0.25}, -1.2);
    for (size_t k = 1; k + 1 < s.size(); ++k) {
        double deriv1 = (s.omega1[k + 1].real() - s.omega1[k - 1].real()) / (2 * s.dt);
        double deriv2 = (s.omega2[k + 1].real() - s.omega2[k - 1].real()) / (2 * s.dt);
        EXPECT_NEAR(d.omega1[k].imag(), 0.5 * deriv1 / -1.2, 1e-12);
        EXPECT_NEAR(d.omega2[k].imag(), -0.25 * deriv2 / -1.2, 1e-12);
        EXPECT_EQ(d.omega1[k].real(), s.omega1[k].real());
    }
}

TEST(CoherentError, UnitaryAndLeakyBlocks) {
    Matrix x = x_gate();
    std::vector<double> phases{0.3, -1.0, 2.0};
    CoherentError e = coherent_error(Matrix(diagonal_phase(phases) * x), x);
    EXPECT_NEAR(e.fidelity, 1.0, 1e-14);
    EXPECT_NEAR(e.leakage, 0.0, 1e-14);
    CoherentError l = coherent_error(Matrix(0.9 * x), x);
    EXPECT_NEAR(l.leakage, 1 - 0.81, 1e-14);
    EXPECT_NEAR(l.fidelity, (0.81 * 9 + 0.81 * 3) / 12, 1e-14);
    EXPECT_THROW(coherent_error(Matrix::Identity(4, 4), x), ValidationError);
}

// Each step may rise by at most 10% of the previous value.
void expect_non_increasing(const std::vector<double> &v, const char *what) {
    for (size_t k = 1; k < v.size(); ++k) EXPECT_LE(v[k], 1.1 * v[k - 1]) << what << " step " << k;
    EXPECT_LT(v.back(), v.front()) << what;
}

TEST(CoherentScan, TrendsAndOrdering) {
    const std::vector<double> alphas{150, 200, 300, 400};
    const std::vector<double> times{25, 35, 50, 70};
    for (auto [axis, values] : {std::pair{ScanAxis::anharmonicity, alphas}, std::pair{ScanAxis::gate_time, times}}) {
        auto h = coherent_error_scan(axis, values, DesignGate::H);
        auto x = coherent_error_scan(axis, values, DesignGate::X);
        for (const auto *series : {&h, &x}) {
            std::vector<double> err, leak;
            for (const auto &e : *series) {
                err.push_back(e.error);
                leak.push_back(e.leakage);
            }
            expect_non_increasing(err, "error");
            expect_non_increasing(leak, "leakage");
        }
        for (size_t k = 0; k < values.size(); ++k) EXPECT_LE(h[k].error, x[k].error);
    }
    EXPECT_THROW(coherent_error_scan(ScanAxis::gate_time, {35, 25}, DesignGate::X), ValidationError);
}

}  // namespace
}  // namespace qutrit
