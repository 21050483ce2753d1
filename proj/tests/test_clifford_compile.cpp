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

#include <map>
#include <random>
#include <set>

#include "qutrit/benchmarking.hpp"
#include "qutrit/clifford.hpp"
#include "qutrit/hgate.hpp"
#include "qutrit/propagator.hpp"
#include "qutrit/xgate.hpp"
#include "json.hpp"
#include "support.hpp"

namespace qutrit {
namespace {

using testing::phase_overlap;

const cplx kOmega = std::exp(cplx(0, kTwoPi / 3));

bool is_physical(GateKind k) { return k != GateKind::VirtualPhase; }

TEST(Pauli, GeneratorRelations) {
    auto [x, z] = pauli_generators();
    Matrix i3 = Matrix::Identity(3, 3);
    EXPECT_LT(max_abs_diff(Matrix(x * x * x), i3), 1e-15);
    EXPECT_LT(max_abs_diff(Matrix(z * z * z), i3), 1e-14);
    EXPECT_LT(max_abs_diff(Matrix(z * x), Matrix(kOmega * x * z)), 1e-15);
    EXPECT_LT(max_abs_diff(Matrix(z * x * z.adjoint() * x.adjoint()), Matrix(kOmega * i3)), 1e-15);
    Matrix s = s_gate();
    EXPECT_LT(max_abs_diff(Matrix(s * s * s), i3), 1e-14);
    EXPECT_EQ(max_abs_diff(x, x_gate()), 0.0);
}

TEST(Pauli, MembershipTest) {
    auto [x, z] = pauli_generators();
    EXPECT_TRUE(is_pauli(Matrix(kOmega * x * z * z)));
    EXPECT_TRUE(is_pauli(Matrix::Identity(3, 3)));
    EXPECT_FALSE(is_pauli(hadamard3()));
    EXPECT_FALSE(is_pauli(x02_gate()));
}

TEST(Pauli, TGateIsNotClifford) {
    Matrix t = t_gate();
    Matrix x = pauli_generators().X;
    EXPECT_FALSE(is_pauli(Matrix(t * x * t.adjoint())));
    EXPECT_FALSE(CliffordGroup::instance().find(t).has_value());
    EXPECT_THROW(CliffordGroup::instance().index_of(t), ValidationError);
}

TEST(Enumerate, ExactlyTwoHundredSixteenDistinctElements) {
    const auto &g = CliffordGroup::instance();
    ASSERT_EQ(g.size(), 216u);
    std::set<std::vector<long long>> keys;
    for (const auto &e : g.elements()) keys.insert(canonical_key(e.canonical));
    EXPECT_EQ(keys.size(), 216u);
    EXPECT_EQ(enumerate_clifford().size(), 216u);
}

TEST(Enumerate, ContainsGenerators) {
    const auto &g = CliffordGroup::instance();
    for (const Matrix &m : {hadamard3(), s_gate(), pauli_generators().X, pauli_generators().Z, x02_gate(),
                            x01_gate(), x12_gate(), Matrix(hadamard3().adjoint())}) {
        EXPECT_TRUE(g.find(m).has_value());
    }
    EXPECT_LT(max_abs_diff(g[g.identity_index()].canonical, Matrix::Identity(3, 3)), 1e-12);
}

TEST(Enumerate, GroupAxiomsExhaustive) {
    const auto &g = CliffordGroup::instance();
    const size_t n = g.size();
    for (size_t a = 0; a < n; ++a) {
        for (size_t b = 0; b < n; ++b) {
            Matrix prod = g[b].canonical * g[a].canonical;
            auto idx = g.find(prod);
            ASSERT_TRUE(idx.has_value());
            ASSERT_EQ(*idx, g.then(a, b));
        }
        size_t inv = g.inverse(a);
        EXPECT_EQ(g.then(a, inv), g.identity_index());
        EXPECT_EQ(g.then(inv, a), g.identity_index());
        EXPECT_EQ(g.then(a, g.identity_index()), a);
    }
}

TEST(Enumerate, WordsRealiseElements) {
    const auto &g = CliffordGroup::instance();
    for (const auto &e : g.elements()) {
        EXPECT_GE(average_gate_fidelity(word_matrix(e.word), e.canonical), 1 - 1e-10);
    }
}

Matrix hsxz_letter(char c) {
    switch (c) {
        case 'H': return hadamard3();
        case 'S': return s_gate();
        case 'X': return pauli_generators().X;
        case 'Z': return pauli_generators().Z;
    }
    throw std::logic_error("bad letter");
}

TEST(Enumerate, HsxzWordsRealiseElementsAndAreShortest) {
    const auto &g = CliffordGroup::instance();
    // Independent breadth-first search over the four letters.
    std::map<std::vector<long long>, size_t> depth;
    std::vector<Matrix> frontier{Matrix::Identity(3, 3)};
    depth[canonical_key(frontier[0])] = 0;
    for (size_t level = 1; !frontier.empty(); ++level) {
        std::vector<Matrix> next;
        for (const Matrix &m : frontier) {
            for (char c : std::string("HSXZ")) {
                Matrix p = hsxz_letter(c) * m;
                auto key = canonical_key(p);
                if (depth.emplace(key, level).second) next.push_back(p);
            }
        }
        frontier = std::move(next);
    }
    ASSERT_EQ(depth.size(), 216u);
    for (const auto &e : g.elements()) {
        Matrix m = Matrix::Identity(3, 3);
        for (char c : e.hsxz_word) m = hsxz_letter(c) * m;
        EXPECT_GE(average_gate_fidelity(m, e.canonical), 1 - 1e-10) << e.hsxz_word;
        EXPECT_EQ(e.hsxz_word.size(), depth.at(canonical_key(e.canonical))) << e.hsxz_word;
    }
}

TEST(Enumerate, NativeWordsMinimisePhysicalGates) {
    const auto &g = CliffordGroup::instance();
    // Physical-gate distance by BFS over one-step natives with free virtual
    // phases: the 0-layer is the diagonal Cliffords.
    std::vector<Matrix> natives;
    for (GateKind k : {GateKind::H, GateKind::H_inv, GateKind::X, GateKind::X_inv, GateKind::X01, GateKind::X12,
                       GateKind::X02}) {
        natives.push_back(physical_gate_matrix(k));
    }
    std::vector<Matrix> diag;
    for (const auto &e : g.elements()) {
        Matrix c = e.canonical;
        if ((c - Matrix(c.diagonal().asDiagonal())).norm() < 1e-9) diag.push_back(c);
    }
    EXPECT_EQ(diag.size(), 9u);
    std::map<std::vector<long long>, int> dist;
    std::vector<Matrix> frontier;
    for (const Matrix &d : diag) {
        dist[canonical_key(d)] = 0;
        frontier.push_back(d);
    }
    for (int level = 1; !frontier.empty(); ++level) {
        std::vector<Matrix> next;
        for (const Matrix &m : frontier) {
            for (const Matrix &u : natives) {
                for (const Matrix &d : diag) {
                    Matrix p = d * u * m;
                    if (dist.emplace(canonical_key(p), level).second) next.push_back(p);
                }
            }
        }
        frontier = std::move(next);
    }
    ASSERT_EQ(dist.size(), 216u);
    for (const auto &e : g.elements()) {
        int physical = 0;
        for (const auto &op : e.word) physical += is_physical(op.kind) ? 1 : 0;
        EXPECT_EQ(physical, dist.at(canonical_key(e.canonical)));
    }
}

TEST(Enumerate, AverageCountsNearReferenceValues) {
    GateCounts c = CliffordGroup::instance().average_hsxz_counts();
    EXPECT_NEAR(c.h, 1.75, 0.3);
    EXPECT_NEAR(c.s, 1.51, 0.3);
    EXPECT_NEAR(c.x, 0.54, 0.3);
    EXPECT_NEAR(c.z, 0.52, 0.3);
    // Recount from the stored words.
    double h = 0, s = 0;
    for (const auto &e : CliffordGroup::instance().elements()) {
        h += static_cast<double>(std::count(e.hsxz_word.begin(), e.hsxz_word.end(), 'H'));
        s += static_cast<double>(std::count(e.hsxz_word.begin(), e.hsxz_word.end(), 'S'));
    }
    EXPECT_NEAR(c.h, h / 216.0, 1e-12);
    EXPECT_NEAR(c.s, s / 216.0, 1e-12);
}

TEST(Enumerate, NativeWordsAtPulseLevel) {
    auto ops = clifford_operators_from_native(simulated_native_gates(PulseNoise{}));
    const auto &g = CliffordGroup::instance();
    ASSERT_EQ(ops.size(), g.size());
    for (size_t i = 0; i < g.size(); ++i) {
        EXPECT_GE(average_gate_fidelity(ops[i], g[i].canonical), 0.999) << i;
    }
}

TEST(Enumerate, JsonExport) {
    auto doc = nlohmann::json::parse(CliffordGroup::instance().to_json());
    EXPECT_EQ(doc["version"], 1);
    const auto &j = doc["elements"];
    ASSERT_TRUE(j.is_array());
    ASSERT_EQ(j.size(), 216u);
    EXPECT_EQ(j[5]["index"], 5);
    EXPECT_EQ(j[5]["canonical"].size(), 9u);
    EXPECT_TRUE(j[5]["word"].is_array());
}

TEST(MinimalSet, IdentityHolds) {
    IdentityCheck c = verify_minimal_set_identity();
    EXPECT_TRUE(c.holds);
    EXPECT_GE(c.fidelity, 1 - 1e-10);
    // Independent product: rightmost H acts first.
    Matrix h = hadamard3(), s = s_gate();
    Matrix prod = h * s * h * h * s * s * h;
    EXPECT_NEAR(phase_overlap(prod, x_gate()), 1.0, 1e-12);
}

TEST(MinimalSet, SquaredPhaseBreaksIdentity) {
    IdentityCheck c = verify_minimal_set_identity(true);
    EXPECT_FALSE(c.holds);
    EXPECT_LT(c.fidelity, 1.0 - 1e-3);
}

TEST(VirtualZ, PhaseAloneGoesToTheEnd) {
    std::vector<GateOp> circuit{GateOp::virtual_phase(0.3, -0.7)};
    CompiledCircuit c = compile_virtual_z(circuit);
    EXPECT_TRUE(c.physical.empty());
    EXPECT_TRUE(c.trailing.is_virtual());
    EXPECT_LT(max_abs_diff(gate_matrix(c.trailing), phase_frame(0.3, -0.7)), 1e-15);
}

TEST(VirtualZ, WorkedThreeGateIdentity) {
    // U1 Z1 U2 Z2 U3 in time order becomes U1 U2~ U3~~ then Z1 Z2.
    GateOp u1 = GateOp::physical(GateKind::H), u2 = GateOp::physical(GateKind::X);
    GateOp u3 = GateOp::physical(GateKind::X02);
    GateOp z1 = GateOp::virtual_phase(0.4, 1.1), z2 = GateOp::virtual_phase(-0.9, 0.25);
    std::vector<GateOp> circuit{u1, z1, u2, z2, u3};
    CompiledCircuit c = compile_virtual_z(circuit);
    ASSERT_EQ(c.physical.size(), 3u);

    Matrix Z1 = phase_frame(0.4, 1.1), Z2 = phase_frame(-0.9, 0.25);
    Matrix U1 = hadamard3(), U2 = x_gate(), U3 = x02_gate();
    Matrix U2t = Z1.adjoint() * U2 * Z1;
    Matrix U3tt = (Z2 * Z1).adjoint() * U3 * (Z2 * Z1);
    EXPECT_LT(max_abs_diff(gate_matrix(c.physical[0]), U1), 1e-12);
    EXPECT_LT(max_abs_diff(gate_matrix(c.physical[1]), U2t), 1e-12);
    EXPECT_LT(max_abs_diff(gate_matrix(c.physical[2]), U3tt), 1e-12);
    EXPECT_LT(max_abs_diff(gate_matrix(c.trailing), Matrix(Z2 * Z1)), 1e-12);
    Matrix original = U3 * Z2 * U2 * Z1 * U1;
    Matrix compiled = gate_matrix(c.trailing) * word_matrix(c.physical);
    EXPECT_LT(max_abs_diff(compiled, original), 1e-10);
}

TEST(VirtualZ, RandomCircuitsMatchOriginal) {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> kind(0, 7);
    std::uniform_int_distribution<int> len(1, 20);
    std::uniform_real_distribution<double> ph(-kPi, kPi);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<GateOp> circuit;
        int n = len(rng);
        for (int k = 0; k < n; ++k) {
            auto gk = static_cast<GateKind>(kind(rng));
            circuit.push_back(gk == GateKind::VirtualPhase ? GateOp::virtual_phase(ph(rng), ph(rng))
                                                           : GateOp::physical(gk));
        }
        // Brute-force product, last gate leftmost.
        Matrix original = Matrix::Identity(3, 3);
        for (const auto &op : circuit) original = gate_matrix(op) * original;
        CompiledCircuit c = compile_virtual_z(circuit);
        for (const auto &op : c.physical) ASSERT_FALSE(op.is_virtual());
        Matrix compiled = gate_matrix(c.trailing) * word_matrix(c.physical);
        ASSERT_GE(average_gate_fidelity(compiled, original), 1 - 1e-9);
        ASSERT_LT(max_abs_diff(compiled, original), 1e-9);
        // Dropping the trailing phase leaves measurement statistics intact.
        Matrix phys = word_matrix(c.physical);
        for (int r = 0; r < 3; ++r) ASSERT_NEAR(std::norm(phys(r, 0)), std::norm(original(r, 0)), 1e-9);
    }
}

TEST(VirtualZ, DriveOffsetsAtPulseLevel) {
    const double p1 = 0.7, p2 = -1.3;
    Matrix z = phase_frame(p1, p2);
    for (GateKind k : {GateKind::H, GateKind::X, GateKind::X02}) {
        NativePulse np = native_pulse(k, 35.0);
        PulseSchedule shifted = np.schedule;
        for (size_t i = 0; i < shifted.size(); ++i) {
            shifted.omega1[i] *= std::exp(cplx(0, p1));
            shifted.omega2[i] *= std::exp(cplx(0, p2));
        }
        Matrix u = np.left * evolve(shifted).matrix() * np.right;
        Matrix expect = gate_matrix(GateOp::physical(k, p1, p2));
        EXPECT_LT(max_abs_diff(Matrix(z.adjoint() * physical_gate_matrix(k) * z), expect), 1e-14);
        EXPECT_GE(average_gate_fidelity(u, expect), 0.9999);
    }
}

}  // namespace
}  // namespace qutrit
