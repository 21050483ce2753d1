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

#include "qutrit/clifford.hpp"

#include <cmath>
#include <map>
#include <queue>
#include <sstream>

#include "json.hpp"

#include "qutrit/hgate.hpp"
#include "qutrit/xgate.hpp"

namespace qutrit {

namespace {

constexpr size_t kSafetyBound = 10000;
const double kW = kTwoPi / 3.0;

struct Letter {
    std::string name;
    GateOp op;
    int cost;
};

std::vector<Letter> native_alphabet() {
    return {
        {"H", GateOp::physical(GateKind::H), 1},
        {"Hinv", GateOp::physical(GateKind::H_inv), 1},
        {"X", GateOp::physical(GateKind::X), 1},
        {"Xinv", GateOp::physical(GateKind::X_inv), 1},
        {"X01", GateOp::physical(GateKind::X01), 1},
        {"X12", GateOp::physical(GateKind::X12), 1},
        {"X02", GateOp::physical(GateKind::X02), 1},
        {"S", s_op(), 0},
        {"S2", GateOp::virtual_phase(0.0, 2.0 * kW), 0},
        {"Z", z_op(), 0},
        {"Z2", GateOp::virtual_phase(2.0 * kW, 2.0 * kW), 0},
    };
}

std::vector<Letter> hsxz_alphabet() {
    return {
        {"H", GateOp::physical(GateKind::H), 1},
        {"S", s_op(), 1},
        {"X", GateOp::physical(GateKind::X), 1},
        {"Z", z_op(), 1},
    };
}

struct Node {
    int cost;
    size_t length;
    std::vector<int> word;
    Matrix u;
};

struct NodeOrder {
    bool operator()(const Node &a, const Node &b) const {
        if (a.cost != b.cost) return a.cost > b.cost;
        if (a.length != b.length) return a.length > b.length;
        return a.word > b.word;
    }
};

// Best-first closure from the identity. Returns canonical key -> word in
// letter indices, with ties broken by (cost, length, lexicographic word).
std::map<std::vector<long long>, std::pair<Matrix, std::vector<int>>> closure(
    const std::vector<Letter> &alphabet) {
    std::vector<Matrix> mats;
    for (const auto &l : alphabet) mats.push_back(gate_matrix(l.op));
    std::map<std::vector<long long>, std::pair<Matrix, std::vector<int>>> seen;
    std::priority_queue<Node, std::vector<Node>, NodeOrder> pq;
    pq.push(Node{0, 0, {}, Matrix::Identity(3, 3)});
    while (!pq.empty()) {
        Node n = pq.top();
        pq.pop();
        auto key = canonical_key(n.u);
        if (seen.count(key)) continue;
        seen.emplace(key, std::make_pair(canonicalize_phase(n.u, 1e-6), n.word));
        if (seen.size() > kSafetyBound) {
            throw NumericalError("Clifford closure exceeded the safety bound");
        }
        for (size_t i = 0; i < alphabet.size(); ++i) {
            Matrix v = mats[i] * n.u;
            if (seen.count(canonical_key(v))) continue;
            std::vector<int> w = n.word;
            w.push_back(static_cast<int>(i));
            pq.push(Node{n.cost + alphabet[i].cost, n.length + 1, std::move(w), std::move(v)});
        }
    }
    return seen;
}

}  // namespace

GateOp GateOp::physical(GateKind kind, double phi1, double phi2) {
    if (kind == GateKind::VirtualPhase) {
        throw ValidationError("GateOp::physical called with VirtualPhase");
    }
    return GateOp{kind, phi1, phi2};
}

GateOp GateOp::virtual_phase(double phi1, double phi2) {
    return GateOp{GateKind::VirtualPhase, phi1, phi2};
}

std::string GateOp::name() const {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::H_inv: return "Hinv";
        case GateKind::X: return "X";
        case GateKind::X_inv: return "Xinv";
        case GateKind::X01: return "X01";
        case GateKind::X12: return "X12";
        case GateKind::X02: return "X02";
        case GateKind::VirtualPhase: return "Zphi";
    }
    return "?";
}

GateOp s_op() { return GateOp::virtual_phase(0.0, kW); }
GateOp z_op() { return GateOp::virtual_phase(kW, kW); }

Matrix phase_frame(double phi1, double phi2) {
    std::array<double, 3> p{0.0, phi1, phi1 + phi2};
    return diagonal_phase(p);
}

Matrix physical_gate_matrix(GateKind kind) {
    switch (kind) {
        case GateKind::H: return hadamard3();
        case GateKind::H_inv: return hadamard3().adjoint();
        case GateKind::X: return x_gate();
        case GateKind::X_inv: return x_inverse_gate();
        case GateKind::X01: return x01_gate();
        case GateKind::X12: return x12_gate();
        case GateKind::X02: return x02_gate();
        case GateKind::VirtualPhase: break;
    }
    throw ValidationError("physical_gate_matrix: not a physical gate");
}

Matrix gate_matrix(const GateOp &op) {
    Matrix z = phase_frame(op.phi1, op.phi2);
    if (op.is_virtual()) return z;
    if (op.phi1 == 0.0 && op.phi2 == 0.0) return physical_gate_matrix(op.kind);
    return z.adjoint() * physical_gate_matrix(op.kind) * z;
}

Matrix word_matrix(std::span<const GateOp> word) {
    Matrix u = Matrix::Identity(3, 3);
    for (const auto &op : word) u = gate_matrix(op) * u;
    return u;
}

PauliGenerators pauli_generators() {
    const cplx w = std::exp(cplx(0.0, kW));
    Matrix z = Matrix::Zero(3, 3);
    z(0, 0) = 1.0;
    z(1, 1) = w;
    z(2, 2) = w * w;
    return {x_gate(), z};
}

Matrix s_gate() { return gate_matrix(s_op()); }

Matrix t_gate() {
    std::array<double, 3> p{0.0, kTwoPi / 9.0, -kTwoPi / 9.0};
    return diagonal_phase(p);
}

bool is_pauli(const Matrix &u, double tol) {
    auto [x, z] = pauli_generators();
    Matrix xa = Matrix::Identity(3, 3);
    for (int a = 0; a < 3; ++a) {
        Matrix zb = Matrix::Identity(3, 3);
        for (int b = 0; b < 3; ++b) {
            if (average_gate_fidelity(u, Matrix(xa * zb)) > 1.0 - tol) return true;
            zb = zb * z;
        }
        xa = xa * x;
    }
    return false;
}

std::vector<long long> canonical_key(const Matrix &u) {
    Matrix c = canonicalize_phase(u, 1e-6);
    std::vector<long long> key;
    key.reserve(static_cast<size_t>(2 * c.size()));
    for (Eigen::Index r = 0; r < c.rows(); ++r) {
        for (Eigen::Index k = 0; k < c.cols(); ++k) {
            key.push_back(std::llround(c(r, k).real() * 1e8));
            key.push_back(std::llround(c(r, k).imag() * 1e8));
        }
    }
    return key;
}

std::vector<CliffordElement> enumerate_clifford() {
    const auto native = native_alphabet();
    const auto hsxz = hsxz_alphabet();
    auto nat = closure(native);
    auto shortest = closure(hsxz);
    if (nat.size() != shortest.size()) {
        throw NumericalError("Clifford closures over the two alphabets disagree");
    }
    // Order elements by native word (cost, length, lexicographic) so the
    // identity comes first and indices are reproducible.
    std::vector<std::pair<std::vector<long long>, const std::vector<int> *>> order;
    for (const auto &[key, val] : nat) order.emplace_back(key, &val.second);
    std::sort(order.begin(), order.end(), [&](const auto &a, const auto &b) {
        auto cost = [&](const std::vector<int> &w) {
            int c = 0;
            for (int i : w) c += native[static_cast<size_t>(i)].cost;
            return c;
        };
        const auto &wa = *a.second;
        const auto &wb = *b.second;
        if (cost(wa) != cost(wb)) return cost(wa) < cost(wb);
        if (wa.size() != wb.size()) return wa.size() < wb.size();
        return wa < wb;
    });
    std::vector<CliffordElement> out;
    out.reserve(order.size());
    for (const auto &[key, word] : order) {
        CliffordElement e;
        e.canonical = nat.at(key).first;
        for (int i : *word) e.word.push_back(native[static_cast<size_t>(i)].op);
        auto it = shortest.find(key);
        if (it == shortest.end()) {
            throw NumericalError("Clifford element missing from the {H,S,X,Z} closure");
        }
        for (int i : it->second.second) e.hsxz_word += hsxz[static_cast<size_t>(i)].name;
        out.push_back(std::move(e));
    }
    return out;
}

CliffordGroup::CliffordGroup() : elements_(enumerate_clifford()) {
    std::map<std::vector<long long>, size_t> index;
    for (size_t i = 0; i < elements_.size(); ++i) index[canonical_key(elements_[i].canonical)] = i;
    const size_t n = elements_.size();
    table_.assign(n * n, 0);
    inverse_.assign(n, n);
    identity_ = index.at(canonical_key(Matrix::Identity(3, 3)));
    for (size_t a = 0; a < n; ++a) {
        for (size_t b = 0; b < n; ++b) {
            Matrix p = elements_[b].canonical * elements_[a].canonical;
            auto it = index.find(canonical_key(p));
            if (it == index.end()) throw NumericalError("Clifford table is not closed");
            table_[a * n + b] = it->second;
            if (it->second == identity_) inverse_[a] = b;
        }
    }
}

const CliffordGroup &CliffordGroup::instance() {
    static const CliffordGroup group;
    return group;
}

std::optional<size_t> CliffordGroup::find(const Matrix &u) const {
    if (u.rows() != 3 || u.cols() != 3) return std::nullopt;
    auto key = canonical_key(u);
    for (size_t i = 0; i < elements_.size(); ++i) {
        if (canonical_key(elements_[i].canonical) == key) return i;
    }
    return std::nullopt;
}

size_t CliffordGroup::index_of(const Matrix &u) const {
    auto i = find(u);
    if (!i) throw ValidationError("matrix is not a qutrit Clifford");
    return *i;
}

GateCounts CliffordGroup::average_hsxz_counts() const {
    GateCounts c;
    for (const auto &e : elements_) {
        for (char ch : e.hsxz_word) {
            if (ch == 'H') c.h += 1;
            if (ch == 'S') c.s += 1;
            if (ch == 'X') c.x += 1;
            if (ch == 'Z') c.z += 1;
        }
    }
    double n = static_cast<double>(elements_.size());
    return {c.h / n, c.s / n, c.x / n, c.z / n};
}

GateCounts CliffordGroup::average_native_counts() const {
    GateCounts c;
    for (const auto &e : elements_) {
        for (const auto &op : e.word) {
            switch (op.kind) {
                case GateKind::H:
                case GateKind::H_inv: c.h += 1; break;
                case GateKind::VirtualPhase:
                    // S-type phases touch only level 2; Z-type touch level 1.
                    if (std::abs(op.phi1) < 1e-12) {
                        c.s += 1;
                    } else {
                        c.z += 1;
                    }
                    break;
                default: c.x += 1; break;
            }
        }
    }
    double n = static_cast<double>(elements_.size());
    return {c.h / n, c.s / n, c.x / n, c.z / n};
}

std::string CliffordGroup::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (size_t i = 0; i < elements_.size(); ++i) {
        const auto &e = elements_[i];
        nlohmann::json m = nlohmann::json::array();
        for (Eigen::Index r = 0; r < 3; ++r) {
            for (Eigen::Index c = 0; c < 3; ++c) {
                m.push_back({e.canonical(r, c).real(), e.canonical(r, c).imag()});
            }
        }
        nlohmann::json word = nlohmann::json::array();
        for (const auto &op : e.word) {
            nlohmann::json g = {{"gate", op.name()}};
            if (op.is_virtual()) g["phases"] = {op.phi1, op.phi2};
            word.push_back(g);
        }
        arr.push_back({{"index", i}, {"canonical", m}, {"word", word}, {"hsxz_word", e.hsxz_word}});
    }
    nlohmann::json out = {{"version", 1}, {"units", {{"phases", "rad"}}}, {"elements", arr}};
    return out.dump(1);
}

IdentityCheck verify_minimal_set_identity(bool use_s_squared) {
    Matrix h = hadamard3();
    Matrix s = s_gate();
    if (use_s_squared) s = (s * s).eval();
    Matrix rhs = h * s * h * h * s * s * h;
    IdentityCheck out;
    out.fidelity = average_gate_fidelity(x_gate(), rhs);
    out.holds = out.fidelity >= 1.0 - 1e-10;
    return out;
}

CompiledCircuit compile_virtual_z(std::span<const GateOp> circuit) {
    CompiledCircuit out;
    double acc1 = 0.0, acc2 = 0.0;
    for (const auto &op : circuit) {
        if (op.is_virtual()) {
            acc1 += op.phi1;
            acc2 += op.phi2;
        } else {
            out.physical.push_back(GateOp::physical(op.kind, op.phi1 + acc1, op.phi2 + acc2));
        }
    }
    out.trailing = GateOp::virtual_phase(acc1, acc2);
    return out;
}

}  // namespace qutrit
