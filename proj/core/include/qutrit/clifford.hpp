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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qutrit/linalg.hpp"

namespace qutrit {

enum class GateKind { H, H_inv, X, X_inv, X01, X12, X02, VirtualPhase };

/// One step of a qutrit circuit in time order.
///
/// VirtualPhase carries (phi1, phi2) and acts as diag(1, e^{i phi1},
/// e^{i(phi1+phi2)}) in zero time. Physical gates carry drive-phase offsets
/// (phi1 on the 0<->1 tone, phi2 on the 1<->2 tone); nonzero offsets realise
/// Z^dag U Z with Z the diagonal built from the same two angles.
struct GateOp {
    GateKind kind = GateKind::VirtualPhase;
    double phi1 = 0.0;
    double phi2 = 0.0;

    static GateOp physical(GateKind kind, double phi1 = 0.0, double phi2 = 0.0);
    static GateOp virtual_phase(double phi1, double phi2);

    bool is_virtual() const { return kind == GateKind::VirtualPhase; }
    std::string name() const;
};

/// Named virtual phase gates.
GateOp s_op();   ///< S = diag(1, 1, w)
GateOp z_op();   ///< Z = diag(1, w, w^2)

/// Ideal 3x3 matrix of a gate op, including drive-phase offsets.
Matrix gate_matrix(const GateOp &op);
/// Ideal unitary of a physical gate kind without offsets.
Matrix physical_gate_matrix(GateKind kind);

/// Product of a time-ordered word: last * ... * first.
Matrix word_matrix(std::span<const GateOp> word);

/// diag(1, e^{i phi1}, e^{i(phi1+phi2)}).
Matrix phase_frame(double phi1, double phi2);

struct PauliGenerators {
    Matrix X;
    Matrix Z;
};
PauliGenerators pauli_generators();
Matrix s_gate();
/// Non-Clifford diag(1, e^{2 pi i/9}, e^{-2 pi i/9}).
Matrix t_gate();
/// True if `u` equals w^k X^a Z^b up to global phase for some a, b.
bool is_pauli(const Matrix &u, double tol = 1e-9);

/// Average gate counts per element.
struct GateCounts {
    double h = 0.0;
    double s = 0.0;
    double x = 0.0;
    double z = 0.0;
};

struct CliffordElement {
    Matrix canonical;                ///< Phase-canonicalised 3x3 unitary.
    std::vector<GateOp> word;        ///< Native word: fewest physical gates.
    std::string hsxz_word;           ///< Shortest word over {H, S, X, Z}, time order.
};

/// The 216-element single-qutrit Clifford group modulo global phase.
class CliffordGroup {
  public:
    /// Shared, lazily built table. Thread-safe.
    static const CliffordGroup &instance();

    size_t size() const { return elements_.size(); }
    const CliffordElement &operator[](size_t i) const { return elements_[i]; }
    const std::vector<CliffordElement> &elements() const { return elements_; }

    std::optional<size_t> find(const Matrix &u) const;
    /// Throws ValidationError if `u` is not a Clifford.
    size_t index_of(const Matrix &u) const;
    size_t identity_index() const { return identity_; }

    /// Index of the product that applies `first` and then `second`.
    size_t then(size_t first, size_t second) const { return table_[first * size() + second]; }
    size_t inverse(size_t i) const { return inverse_[i]; }

    /// Average counts from the shortest {H, S, X, Z} words.
    GateCounts average_hsxz_counts() const;
    /// Average physical (H-type, X-type) and virtual gates in native words.
    GateCounts average_native_counts() const;

    /// JSON array of {index, canonical [[re, im], ...] row-major, word[],
    /// hsxz_word}.
    std::string to_json() const;

  private:
    CliffordGroup();

    std::vector<CliffordElement> elements_;
    std::vector<size_t> table_;
    std::vector<size_t> inverse_;
    size_t identity_ = 0;
};

/// Canonical hashing key: phase-canonicalised entries rounded to 1e-8.
std::vector<long long> canonical_key(const Matrix &u);

/// Builds the group by best-first closure; exposed for tests.
std::vector<CliffordElement> enumerate_clifford();

struct IdentityCheck {
    bool holds = false;
    double fidelity = 0.0;
};
/// Checks X = H S H^2 S^2 H (matrix product) up to global phase. With
/// `use_s_squared` the S factors are swapped for S^2 as a negative control.
IdentityCheck verify_minimal_set_identity(bool use_s_squared = false);

struct CompiledCircuit {
    std::vector<GateOp> physical;  ///< Physical gates with drive-phase offsets.
    GateOp trailing;               ///< Accumulated virtual phase.
};

/// Pushes every virtual phase to the end of the circuit, rewriting each
/// later physical gate U as Z^dag U Z via its drive-phase offsets.
CompiledCircuit compile_virtual_z(std::span<const GateOp> circuit);

}  // namespace qutrit
