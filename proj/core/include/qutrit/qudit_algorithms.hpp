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

#include <functional>
#include <vector>

#include "qutrit/linalg.hpp"

namespace qutrit {

/// Normalised d-level pure state.
class QuditState {
  public:
    /// Throws ValidationError if d < 2 or the norm differs from 1 by > 1e-10.
    explicit QuditState(Vector amplitudes);
    static QuditState basis(int d, int k);

    int dim() const { return static_cast<int>(amp_.size()); }
    const Vector &amplitudes() const { return amp_; }
    double probability(int k) const { return std::norm(amp_(k)); }
    QuditState apply(const Matrix &u) const;

  private:
    Vector amp_;
};

/// Discrete Fourier transform H_d with entries w^{jk}/sqrt(d).
UnitaryMatrix hadamard_d(int d);

/// Free-evolution phase diag(1, e^{i phi}, ..., e^{i(d-1) phi}).
Matrix phase_evolution(int d, double phi);

/// Population of |k> after H_d^-1 Z(phi) H_d |0>:
/// sin^2(d x/2) / (d^2 sin^2(x/2)) with x = phi - 2 pi k/d.
double ramsey_population(int d, int k, double phi);

/// Same population from direct circuit simulation.
double ramsey_population_circuit(int d, int k, double phi);

/// Projection-noise phase uncertainty sqrt(P0 (1 - P0)) / |dP0/dphi|.
/// Returns +infinity at stationary points of P0 (including phi = 0 exactly
/// when P0 = 1, where the limit is taken instead; see phase_precision_limit).
double phase_precision(int d, double phi);

/// Limit of phase_precision as phi -> 0: sqrt(3/(d^2 - 1)).
double phase_precision_limit(int d);

/// (d^2 - 1)/3.
double qfi(int d);

/// 4 (<dpsi|dpsi> - |<psi|dpsi>|^2) for |psi(phi)> = Z(phi) H_d |0>, with
/// the derivative taken by a five-point central stencil of step h.
double qfi_numeric(int d, double phi = 0.3, double h = 1e-3);

/// Measurement oracle for phase estimation: given the power p (the circuit
/// applies the unknown phase d^p times) and a correction phase subtracted
/// before the final inverse transform, returns the observed outcome.
using PhaseOracle = std::function<int(int power, double correction)>;

/// Noiseless oracle for phase phi: returns the most likely outcome of the
/// Ramsey circuit at phase d^p phi - correction.
PhaseOracle exact_phase_oracle(int d, double phi);

/// Base-d iterative phase estimation of N digits, most significant first in
/// the result (phi/2pi = 0.t0 t1 ... t_{N-1} in base d). Digits are found
/// from the least significant end using the known lower digits as a phase
/// correction.
std::vector<int> kitaev_estimate(int d, int N, const PhaseOracle &oracle);

/// Normalised density of the phase error after N digits:
/// sin^2(d^N x/2) / (2 pi d^N sin^2(x/2)), which integrates to 1 over one
/// period.
double kitaev_density(int d, int N, double dphi);

/// Full width at half maximum of the main lobe of kitaev_density.
double kitaev_fwhm(int d, int N);

/// Element of the dihedral group acting on Z_d: k -> (reflected ? -k : k) + r.
struct DihedralElement {
    int d = 3;
    int shift = 0;
    bool reflected = false;

    int apply(int k) const;
    DihedralElement compose(const DihedralElement &after) const;  ///< `after` o this
    bool even() const { return !reflected; }
    /// Permutation matrix with U|k> = |pi(k)>.
    Matrix matrix() const;
    /// Parses a one-line permutation such as "12340" (image of 0, 1, ...).
    static DihedralElement from_images(int d, const std::vector<int> &images);
};

/// Simulates H_d^-1 U_pi H_d |m> and returns the outcome with unit
/// probability: m for rotations and d - m for reflections. Throws
/// ValidationError if gcd(m, d) != 1 or the output is not a basis state.
int parity_check(int d, int m, const DihedralElement &g);

}  // namespace qutrit
