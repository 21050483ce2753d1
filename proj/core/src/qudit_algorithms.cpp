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

#include "qutrit/qudit_algorithms.hpp"

#include <cmath>
#include <numeric>

namespace qutrit {

namespace {

void check_dim(int d) {
    if (d < 2) throw ValidationError("qudit dimension must be at least 2");
}

int mod(int a, int d) { return ((a % d) + d) % d; }

// Dirichlet ratio sin(d x/2) / sin(x/2) with its limit d at x = 0 mod 2 pi.
double dirichlet(int d, double x) {
    double y = std::remainder(x, kTwoPi);
    if (std::abs(y) < 1e-6) {
        return d * (1.0 - (static_cast<double>(d) * d - 1.0) * y * y / 24.0);
    }
    return std::sin(0.5 * d * y) / std::sin(0.5 * y);
}

// Derivative of the ratio above with respect to x.
double dirichlet_derivative(int d, double x) {
    double y = std::remainder(x, kTwoPi);
    if (std::abs(y) < 1e-6) {
        return -d * (static_cast<double>(d) * d - 1.0) * y / 12.0;
    }
    double s = std::sin(0.5 * y), c = std::cos(0.5 * y);
    return (0.5 * d * std::cos(0.5 * d * y) * s - 0.5 * std::sin(0.5 * d * y) * c) / (s * s);
}

}  // namespace

QuditState::QuditState(Vector amplitudes) : amp_(std::move(amplitudes)) {
    if (amp_.size() < 2) throw ValidationError("qudit state needs dimension >= 2");
    if (std::abs(amp_.norm() - 1.0) > 1e-10) throw ValidationError("qudit state is not normalised");
}

QuditState QuditState::basis(int d, int k) {
    check_dim(d);
    if (k < 0 || k >= d) throw ValidationError("basis index out of range");
    Vector v = Vector::Zero(d);
    v(k) = 1.0;
    return QuditState(v);
}

QuditState QuditState::apply(const Matrix &u) const {
    if (u.rows() != amp_.size() || u.cols() != amp_.size()) {
        throw ValidationError("operator dimension does not match the state");
    }
    Vector v = u * amp_;
    v.normalize();
    return QuditState(v);
}

UnitaryMatrix hadamard_d(int d) {
    check_dim(d);
    Matrix h(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            h(j, k) = norm * std::exp(cplx(0.0, kTwoPi * ((j * k) % d) / d));
        }
    }
    return UnitaryMatrix(std::move(h));
}

Matrix phase_evolution(int d, double phi) {
    check_dim(d);
    std::vector<double> p(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) p[static_cast<size_t>(k)] = k * phi;
    return diagonal_phase(p);
}

double ramsey_population(int d, int k, double phi) {
    check_dim(d);
    if (k < 0 || k >= d) throw ValidationError("outcome index out of range");
    double r = dirichlet(d, phi - kTwoPi * k / d) / d;
    return r * r;
}

double ramsey_population_circuit(int d, int k, double phi) {
    check_dim(d);
    Matrix h = hadamard_d(d).matrix();
    QuditState s = QuditState::basis(d, 0).apply(h).apply(phase_evolution(d, phi)).apply(h.adjoint());
    return s.probability(k);
}

double phase_precision(int d, double phi) {
    check_dim(d);
    double r = dirichlet(d, phi) / d;
    double p0 = r * r;
    double dp = 2.0 * r * dirichlet_derivative(d, phi) / d;
    if (std::abs(dp) < 1e-12) return std::numeric_limits<double>::infinity();
    return std::sqrt(std::max(0.0, p0 * (1.0 - p0))) / std::abs(dp);
}

double phase_precision_limit(int d) {
    check_dim(d);
    return std::sqrt(3.0 / (static_cast<double>(d) * d - 1.0));
}

double qfi(int d) {
    check_dim(d);
    return (static_cast<double>(d) * d - 1.0) / 3.0;
}

double qfi_numeric(int d, double phi, double h) {
    check_dim(d);
    Matrix hd = hadamard_d(d).matrix();
    auto state = [&](double x) { return Vector(phase_evolution(d, x) * hd.col(0)); };
    Vector psi = state(phi);
    Vector dpsi = (8.0 * (state(phi + h) - state(phi - h)) - (state(phi + 2 * h) - state(phi - 2 * h))) / (12.0 * h);
    return 4.0 * (dpsi.squaredNorm() - std::norm(psi.dot(dpsi)));
}

PhaseOracle exact_phase_oracle(int d, double phi) {
    check_dim(d);
    return [d, phi](int power, double correction) {
        double x = std::pow(static_cast<double>(d), power) * phi - correction;
        int best = 0;
        double best_p = -1.0;
        for (int k = 0; k < d; ++k) {
            double p = ramsey_population(d, k, x);
            if (p > best_p) {
                best_p = p;
                best = k;
            }
        }
        return best;
    };
}

std::vector<int> kitaev_estimate(int d, int N, const PhaseOracle &oracle) {
    check_dim(d);
    if (N < 1) throw ValidationError("number of digits must be at least 1");
    if (!oracle) throw ValidationError("phase oracle is empty");
    std::vector<int> digits(static_cast<size_t>(N), 0);
    // At power j the phase is 2 pi (0.t_j t_{j+1} ... t_{N-1}) mod 2 pi; the
    // correction removes the already-known digits t_{j+1}, ..., t_{N-1}.
    for (int j = N - 1; j >= 0; --j) {
        double frac = 0.0;
        for (int l = j + 1; l < N; ++l) {
            frac += digits[static_cast<size_t>(l)] * std::pow(static_cast<double>(d), -(l - j + 1));
        }
        int outcome = oracle(j, kTwoPi * frac);
        if (outcome < 0 || outcome >= d) throw NumericalError("phase oracle returned an invalid outcome");
        digits[static_cast<size_t>(j)] = outcome;
    }
    return digits;
}

double kitaev_density(int d, int N, double dphi) {
    check_dim(d);
    if (N < 1) throw ValidationError("number of digits must be at least 1");
    const double dn = std::pow(static_cast<double>(d), N);
    double r = dirichlet(static_cast<int>(std::llround(dn)), dphi);
    return r * r / (kTwoPi * dn);
}

double kitaev_fwhm(int d, int N) {
    const double peak = kitaev_density(d, N, 0.0);
    const double dn = std::pow(static_cast<double>(d), N);
    // Half maximum lies inside the main lobe (0, 2 pi / d^N); bisect there.
    double lo = 0.0, hi = kTwoPi / dn;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (kitaev_density(d, N, mid) > 0.5 * peak) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo + hi;  // twice the half width
}

int DihedralElement::apply(int k) const { return mod((reflected ? -k : k) + shift, d); }

DihedralElement DihedralElement::compose(const DihedralElement &after) const {
    if (after.d != d) throw ValidationError("dihedral elements of different order");
    // after(this(k)) = s_a (s_t k + r_t) + r_a with s = +-1.
    int st = reflected ? -1 : 1;
    int sa = after.reflected ? -1 : 1;
    DihedralElement out;
    out.d = d;
    out.reflected = (st * sa) < 0;
    out.shift = mod(sa * shift + after.shift, d);
    return out;
}

Matrix DihedralElement::matrix() const {
    Matrix u = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) u(apply(k), k) = 1.0;
    return u;
}

DihedralElement DihedralElement::from_images(int d, const std::vector<int> &images) {
    check_dim(d);
    if (static_cast<int>(images.size()) != d) throw ValidationError("permutation has the wrong length");
    for (bool refl : {false, true}) {
        DihedralElement g{d, mod(images[0], d), refl};
        bool ok = true;
        for (int k = 0; k < d && ok; ++k) ok = g.apply(k) == images[static_cast<size_t>(k)];
        if (ok) return g;
    }
    throw ValidationError("permutation is not a symmetry of the regular polygon");
}

int parity_check(int d, int m, const DihedralElement &g) {
    check_dim(d);
    if (g.d != d) throw ValidationError("dihedral element has the wrong order");
    if (m < 0 || m >= d) throw ValidationError("input index out of range");
    if (std::gcd(m, d) != 1) {
        throw ValidationError("parity check needs gcd(m, d) = 1");
    }
    Matrix h = hadamard_d(d).matrix();
    QuditState s = QuditState::basis(d, m).apply(h).apply(g.matrix()).apply(h.adjoint());
    for (int k = 0; k < d; ++k) {
        if (std::abs(s.probability(k) - 1.0) < 1e-10) return k;
    }
    throw NumericalError("parity check output is not a basis state");
}

}  // namespace qutrit
