// Copyright 2026 The qfilter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact 2x2 operator algebra for a two-level system.
//
// Basis ordering is (|e>, |g>): sigma_z = diag(1, -1) so the north pole of the
// Bloch sphere is the excited state, and sigma_- = |g><e| = [[0, 0], [1, 0]].

#pragma once

#include <complex>

#include <Eigen/Core>

namespace qfilter {

using cplx = std::complex<double>;
using Operator2 = Eigen::Matrix2cd;

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm_squared() const { return x * x + y * y + z * z; }
  friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

enum class Pauli { x, y, z, plus, minus, identity };

Operator2 pauli(Pauli axis);

// rho = (I + x sx + y sy + z sz) / 2. Vectors outside the unit ball are accepted.
Operator2 bloch_to_density(const BlochVector& b);

// Inverse of bloch_to_density via x = Tr[rho sx] etc. Throws InvalidState when
// |Tr rho - 1| or the Hermiticity defect exceeds 1e-9.
BlochVector density_to_bloch(const Operator2& rho);

inline Operator2 commutator(const Operator2& a, const Operator2& b) { return a * b - b * a; }

// Expansion M = i0 I + x sx + y sy + z sz with complex coefficients.
struct PauliCoefficients {
  cplx identity;
  cplx x;
  cplx y;
  cplx z;
};

PauliCoefficients pauli_decompose(const Operator2& m);
Operator2 pauli_compose(const PauliCoefficients& c);

// Open-system model (S, L, H) together with the rates it was built from.
struct SystemTriple {
  Operator2 scattering = Operator2::Identity();
  Operator2 coupling = Operator2::Zero();
  Operator2 hamiltonian = Operator2::Zero();
  double gamma = 0.0;  // coupling rate
  double omega = 0.0;  // atomic frequency

  // S = I, L = sqrt(gamma) sigma_-, H = (omega / 2) sigma_z.
  static SystemTriple two_level(double gamma, double omega);

  // Throws InvalidInput unless S is unitary and H Hermitian to 1e-12.
  void validate() const;
};

// Heisenberg-picture generator -i[X, H] + L^dag [X, L] / 2 + [L^dag, X] L / 2.
Operator2 lindblad_generator(const SystemTriple& g, const Operator2& x);

// P = 2 Tr[rho^2] - 1: 1 for pure states, 0 for the maximally mixed state.
double purity_density(const Operator2& rho);

}  // namespace qfilter
