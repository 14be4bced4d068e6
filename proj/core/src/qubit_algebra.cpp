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

#include "qfilter/qubit_algebra.hpp"

#include <cmath>

#include "qfilter/error.hpp"

namespace qfilter {

namespace {

constexpr double kStateTolerance = 1e-9;
constexpr double kAlgebraTolerance = 1e-12;

}  // namespace

Operator2 pauli(Pauli axis) {
  const cplx i{0.0, 1.0};
  Operator2 m = Operator2::Zero();
  switch (axis) {
    case Pauli::x:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case Pauli::y:
      m(0, 1) = -i;
      m(1, 0) = i;
      break;
    case Pauli::z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    case Pauli::plus:
      m(0, 1) = 1.0;
      break;
    case Pauli::minus:
      m(1, 0) = 1.0;
      break;
    case Pauli::identity:
      m(0, 0) = 1.0;
      m(1, 1) = 1.0;
      break;
  }
  return m;
}

Operator2 bloch_to_density(const BlochVector& b) {
  Operator2 rho;
  rho(0, 0) = 0.5 * (1.0 + b.z);
  rho(1, 1) = 0.5 * (1.0 - b.z);
  rho(0, 1) = cplx{0.5 * b.x, -0.5 * b.y};
  rho(1, 0) = cplx{0.5 * b.x, 0.5 * b.y};
  return rho;
}

BlochVector density_to_bloch(const Operator2& rho) {
  const cplx trace = rho.trace();
  if (std::abs(trace - 1.0) > kStateTolerance) {
    throw InvalidState("density operator trace differs from 1");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance) {
    throw InvalidState("density operator is not Hermitian");
  }
  // Tr[rho sx] = 2 Re rho10, Tr[rho sy] = 2 Im rho10, Tr[rho sz] = rho00 - rho11.
  return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

PauliCoefficients pauli_decompose(const Operator2& m) {
  const cplx i{0.0, 1.0};
  return {
      0.5 * (m(0, 0) + m(1, 1)),
      0.5 * (m(0, 1) + m(1, 0)),
      0.5 * i * (m(0, 1) - m(1, 0)),
      0.5 * (m(0, 0) - m(1, 1)),
  };
}

Operator2 pauli_compose(const PauliCoefficients& c) {
  return c.identity * pauli(Pauli::identity) + c.x * pauli(Pauli::x) + c.y * pauli(Pauli::y) +
         c.z * pauli(Pauli::z);
}

SystemTriple SystemTriple::two_level(double gamma, double omega) {
  SystemTriple g;
  g.scattering = Operator2::Identity();
  g.coupling = std::sqrt(gamma) * pauli(Pauli::minus);
  g.hamiltonian = 0.5 * omega * pauli(Pauli::z);
  g.gamma = gamma;
  g.omega = omega;
  return g;
}

void SystemTriple::validate() const {
  const Operator2 unitarity = scattering.adjoint() * scattering - Operator2::Identity();
  if (unitarity.cwiseAbs().maxCoeff() > kAlgebraTolerance) {
    throw InvalidInput("scattering matrix is not unitary");
  }
  if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > kAlgebraTolerance) {
    throw InvalidInput("Hamiltonian is not Hermitian");
  }
}

Operator2 lindblad_generator(const SystemTriple& g, const Operator2& x) {
  const cplx i{0.0, 1.0};
  const Operator2& l = g.coupling;
  const Operator2 ldag = l.adjoint();
  return -i * commutator(x, g.hamiltonian) + 0.5 * ldag * commutator(x, l) +
         0.5 * commutator(ldag, x) * l;
}

double purity_density(const Operator2& rho) { return 2.0 * (rho * rho).trace().real() - 1.0; }

}  // namespace qfilter
