/**
 * Copyright 2026 The Biphoton Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "biphoton/ququart.hpp"

#include <algorithm>
#include <cmath>

#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

const double kSqrt2 = std::sqrt(2.0);

ComplexVector mode_vector(ququart::Mode m) {
  ComplexVector e = ComplexVector::Zero(4);
  e(static_cast<int>(m)) = 1.0;
  return e;
}

}  // namespace

QuquartState::QuquartState(Complex c1, Complex c2, Complex c3, Complex c4)
    : amps_{c1, c2, c3, c4} {
  double n2 = 0.0;
  for (const auto& a : amps_) n2 += std::norm(a);
  const double norm = std::sqrt(n2);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::ZeroState, "ququart amplitudes must not all vanish");
  }
  for (auto& a : amps_) a /= norm;
}

namespace ququart {

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::Hh: return "Hh";
    case Mode::Hl: return "Hl";
    case Mode::Vh: return "Vh";
    case Mode::Vl: return "Vl";
  }
  return "?";
}

std::array<Mode, 2> basis_modes(Basis b) {
  switch (b) {
    case Basis::HH: return {Mode::Hh, Mode::Hl};
    case Basis::HV: return {Mode::Hh, Mode::Vl};
    case Basis::VH: return {Mode::Vh, Mode::Hl};
    case Basis::VV: return {Mode::Vh, Mode::Vl};
  }
  return {Mode::Hh, Mode::Hl};
}

ComplexVector basis_wavefunction(Basis label) {
  const auto [i, j] = basis_modes(label);
  const ComplexVector a = mode_vector(i), b = mode_vector(j);
  return (linalg::kron(a, b) + linalg::kron(b, a)) / kSqrt2;
}

ComplexVector wavefunction(const QuquartState& s) {
  return s.c(1) * basis_wavefunction(Basis::HH) + s.c(2) * basis_wavefunction(Basis::HV) +
         s.c(3) * basis_wavefunction(Basis::VH) + s.c(4) * basis_wavefunction(Basis::VV);
}

ComplexMatrix density_matrix(const QuquartState& s) { return linalg::outer(wavefunction(s)); }

ComplexMatrix reduced_density(const QuquartState& s) {
  const Complex c1 = s.c(1), c2 = s.c(2), c3 = s.c(3), c4 = s.c(4);
  const Complex a = c1 * std::conj(c3) + c2 * std::conj(c4);
  const Complex b = c1 * std::conj(c2) + c3 * std::conj(c4);
  ComplexMatrix r = ComplexMatrix::Zero(4, 4);
  r(0, 0) = std::norm(c1) + std::norm(c2);
  r(1, 1) = std::norm(c1) + std::norm(c3);
  r(2, 2) = std::norm(c3) + std::norm(c4);
  r(3, 3) = std::norm(c2) + std::norm(c4);
  r(0, 2) = a;
  r(2, 0) = std::conj(a);
  r(1, 3) = b;
  r(3, 1) = std::conj(b);
  return 0.5 * r;
}

double determinant_modulus(const QuquartState& s) {
  return std::abs(s.c(1) * s.c(4) - s.c(2) * s.c(3));
}

QuquartReport quantify(const QuquartState& s) {
  const double d2 = std::pow(determinant_modulus(s), 2);
  QuquartReport r;
  r.schmidt_k = 2.0 / (1.0 - 2.0 * d2);
  r.i_concurrence = std::sqrt(1.0 + 2.0 * d2);
  const RealVector lambdas = linalg::density_spectrum(reduced_density(s));
  for (int k = 0; k < 4; ++k) r.lambdas[static_cast<std::size_t>(k)] = lambdas(k);
  r.entropy = linalg::entropy_bits(lambdas);
  return r;
}

SchmidtDecomposition schmidt_decompose(const QuquartState& s) {
  return {linalg::schmidt(wavefunction(s), 4, qutrit::kSchmidtDrop)};
}

FamilyPoint family_psi_phi(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  const double c2 = std::cos(2.0 * phi);
  const auto xlog = [](double x) { return x == 0.0 ? 0.0 : x * x * std::log2(std::abs(x)); };
  return {QuquartState(c, 0.0, 0.0, s), 4.0 / (1.0 + c2 * c2), 1.0 - 2.0 * (xlog(c) + xlog(s))};
}

QuquartState family_psi_phi_prime(double phi) {
  return {std::cos(phi) / kSqrt2, 0.5, 0.5, std::sin(phi) / kSqrt2};
}

TwoQubitModelReport two_qubit_model(const QuquartState& s) {
  const Complex c1 = s.c(1), c2 = s.c(2), c3 = s.c(3), c4 = s.c(4);
  const double det = determinant_modulus(s);
  TwoQubitModelReport r;
  r.k_2qb = 1.0 / (1.0 - 2.0 * det * det);
  r.c_2qb = 2.0 * det;
  const Complex off = c1 * std::conj(c3) + c2 * std::conj(c4);
  r.rho_r_2qb = ComplexMatrix(2, 2);
  r.rho_r_2qb << std::norm(c1) + std::norm(c2), off,
                 std::conj(off), std::norm(c3) + std::norm(c4);
  return r;
}

QuquartState rotate_basis_45(const QuquartState& s) {
  const Complex c1 = s.c(1), c2 = s.c(2), c3 = s.c(3), c4 = s.c(4);
  return {0.5 * (c1 + c2 + c3 + c4),
          0.5 * (-c1 + c2 - c3 + c4),
          0.5 * (-c1 - c2 + c3 + c4),
          0.5 * (c1 - c2 - c3 + c4)};
}

PostSelected qutrit_to_ququart_postselect(const QutritState& q) {
  ComplexVector angular(4);
  angular << 0.0, 1.0 / kSqrt2, 1.0 / kSqrt2, 0.0;
  PostSelected out;
  out.wavefunction = linalg::photonwise_product(qutrit::wavefunction(q), 2, angular, 2);
  out.k_total = 1.0 / linalg::purity(linalg::partial_trace(linalg::outer(out.wavefunction), 4));
  out.k_qutrit = qutrit::schmidt_k(q);
  return out;
}

bool same_state(const QuquartState& a, const QuquartState& b, double tol) {
  return linalg::equal_up_to_phase(wavefunction(a), wavefunction(b), tol);
}

}  // namespace ququart
}  // namespace biphoton
