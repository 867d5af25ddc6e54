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

#include "biphoton/qutrit.hpp"

#include <algorithm>
#include <cmath>

#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

const double kSqrt2 = std::sqrt(2.0);

}  // namespace

QutritState::QutritState(Complex c1, Complex c2, Complex c3) : amps_{c1, c2, c3} {
  const double norm = std::sqrt(std::norm(c1) + std::norm(c2) + std::norm(c3));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::ZeroState, "qutrit amplitudes must not all vanish");
  }
  for (auto& a : amps_) a /= norm;
}

QutritState make_qutrit(Complex c1, Complex c2, Complex c3) { return {c1, c2, c3}; }

namespace qutrit {

ComplexVector wavefunction(const QutritState& q) {
  ComplexVector psi(4);
  psi << q.c1(), q.c2() / kSqrt2, q.c2() / kSqrt2, q.c3();
  return psi;
}

BellCoefficients bell_coefficients(const QutritState& q) {
  return {(q.c1() + q.c3()) / kSqrt2, (q.c1() - q.c3()) / kSqrt2, q.c2()};
}

QutritState from_bell(const BellCoefficients& b) {
  return {(b.c_plus + b.c_minus) / kSqrt2, b.c2, (b.c_plus - b.c_minus) / kSqrt2};
}

ComplexMatrix density_matrix(const QutritState& q) { return linalg::outer(wavefunction(q)); }

ComplexMatrix basis_transform_u() {
  const double h = 1.0 / kSqrt2;
  ComplexMatrix u(4, 4);
  u << 1, 0, 0, 0,
       0, h, h, 0,
       0, h, -h, 0,
       0, 0, 0, 1;
  return u;
}

ComplexMatrix transformed_density(const QutritState& q) {
  const ComplexMatrix u = basis_transform_u();
  return u * density_matrix(q) * u;
}

ComplexMatrix coherence_matrix(const QutritState& q) {
  const ComplexMatrix t = transformed_density(q);
  constexpr int keep[3] = {0, 1, 3};
  ComplexMatrix coh(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) coh(i, j) = t(keep[i], keep[j]);
  return coh;
}

ComplexMatrix reduced_density(const QutritState& q) {
  const Complex c1 = q.c1(), c2 = q.c2(), c3 = q.c3();
  const Complex off = (c1 * std::conj(c2) + c2 * std::conj(c3)) / kSqrt2;
  ComplexMatrix r(2, 2);
  r << std::norm(c1) + 0.5 * std::norm(c2), off,
       std::conj(off), std::norm(c3) + 0.5 * std::norm(c2);
  return r;
}

double concurrence(const QutritState& q) {
  return std::abs(2.0 * q.c1() * q.c3() - q.c2() * q.c2());
}

double schmidt_k(const QutritState& q) {
  const double c = concurrence(q);
  return 2.0 / (2.0 - c * c);
}

EntanglementReport quantify(const QutritState& q) {
  EntanglementReport r;
  r.concurrence = std::min(concurrence(q), 1.0);
  r.schmidt_k = schmidt_k(q);
  const double root = std::sqrt(std::max(0.0, 1.0 - r.concurrence * r.concurrence));
  r.lambda_plus = 0.5 * (1.0 + root);
  r.lambda_minus = 0.5 * (1.0 - root);
  RealVector lambdas(2);
  lambdas << r.lambda_plus, r.lambda_minus;
  r.entropy = linalg::entropy_bits(lambdas);
  return r;
}

ComplexVector spin_flip(const QutritState& q) {
  ComplexMatrix sigma_y(2, 2);
  sigma_y << 0, -kI, kI, 0;
  return linalg::kron(sigma_y, sigma_y) * wavefunction(q).conjugate();
}

double spin_flip_concurrence(const QutritState& q) {
  return std::abs(wavefunction(q).dot(spin_flip(q)));
}

SchmidtDecomposition schmidt_decompose(const QutritState& q) {
  return {linalg::schmidt(wavefunction(q), 2, kSchmidtDrop)};
}

PolarizationReport polarization(const QutritState& q) {
  const Complex c1 = q.c1(), c2 = q.c2(), c3 = q.c3();
  const Complex mix = c1 * std::conj(c2) + c2 * std::conj(c3);
  PolarizationReport p;
  p.xi = {kSqrt2 * mix.real(), -kSqrt2 * mix.imag(), std::norm(c1) - std::norm(c3)};
  p.degree_p = std::hypot(p.xi[0], p.xi[1], p.xi[2]);
  return p;
}

QutritState rotate_basis(const QutritState& q, double alpha) {
  const double c = std::cos(alpha), s = std::sin(alpha);
  const double cs = kSqrt2 * c * s;
  const Complex c1 = q.c1(), c2 = q.c2(), c3 = q.c3();
  return {c * c * c1 + cs * c2 + s * s * c3,
          -cs * (c1 - c3) + std::cos(2.0 * alpha) * c2,
          s * s * c1 - cs * c2 + c * c * c3};
}

QutritState non_entangled_family(double phi, double phi1, double phi3) {
  const double ch = std::cos(phi / 2.0), sh = std::sin(phi / 2.0);
  return {ch * ch * std::polar(1.0, phi1),
          std::sin(phi) / kSqrt2 * std::polar(1.0, 0.5 * (phi1 + phi3)),
          sh * sh * std::polar(1.0, phi3)};
}

QutritState max_entangled_family(double phi, double phi1, double phi3) {
  const double c = std::cos(phi) / kSqrt2;
  return {c * std::polar(1.0, phi1),
          std::sin(phi) * std::polar(1.0, 0.5 * (phi1 + phi3)),
          -c * std::polar(1.0, phi3)};
}

QutritState real_from_c_plus(double c_plus, double chi) {
  const double r = std::sqrt(std::max(0.0, 1.0 - c_plus * c_plus));
  return from_bell({c_plus, r * std::cos(chi), r * std::sin(chi)});
}

bool same_state(const QutritState& a, const QutritState& b, double tol) {
  return linalg::equal_up_to_phase(wavefunction(a), wavefunction(b), tol);
}

}  // namespace qutrit
}  // namespace biphoton
