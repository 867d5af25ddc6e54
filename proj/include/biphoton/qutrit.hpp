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

/*
 * Polarization biphoton qutrits
 *
 *   |psi> = C1 |2_H> + C2 |1_H,1_V> + C3 |2_V>
 *
 * represented as two-photon vectors of single-photon dimension 2 with the
 * mode order (H, V).
 */

#pragma once

#include <array>
#include <vector>

#include "biphoton/linalg.hpp"

namespace biphoton {

class QutritState {
 public:
  /// Rescales (c1, c2, c3) to unit norm without touching the global phase.
  /// Throws ErrorCode::ZeroState on the zero vector.
  QutritState(Complex c1, Complex c2, Complex c3);

  Complex c1() const noexcept { return amps_[0]; }
  Complex c2() const noexcept { return amps_[1]; }
  Complex c3() const noexcept { return amps_[2]; }
  const std::array<Complex, 3>& amplitudes() const noexcept { return amps_; }

 private:
  std::array<Complex, 3> amps_;
};

QutritState make_qutrit(Complex c1, Complex c2, Complex c3);

/// Expansion over the symmetric Bell states Phi+, Psi+ (= Psi_HV), Phi-.
struct BellCoefficients {
  Complex c_plus;
  Complex c_minus;
  Complex c2;
};

struct EntanglementReport {
  double schmidt_k = 1.0;
  double concurrence = 0.0;
  double entropy = 0.0;  // bits
  double lambda_plus = 1.0;
  double lambda_minus = 0.0;
};

/// xi = Tr(rho_r sigma); xi is one half of the Stokes vector.
struct PolarizationReport {
  std::array<double, 3> xi{};
  double degree_p = 0.0;
};

struct SchmidtDecomposition {
  std::vector<linalg::SchmidtTerm> terms;  // lambda descending, tiny terms dropped
};

namespace qutrit {

inline constexpr double kSchmidtDrop = 1e-12;

/// C1 Psi_HH + C2 (Psi_HV + Psi_VH)/sqrt2 + C3 Psi_VV as a 4-vector.
ComplexVector wavefunction(const QutritState& q);

BellCoefficients bell_coefficients(const QutritState& q);
QutritState from_bell(const BellCoefficients& b);

/// Pure-state projector psi psi^dagger in the natural (HH, HV, VH, VV) basis.
ComplexMatrix density_matrix(const QutritState& q);

/// The orthogonal symmetric change of basis to {Psi_HH, Psi_HV, Psi^-, Psi_VV}.
ComplexMatrix basis_transform_u();

/// U rho U; the row and column of the antisymmetric Bell state vanish.
ComplexMatrix transformed_density(const QutritState& q);

/// The non-vanishing 3x3 block of transformed_density, ordered (HH, HV, VV).
ComplexMatrix coherence_matrix(const QutritState& q);

/// Closed-form single-photon reduced matrix.
ComplexMatrix reduced_density(const QutritState& q);

/// |2 C1 C3 - C2^2|
double concurrence(const QutritState& q);

/// 2 / (2 - C^2)
double schmidt_k(const QutritState& q);

EntanglementReport quantify(const QutritState& q);

/// Concurrence from the spin-flipped wave function sigma_y (x) sigma_y psi^*.
double spin_flip_concurrence(const QutritState& q);

/// The spin-flipped wave function itself.
ComplexVector spin_flip(const QutritState& q);

SchmidtDecomposition schmidt_decompose(const QutritState& q);

PolarizationReport polarization(const QutritState& q);

/// Coefficients C_i(alpha) in the polarization frame turned by alpha (radians).
QutritState rotate_basis(const QutritState& q, double alpha);

/// Three-parameter family of factorable qutrits (C = 0, K = 1).
QutritState non_entangled_family(double phi, double phi1, double phi3);

/// Three-parameter family of maximally entangled qutrits (C = 1, K = 2).
QutritState max_entangled_family(double phi, double phi1, double phi3);

/// Real qutrit with the given C+ and the remaining weight sqrt(1 - C+^2)
/// split between C- and C2 at angle chi: C- = r cos(chi), C2 = r sin(chi).
QutritState real_from_c_plus(double c_plus, double chi = 0.0);

/// True when a and b describe the same physical state.
bool same_state(const QutritState& a, const QutritState& b, double tol = 1e-9);

}  // namespace qutrit
}  // namespace biphoton
