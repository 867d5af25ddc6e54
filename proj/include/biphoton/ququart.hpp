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
 * Frequency-nondegenerate biphoton ququarts.
 *
 * Each photon lives in four polarization-frequency modes, ordered
 * (Hh, Hl, Vh, Vl), so a ququart is a two-qudit vector of length 16:
 *
 *   psi = C1 Psi_HH + C2 Psi_HV + C3 Psi_VH + C4 Psi_VV,
 *   Psi_HH = (Hh Hl + Hl Hh)/sqrt2,  Psi_HV = (Hh Vl + Vl Hh)/sqrt2,
 *   Psi_VH = (Vh Hl + Hl Vh)/sqrt2,  Psi_VV = (Vh Vl + Vl Vh)/sqrt2.
 *
 * Both photons at the same frequency cannot be represented.
 */

#pragma once

#include <array>
#include <string_view>

#include "biphoton/linalg.hpp"
#include "biphoton/qutrit.hpp"

namespace biphoton {

class QuquartState {
 public:
  /// Throws ErrorCode::ZeroState on the zero vector.
  QuquartState(Complex c1, Complex c2, Complex c3, Complex c4);

  Complex c(int i) const { return amps_.at(static_cast<std::size_t>(i - 1)); }
  const std::array<Complex, 4>& amplitudes() const noexcept { return amps_; }

 private:
  std::array<Complex, 4> amps_;
};

struct QuquartReport {
  double schmidt_k = 2.0;
  double i_concurrence = 1.0;
  double entropy = 1.0;  // bits
  std::array<double, 4> lambdas{};  // descending
};

struct TwoQubitModelReport {
  double k_2qb = 1.0;
  double c_2qb = 0.0;
  ComplexMatrix rho_r_2qb;
};

namespace ququart {

enum class Mode { Hh = 0, Hl = 1, Vh = 2, Vl = 3 };
enum class Basis { HH, HV, VH, VV };

std::string_view mode_name(Mode m);

/// The two modes occupied by the given basis state, in (high, low) order.
std::array<Mode, 2> basis_modes(Basis b);

ComplexVector basis_wavefunction(Basis label);
ComplexVector wavefunction(const QuquartState& s);

/// 16 x 16 projector; large, so only computed on request.
ComplexMatrix density_matrix(const QuquartState& s);

/// Closed-form 4x4 single-photon reduced matrix.
ComplexMatrix reduced_density(const QuquartState& s);

/// |C1 C4 - C2 C3|
double determinant_modulus(const QuquartState& s);

QuquartReport quantify(const QuquartState& s);

SchmidtDecomposition schmidt_decompose(const QuquartState& s);

struct FamilyPoint {
  QuquartState state;
  double expected_k;
  double expected_entropy;
};

/// (cos phi, 0, 0, sin phi) with its closed-form K and entropy.
FamilyPoint family_psi_phi(double phi);

/// (cos phi/sqrt2, 1/2, 1/2, sin phi/sqrt2)
QuquartState family_psi_phi_prime(double phi);

/// The same four amplitudes read as a pair of distinguishable qubits.
TwoQubitModelReport two_qubit_model(const QuquartState& s);

/// Coefficients in the polarization frame turned by 45 degrees.
QuquartState rotate_basis_45(const QuquartState& s);

struct PostSelected {
  ComplexVector wavefunction;  // 16 entries, photon index = polarization*2 + angle
  double k_total;              // from the 16-dimensional partial trace
  double k_qutrit;             // closed form of the input qutrit
};

/// Qutrit after a non-selective beam splitter with unsplit pairs removed.
PostSelected qutrit_to_ququart_postselect(const QutritState& q);

bool same_state(const QuquartState& a, const QuquartState& b, double tol = 1e-9);

}  // namespace ququart
}  // namespace biphoton
