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
 * Small dense complex linear algebra for two-photon states.
 *
 * A two-photon vector of single-photon dimension d is stored as a flat
 * vector of length d*d.  Index (i, j) -- photon 1 in mode i, photon 2 in
 * mode j -- lives at i*d + j, i.e. the first Kronecker factor is the slow
 * index.  Every closed-form matrix in the library depends on this layout.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace biphoton {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

namespace linalg {

enum class Subsystem { First, Second };

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kEigenClip = 1e-12;

ComplexVector kron(const ComplexVector& a, const ComplexVector& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix outer(const ComplexVector& psi);

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTolerance);

/// Traces out one photon of a d^2 x d^2 operator.  Throws
/// ErrorCode::BadDimension unless rho is (d*d) x (d*d).
ComplexMatrix partial_trace(const ComplexMatrix& rho, int d, Subsystem which = Subsystem::Second);

/// Reduced single-photon matrix of a pure two-photon vector, i.e.
/// partial_trace(psi psi^dagger) without forming the full matrix.
ComplexMatrix reduced_from_vector(const ComplexVector& psi, int d, Subsystem which = Subsystem::Second);

struct EigenSystem {
  RealVector values;       // descending
  ComplexMatrix vectors;   // column k belongs to values[k]
};

/// Throws ErrorCode::NotHermitian when m differs from m^dagger by more than tol.
EigenSystem hermitian_eig(const ComplexMatrix& m, double tol = kHermitianTolerance);

/// Eigenvalues of a density matrix after the PSD check, clipped into [0, 1].
RealVector density_spectrum(const ComplexMatrix& rho);

double purity(const ComplexMatrix& rho);

/// -sum p log2 p with 0 log 0 = 0.
double entropy_bits(const RealVector& probabilities);

struct SchmidtTerm {
  double lambda = 0.0;
  ComplexVector first;
  ComplexVector second;
};

/// psi = sum_k sqrt(lambda_k) first_k (x) second_k with lambda descending.
/// Terms with lambda below drop_below are discarded.  For a swap-symmetric
/// psi each non-degenerate term is phase aligned so that first == second.
std::vector<SchmidtTerm> schmidt(const ComplexVector& psi, int d, double drop_below = 1e-12);

ComplexVector reconstruct(const std::vector<SchmidtTerm>& terms);

/// Combines a two-photon vector over variable A (dimension da per photon)
/// with one over variable B (db per photon) into a two-photon vector whose
/// single-photon index is a*db + b.
ComplexVector photonwise_product(const ComplexVector& a, int da, const ComplexVector& b, int db);

/// Swaps photon 1 and photon 2.
ComplexVector swap_photons(const ComplexVector& psi, int d);

/// |<a|b>| with both normalised; 1 means equal up to a global phase.
double overlap(const ComplexVector& a, const ComplexVector& b);

bool equal_up_to_phase(const ComplexVector& a, const ComplexVector& b, double tol);

}  // namespace linalg
}  // namespace biphoton
