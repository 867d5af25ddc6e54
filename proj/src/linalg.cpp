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

#include "biphoton/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "biphoton/errors.hpp"

namespace biphoton::linalg {

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix outer(const ComplexVector& psi) { return psi * psi.adjoint(); }

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, int d, Subsystem which) {
  if (d <= 0 || rho.rows() != Eigen::Index(d) * d || rho.cols() != rho.rows()) {
    throw Error(ErrorCode::BadDimension, "expected a " + std::to_string(d * d) + "x" +
                                             std::to_string(d * d) + " matrix, got " +
                                             std::to_string(rho.rows()) + "x" +
                                             std::to_string(rho.cols()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      Complex acc = 0.0;
      for (int j = 0; j < d; ++j) {
        if (which == Subsystem::Second) {
          acc += rho(i * d + j, k * d + j);
        } else {
          acc += rho(j * d + i, j * d + k);
        }
      }
      out(i, k) = acc;
    }
  }
  return out;
}

namespace {

// Row i holds photon-1 index, column j photon-2 index.
ComplexMatrix as_coefficient_matrix(const ComplexVector& psi, int d) {
  if (d <= 0 || psi.size() != Eigen::Index(d) * d) {
    throw Error(ErrorCode::BadDimension, "vector of length " + std::to_string(psi.size()) +
                                             " is not a two-photon vector with d=" +
                                             std::to_string(d));
  }
  ComplexMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = psi(i * d + j);
  }
  return m;
}

}  // namespace

ComplexMatrix reduced_from_vector(const ComplexVector& psi, int d, Subsystem which) {
  const ComplexMatrix m = as_coefficient_matrix(psi, d);
  if (which == Subsystem::Second) return m * m.adjoint();
  return m.transpose() * m.conjugate();
}

EigenSystem hermitian_eig(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) {
    throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  // Eigen returns ascending order.
  const Eigen::Index n = m.rows();
  EigenSystem out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

RealVector density_spectrum(const ComplexMatrix& rho) {
  RealVector values = hermitian_eig(rho).values;
  if (values.minCoeff() < -kEigenClip) {
    throw Error(ErrorCode::NotHermitian, "matrix has a negative eigenvalue " +
                                             std::to_string(values.minCoeff()));
  }
  for (auto& v : values) v = std::clamp(v, 0.0, 1.0);
  return values;
}

double purity(const ComplexMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.cwiseAbs2().sum();
}

double entropy_bits(const RealVector& probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s;
}

std::vector<SchmidtTerm> schmidt(const ComplexVector& psi, int d, double drop_below) {
  const ComplexMatrix m = as_coefficient_matrix(psi, d);
  const EigenSystem eig = hermitian_eig(m * m.adjoint(), 1e-10);

  std::vector<SchmidtTerm> terms;
  for (int k = 0; k < d; ++k) {
    const double lambda = std::max(eig.values(k), 0.0);
    if (lambda < drop_below) continue;

    ComplexVector u = eig.vectors.col(k);
    bool degenerate = false;
    for (int j = 0; j < d; ++j) {
      if (j != k && std::abs(eig.values(j) - eig.values(k)) < 1e-9) degenerate = true;
    }
    // For symmetric m and a simple eigenvalue, m conj(u) = sqrt(lambda) e^{i theta} u;
    // rotating u by e^{i theta / 2} makes the partner mode equal to u.
    if (!degenerate && (m - m.transpose()).cwiseAbs().maxCoeff() < 1e-12) {
      const Complex c = u.dot(m * u.conjugate());
      if (std::abs(c) > 0.0) u *= std::polar(1.0, 0.5 * std::arg(c));
    }
    const double s = std::sqrt(lambda);
    terms.push_back({lambda, u, (m.transpose() * u.conjugate()) / s});
  }
  return terms;
}

ComplexVector reconstruct(const std::vector<SchmidtTerm>& terms) {
  if (terms.empty()) return {};
  const Eigen::Index d = terms.front().first.size();
  ComplexVector psi = ComplexVector::Zero(d * d);
  for (const auto& t : terms) psi += std::sqrt(t.lambda) * kron(t.first, t.second);
  return psi;
}

ComplexVector photonwise_product(const ComplexVector& a, int da, const ComplexVector& b, int db) {
  if (a.size() != Eigen::Index(da) * da || b.size() != Eigen::Index(db) * db) {
    throw Error(ErrorCode::BadDimension, "photonwise_product operand sizes do not match");
  }
  const int d = da * db;
  ComplexVector out = ComplexVector::Zero(Eigen::Index(d) * d);
  for (int a1 = 0; a1 < da; ++a1)
    for (int a2 = 0; a2 < da; ++a2)
      for (int b1 = 0; b1 < db; ++b1)
        for (int b2 = 0; b2 < db; ++b2) {
          const int p1 = a1 * db + b1;
          const int p2 = a2 * db + b2;
          out(p1 * d + p2) = a(a1 * da + a2) * b(b1 * db + b2);
        }
  return out;
}

ComplexVector swap_photons(const ComplexVector& psi, int d) {
  ComplexVector out(psi.size());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(j * d + i) = psi(i * d + j);
  return out;
}

double overlap(const ComplexVector& a, const ComplexVector& b) {
  return std::abs(a.normalized().dot(b.normalized()));
}

bool equal_up_to_phase(const ComplexVector& a, const ComplexVector& b, double tol) {
  if (a.size() != b.size()) return false;
  const Complex ip = a.dot(b);  // conj(a) . b
  if (std::abs(ip) == 0.0) return a.norm() <= tol && b.norm() <= tol;
  const Complex phase = ip / std::abs(ip);
  return (a * phase - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace biphoton::linalg
