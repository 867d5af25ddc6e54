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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "biphoton/ququart.hpp"
#include "oracles.hpp"

using namespace biphoton;
using std::numbers::pi;

namespace {

oracle::CVec as_cvec(const ComplexVector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

TEST_CASE("ququart wave function matches creation operators") {
  oracle::RandomStates rs(31);
  for (int t = 0; t < 100; ++t) {
    const QuquartState s = rs.ququart();
    CHECK(oracle::max_abs_diff(as_cvec(ququart::wavefunction(s)), oracle::ququart_psi(s)) < 1e-15);
  }
  CHECK(ququart::mode_name(ququart::Mode::Vl) == "Vl");
}

TEST_CASE("closed-form reduced matrix and K against the 16-dimensional oracle") {
  oracle::RandomStates rs(32);
  for (int t = 0; t < 200; ++t) {
    const QuquartState s = rs.ququart();
    const auto ref = oracle::reduced(oracle::ququart_psi(s), 4);
    const ComplexMatrix r = ququart::reduced_density(s);
    for (int i = 0; i < 4; ++i) {
      for (int k = 0; k < 4; ++k) CHECK(std::abs(r(i, k) - ref[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) < 1e-14);
    }
    const auto rep = ququart::quantify(s);
    CHECK(std::abs(rep.schmidt_k - 1.0 / oracle::purity(ref)) < 1e-12);
    CHECK(std::abs(rep.i_concurrence - std::sqrt(2.0 * (1.0 - 1.0 / rep.schmidt_k))) < 1e-12);
  }
}

TEST_CASE("frozen ququart values") {
  const auto r = ququart::quantify(QuquartState({0.1, 0.2}, {0.3, -0.4}, {-0.5, 0.1}, {0.2, 0.6}));
  CHECK(r.schmidt_k == doctest::Approx(2.0766110860748106).epsilon(1e-13));
  CHECK(r.i_concurrence == doctest::Approx(1.0182791174874952).epsilon(1e-13));
  CHECK(r.entropy == doctest::Approx(1.134646573526823).epsilon(1e-12));
  CHECK(r.lambdas[0] == doctest::Approx(0.4906001971343977).epsilon(1e-12));
  CHECK(r.lambdas[3] == doctest::Approx(0.009399802865602177).epsilon(1e-10));

  const auto f = ququart::quantify(QuquartState(std::cos(pi / 6), 0.0, 0.0, std::sin(pi / 6)));
  CHECK(f.schmidt_k == doctest::Approx(3.2).epsilon(1e-13));
  CHECK(f.entropy == doctest::Approx(1.8112781244591325).epsilon(1e-12));
}

TEST_CASE("extreme ququarts") {
  for (const QuquartState& s : {QuquartState(1.0, 0.0, 0.0, 1.0), QuquartState(1.0, 1.0, 1.0, -1.0)}) {
    const auto r = ququart::quantify(s);
    CHECK(std::abs(r.schmidt_k - 4.0) < 1e-12);
    CHECK(std::abs(r.i_concurrence - std::sqrt(1.5)) < 1e-12);
    CHECK(std::abs(r.entropy - 2.0) < 1e-12);
  }
  for (auto b : {ququart::Basis::HH, ququart::Basis::HV, ququart::Basis::VH, ququart::Basis::VV}) {
    ComplexVector psi = ququart::basis_wavefunction(b);
    CHECK(std::abs(1.0 / linalg::purity(linalg::reduced_from_vector(psi, 4)) - 2.0) < 1e-12);
  }
}

TEST_CASE("family psi_phi") {
  for (double phi : {0.0, 0.3, pi / 4, 1.0, pi / 2, 2.5}) {
    const auto fp = ququart::family_psi_phi(phi);
    const auto r = ququart::quantify(fp.state);
    CHECK(std::abs(r.schmidt_k - fp.expected_k) < 1e-12);
    CHECK(std::abs(r.entropy - fp.expected_entropy) < 1e-12);
    CHECK(std::abs(r.i_concurrence - std::sqrt(1.0 + 0.5 * std::pow(std::sin(2 * phi), 2))) < 1e-12);
  }
}

TEST_CASE("family psi_phi_prime is asymmetric") {
  CHECK(std::abs(ququart::quantify(ququart::family_psi_phi_prime(0.0)).schmidt_k - 16.0 / 7.0) < 1e-12);
  CHECK(std::abs(ququart::quantify(ququart::family_psi_phi_prime(pi / 4)).schmidt_k - 2.0) < 1e-12);
  CHECK(std::abs(ququart::quantify(ququart::family_psi_phi_prime(3 * pi / 4)).schmidt_k - 4.0) < 1e-12);
}

TEST_CASE("two-qubit model halves K") {
  oracle::RandomStates rs(33);
  for (int t = 0; t < 200; ++t) {
    const QuquartState s = rs.ququart();
    const auto m = ququart::two_qubit_model(s);
    CHECK(std::abs(ququart::quantify(s).schmidt_k - 2.0 * m.k_2qb) < 1e-12);
    // The model's reduced matrix is an honest 2x2 marginal.
    CHECK(std::abs(1.0 / linalg::purity(m.rho_r_2qb) - m.k_2qb) < 1e-12);
  }
  const auto single = ququart::two_qubit_model(QuquartState(1.0, 0.0, 0.0, 0.0));
  CHECK(single.k_2qb == 1.0);
  CHECK(single.c_2qb == 0.0);
}

TEST_CASE("45 degree rotation agrees with rotating polarization on both photons") {
  oracle::RandomStates rs(34);
  for (int t = 0; t < 100; ++t) {
    const QuquartState s = rs.ququart();
    const QuquartState r = ququart::rotate_basis_45(s);
    const auto ref = oracle::rotate_ququart_45(oracle::ququart_psi(s));
    for (int k = 0; k < 4; ++k) CHECK(std::abs(r.c(k + 1) - ref[static_cast<std::size_t>(k)]) < 1e-14);
    CHECK(std::abs(ququart::quantify(r).schmidt_k - ququart::quantify(s).schmidt_k) < 1e-12);
  }
}

TEST_CASE("beam-splitter post-selection doubles K") {
  const auto ps = ququart::qutrit_to_ququart_postselect(QutritState(0.6, 0.0, 0.8));
  CHECK(ps.k_total == doctest::Approx(3.7091988130563807).epsilon(1e-12));
  CHECK(std::abs(ps.wavefunction.norm() - 1.0) < 1e-15);
  oracle::RandomStates rs(35);
  for (int t = 0; t < 100; ++t) {
    const QutritState q = rs.qutrit();
    const auto p = ququart::qutrit_to_ququart_postselect(q);
    oracle::CVec wf(p.wavefunction.data(), p.wavefunction.data() + 16);
    CHECK(std::abs(oracle::schmidt_k(wf, 4) - 2.0 * qutrit::schmidt_k(q)) < 1e-10);
  }
}

TEST_CASE("ququart schmidt decomposition") {
  oracle::RandomStates rs(36);
  for (int t = 0; t < 100; ++t) {
    const QuquartState s = rs.ququart();
    const auto sd = ququart::schmidt_decompose(s);
    CHECK((linalg::reconstruct(sd.terms) - ququart::wavefunction(s)).norm() < 1e-9);
  }
}
