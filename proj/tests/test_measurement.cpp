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

#include "biphoton/errors.hpp"
#include "biphoton/measurement.hpp"
#include "oracles.hpp"

using namespace biphoton;

TEST_CASE("Psi_HV splits evenly between the two mixed settings") {
  const auto rec = measurement::simulate(QutritState(0.0, 1.0, 0.0), ExperimentConfig{});
  const auto w = rec.conditional_probabilities();
  CHECK(w.at("H|V") == doctest::Approx(0.5));
  CHECK(w.at("V|H") == doctest::Approx(0.5));
  CHECK(w.at("H|H") == 0.0);
  CHECK(rec.total_coincidences() == doctest::Approx(5e5));
}

TEST_CASE("expected counts follow the pair weights") {
  ExperimentConfig cfg;
  cfg.eta = 0.8;
  const auto rec = measurement::expected_coincidences(QutritState(0.6, 0.0, 0.8), cfg);
  CHECK(rec.counts.at("H|H") == doctest::Approx(144000.0));
  CHECK(rec.counts.at("V|V") == doctest::Approx(256000.0));
  CHECK(rec.counts.at("H|V") == 0.0);
  const auto singles = rec.single_particle();
  CHECK(singles.at("H") == doctest::Approx(0.36));
  CHECK(singles.at("V") == doctest::Approx(0.64));
}

TEST_CASE("beam splitter wave function gives the coincidence weights") {
  oracle::RandomStates rs(41);
  for (int t = 0; t < 50; ++t) {
    const QutritState q = rs.qutrit();
    const ComplexVector out = measurement::beam_splitter_wavefunction(q);
    CHECK(std::abs(out.norm() - 1.0) < 1e-14);
    // Photon index: polarization*2 + port.  Coincidences put one photon per port.
    double hh = 0.0, hv = 0.0, total = 0.0;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        if (a % 2 == b % 2) continue;
        const double p = std::norm(out(a * 4 + b));
        total += p;
        const int pol_port0 = a % 2 == 0 ? a / 2 : b / 2;
        const int pol_port1 = a % 2 == 1 ? a / 2 : b / 2;
        if (pol_port0 == 0 && pol_port1 == 0) hh += p;
        if (pol_port0 == 0 && pol_port1 == 1) hv += p;
      }
    }
    CHECK(total == doctest::Approx(0.5));
    CHECK(hh / total == doctest::Approx(std::norm(q.c1())).epsilon(1e-12));
    CHECK(hv / total == doctest::Approx(std::norm(q.c2()) / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("conditional probabilities do not depend on eta") {
  oracle::RandomStates rs(42);
  const QuquartState s = rs.ququart();
  ExperimentConfig a, b;
  b.eta = 0.37;
  const auto wa = measurement::simulate(s, a).conditional_probabilities();
  const auto wb = measurement::simulate(s, b).conditional_probabilities();
  for (const auto& [label, w] : wa) CHECK(std::abs(w - wb.at(label)) < 1e-12);
}

TEST_CASE("ququart records carry all eight orderings") {
  const auto rec = measurement::simulate(QuquartState(1.0, 0.0, 0.0, 0.0), ExperimentConfig{});
  CHECK(rec.counts.size() == 8);
  CHECK(rec.counts.at("Hh|Hl") == doctest::Approx(2.5e5));
  CHECK(rec.counts.at("Hl|Hh") == doctest::Approx(2.5e5));
  CHECK(rec.counts.at("Vh|Vl") == 0.0);
}

TEST_CASE("rotated basis uses the turned coefficients") {
  ExperimentConfig cfg;
  cfg.basis = MeasurementBasis::Rotated45;
  // (1, 0, 1)/sqrt2 turned by 45 degrees: C1 = C3 = 1/sqrt2, C2 = 0.
  const auto w = measurement::simulate(QutritState(1.0, 0.0, 1.0), cfg).conditional_probabilities();
  CHECK(w.at("H|H") == doctest::Approx(0.5));
  CHECK(w.at("V|V") == doctest::Approx(0.5));
}

TEST_CASE("sampling is reproducible and within statistical bounds") {
  oracle::RandomStates rs(43);
  const QutritState q = rs.qutrit();
  ExperimentConfig cfg;
  cfg.noise = NoiseMode::Sampled;
  cfg.seed = 2024;
  const auto a = measurement::simulate(q, cfg);
  const auto b = measurement::simulate(q, cfg);
  CHECK(a.counts == b.counts);
  CHECK(a.seed == std::optional<std::uint64_t>(2024));
  for (const auto& [label, n] : a.counts) CHECK(n == std::floor(n));

  const auto ideal = measurement::expected_coincidences(q, ExperimentConfig{}).conditional_probabilities();
  int inside = 0;
  constexpr int kSeeds = 200;
  for (int s = 0; s < kSeeds; ++s) {
    cfg.seed = static_cast<std::uint64_t>(s);
    const auto rec = measurement::simulate(q, cfg);
    const double n = rec.total_coincidences();
    bool ok = true;
    for (const auto& [label, w] : rec.conditional_probabilities()) {
      const double p = ideal.at(label);
      ok = ok && std::abs(w - p) <= 5.0 * std::sqrt(p * (1.0 - p) / n) + 1e-12;
    }
    inside += ok;
  }
  CHECK(inside >= kSeeds * 99 / 100);
}

TEST_CASE("invalid configurations") {
  ExperimentConfig cfg;
  cfg.eta = 0.0;
  CHECK_THROWS_AS(measurement::simulate(QutritState(1.0, 0.0, 0.0), cfg), Error);
  cfg.eta = 1.0;
  cfg.total_pairs = 0;
  CHECK_THROWS_AS(measurement::simulate(QutritState(1.0, 0.0, 0.0), cfg), Error);
  CoincidenceRecord empty;
  CHECK_THROWS_AS(empty.conditional_probabilities(), Error);
}
