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

#include "biphoton/measurement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "biphoton/errors.hpp"

namespace biphoton {

std::string_view to_string(StateKind k) {
  return k == StateKind::Qutrit ? "qutrit" : "ququart";
}

std::string_view to_string(MeasurementBasis b) {
  return b == MeasurementBasis::Natural ? "natural" : "rotated45";
}

std::string_view to_string(NoiseMode m) { return m == NoiseMode::Ideal ? "ideal" : "sampled"; }

void ExperimentConfig::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw Error(ErrorCode::MalformedRecord, "detector efficiency must lie in (0, 1]");
  }
  if (total_pairs == 0) throw Error(ErrorCode::MalformedRecord, "total_pairs must be >= 1");
}

double CoincidenceRecord::total_coincidences() const {
  double total = 0.0;
  for (const auto& [_, n] : counts) total += n;
  return total;
}

std::map<std::string, double> CoincidenceRecord::conditional_probabilities() const {
  const double total = total_coincidences();
  if (!(total > 0.0)) throw Error(ErrorCode::MalformedRecord, "record has no coincidences");
  std::map<std::string, double> w;
  for (const auto& [label, n] : counts) w[label] = n / total;
  return w;
}

std::map<std::string, double> CoincidenceRecord::single_particle() const {
  std::map<std::string, double> s;
  for (const auto& [label, w] : conditional_probabilities()) {
    s[label.substr(0, label.find('|'))] += w;
  }
  return s;
}

const std::vector<std::string>& required_settings(StateKind kind) {
  static const std::vector<std::string> qutrit{"H|H", "H|V", "V|H", "V|V"};
  static const std::vector<std::string> ququart{"Hh|Hl", "Hl|Hh", "Hh|Vl", "Vl|Hh",
                                                "Vh|Hl", "Hl|Vh", "Vh|Vl", "Vl|Vh"};
  return kind == StateKind::Qutrit ? qutrit : ququart;
}

namespace measurement {

namespace {

std::string ordered_label(ququart::Mode a, ququart::Mode b) {
  return std::string(ququart::mode_name(a)) + "|" + std::string(ququart::mode_name(b));
}

constexpr std::array<ququart::Basis, 4> kQuquartBasis = {
    ququart::Basis::HH, ququart::Basis::HV, ququart::Basis::VH, ququart::Basis::VV};

CoincidenceRecord make_record(StateKind kind, const ExperimentConfig& cfg) {
  cfg.validate();
  CoincidenceRecord rec;
  rec.kind = kind;
  rec.basis = cfg.basis;
  rec.mode = cfg.noise;
  rec.eta = cfg.eta;
  rec.total_pairs = cfg.total_pairs;
  if (cfg.noise == NoiseMode::Sampled) rec.seed = cfg.seed;
  for (const auto& label : required_settings(kind)) rec.counts[label] = 0.0;
  return rec;
}

std::array<double, 3> class_weights(const QutritState& q, MeasurementBasis basis) {
  const QutritState m =
      basis == MeasurementBasis::Natural ? q : qutrit::rotate_basis(q, std::numbers::pi / 4.0);
  return {std::norm(m.c1()), std::norm(m.c2()), std::norm(m.c3())};
}

std::array<double, 4> class_weights(const QuquartState& s, MeasurementBasis basis) {
  const QuquartState m = basis == MeasurementBasis::Natural ? s : ququart::rotate_basis_45(s);
  return {std::norm(m.c(1)), std::norm(m.c(2)), std::norm(m.c(3)), std::norm(m.c(4))};
}

template <std::size_t N>
std::array<std::uint64_t, N> draw_classes(std::mt19937_64& rng, std::uint64_t total_pairs,
                                          double eta, const std::array<double, N>& weights) {
  std::binomial_distribution<std::uint64_t> thinning(total_pairs, eta / 2.0);
  std::uint64_t remaining = thinning(rng);
  double mass = 1.0;
  std::array<std::uint64_t, N> out{};
  for (std::size_t k = 0; k + 1 < N; ++k) {
    const double p = mass > 0.0 ? std::clamp(weights[k] / mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::uint64_t> draw(remaining, p);
    out[k] = draw(rng);
    remaining -= out[k];
    mass -= weights[k];
  }
  out[N - 1] = remaining;
  return out;
}

std::pair<double, double> split_evenly(std::mt19937_64& rng, std::uint64_t n) {
  std::binomial_distribution<std::uint64_t> half(n, 0.5);
  const std::uint64_t a = half(rng);
  return {static_cast<double>(a), static_cast<double>(n - a)};
}

}  // namespace

ComplexVector beam_splitter_wavefunction(const QutritState& q) {
  ComplexVector ports(4);
  ports << 0.5, -0.5, -0.5, 0.5;
  return linalg::photonwise_product(qutrit::wavefunction(q), 2, ports, 2);
}

CoincidenceRecord expected_coincidences(const QutritState& q, const ExperimentConfig& cfg) {
  CoincidenceRecord rec = make_record(StateKind::Qutrit, cfg);
  const auto w = class_weights(q, cfg.basis);
  const double n = static_cast<double>(cfg.total_pairs);
  rec.counts["H|H"] = cfg.eta / 2.0 * n * w[0];
  rec.counts["H|V"] = cfg.eta / 4.0 * n * w[1];
  rec.counts["V|H"] = cfg.eta / 4.0 * n * w[1];
  rec.counts["V|V"] = cfg.eta / 2.0 * n * w[2];
  return rec;
}

CoincidenceRecord expected_coincidences(const QuquartState& s, const ExperimentConfig& cfg) {
  CoincidenceRecord rec = make_record(StateKind::Ququart, cfg);
  const auto w = class_weights(s, cfg.basis);
  const double n = static_cast<double>(cfg.total_pairs);
  for (std::size_t k = 0; k < 4; ++k) {
    const auto [a, b] = ququart::basis_modes(kQuquartBasis[k]);
    rec.counts[ordered_label(a, b)] = cfg.eta / 4.0 * n * w[k];
    rec.counts[ordered_label(b, a)] = cfg.eta / 4.0 * n * w[k];
  }
  return rec;
}

CoincidenceRecord sample_coincidences(const QutritState& q, const ExperimentConfig& cfg) {
  CoincidenceRecord rec = make_record(StateKind::Qutrit, cfg);
  rec.mode = NoiseMode::Sampled;
  rec.seed = cfg.seed;
  std::mt19937_64 rng(cfg.seed);
  const auto classes = draw_classes(rng, cfg.total_pairs, cfg.eta, class_weights(q, cfg.basis));
  const auto [hv, vh] = split_evenly(rng, classes[1]);
  rec.counts["H|H"] = static_cast<double>(classes[0]);
  rec.counts["H|V"] = hv;
  rec.counts["V|H"] = vh;
  rec.counts["V|V"] = static_cast<double>(classes[2]);
  return rec;
}

CoincidenceRecord sample_coincidences(const QuquartState& s, const ExperimentConfig& cfg) {
  CoincidenceRecord rec = make_record(StateKind::Ququart, cfg);
  rec.mode = NoiseMode::Sampled;
  rec.seed = cfg.seed;
  std::mt19937_64 rng(cfg.seed);
  const auto classes = draw_classes(rng, cfg.total_pairs, cfg.eta, class_weights(s, cfg.basis));
  for (std::size_t k = 0; k < 4; ++k) {
    const auto [a, b] = ququart::basis_modes(kQuquartBasis[k]);
    const auto [ab, ba] = split_evenly(rng, classes[k]);
    rec.counts[ordered_label(a, b)] = ab;
    rec.counts[ordered_label(b, a)] = ba;
  }
  return rec;
}

CoincidenceRecord simulate(const QutritState& q, const ExperimentConfig& cfg) {
  return cfg.noise == NoiseMode::Ideal ? expected_coincidences(q, cfg)
                                       : sample_coincidences(q, cfg);
}

CoincidenceRecord simulate(const QuquartState& s, const ExperimentConfig& cfg) {
  return cfg.noise == NoiseMode::Ideal ? expected_coincidences(s, cfg)
                                       : sample_coincidences(s, cfg);
}

}  // namespace measurement
}  // namespace biphoton
