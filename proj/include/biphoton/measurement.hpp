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
 * Coincidence counting behind a non-selective beam splitter.
 *
 * Only split pairs reach both channels, so the coincidence total is
 * (eta/2) N_pairs.  A same-mode pair (HH, VV) lands in a single setting
 * (H|H, V|V); a pair occupying two different modes is shared equally by the
 * two orderings (H|V and V|H).  The detector efficiency enters once, as a
 * pair-detection probability.
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biphoton/qutrit.hpp"
#include "biphoton/ququart.hpp"

namespace biphoton {

enum class StateKind { Qutrit, Ququart };
enum class MeasurementBasis { Natural, Rotated45 };
enum class NoiseMode { Ideal, Sampled };

std::string_view to_string(StateKind k);
std::string_view to_string(MeasurementBasis b);
std::string_view to_string(NoiseMode m);

struct ExperimentConfig {
  std::uint64_t total_pairs = 1'000'000;
  double eta = 1.0;
  MeasurementBasis basis = MeasurementBasis::Natural;
  NoiseMode noise = NoiseMode::Ideal;
  std::uint64_t seed = 0;

  /// Throws ErrorCode::MalformedRecord for eta outside (0, 1] or zero pairs.
  void validate() const;
};

/// Setting labels are "first|second": the setting in channel I, then the
/// setting in channel II.  Ideal records hold expected (real) counts,
/// sampled records hold integers.
class CoincidenceRecord {
 public:
  StateKind kind = StateKind::Qutrit;
  MeasurementBasis basis = MeasurementBasis::Natural;
  NoiseMode mode = NoiseMode::Ideal;
  double eta = 1.0;
  std::uint64_t total_pairs = 0;
  std::optional<std::uint64_t> seed;
  std::map<std::string, double> counts;

  double total_coincidences() const;

  /// counts / total; throws ErrorCode::MalformedRecord when the total is not positive.
  std::map<std::string, double> conditional_probabilities() const;

  /// Row sums of the conditional probabilities over the channel-II setting.
  std::map<std::string, double> single_particle() const;
};

/// Every setting pair a complete record of this kind carries.
const std::vector<std::string>& required_settings(StateKind kind);

namespace measurement {

/// psi (x) (1/2)(1, -1) (x) (1, -1) over the two output ports of the beam
/// splitter.  Single-photon index is polarization*2 + port.
ComplexVector beam_splitter_wavefunction(const QutritState& q);

CoincidenceRecord expected_coincidences(const QutritState& q, const ExperimentConfig& cfg);
CoincidenceRecord expected_coincidences(const QuquartState& s, const ExperimentConfig& cfg);

/// Binomially thinned coincidence total, multinomial over the pair classes,
/// then an even binomial split of every two-mode class between its two
/// orderings.  Deterministic for a fixed cfg.seed.
CoincidenceRecord sample_coincidences(const QutritState& q, const ExperimentConfig& cfg);
CoincidenceRecord sample_coincidences(const QuquartState& s, const ExperimentConfig& cfg);

/// Dispatches on cfg.noise.
CoincidenceRecord simulate(const QutritState& q, const ExperimentConfig& cfg);
CoincidenceRecord simulate(const QuquartState& s, const ExperimentConfig& cfg);

}  // namespace measurement
}  // namespace biphoton
