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
 * Two-basis tomography of pure biphoton states.
 *
 * Magnitudes |Ci| come straight from the natural-basis record; the
 * rotated-basis record fixes the relative phases up to a set of solutions,
 * usually finite.  Complex conjugation of the state never changes either
 * record, so every solution comes with its mirror image.  For qutrits a
 * second, non-mirror branch generally exists as well and it can carry a
 * different concurrence; all branches are returned.  Some ququarts, e.g.
 * (1, 1, 1, -1)/2, admit a continuous family of fits; the result then lists
 * a sample of it and says so in its warnings.
 */

#pragma once

#include <string>
#include <vector>

#include "biphoton/measurement.hpp"
#include "biphoton/qutrit.hpp"
#include "biphoton/ququart.hpp"

namespace biphoton {

struct MagnitudeEstimate {
  StateKind kind = StateKind::Qutrit;
  std::vector<double> magnitudes;    // |Ci|, natural basis
  std::vector<double> magnitudes45;  // |Ci(45)|
  /// Squared sums before renormalization, natural then rotated.
  double renormalization = 1.0;
  double renormalization45 = 1.0;
  /// 1/sqrt(coincidences) of the sparser record; zero for ideal input.
  double noise_scale = 0.0;
  bool sampled = false;
};

enum class ReconstructionStatus { Complete, PhaseUnobservable };

std::string_view to_string(ReconstructionStatus s);

template <class State>
struct PhaseSolution {
  State state;
  std::vector<double> phases;  // one per amplitude, in the reported gauge
  double residual = 0.0;
};

template <class State>
struct ReconstructionResult {
  State state;
  std::vector<double> phases;
  double residual = 0.0;
  std::vector<PhaseSolution<State>> alternates;
  std::string gauge;
  std::vector<std::string> warnings;
  ReconstructionStatus status = ReconstructionStatus::Complete;

  /// Canonical solution followed by the alternates.
  std::vector<State> candidates() const {
    std::vector<State> out{state};
    for (const auto& a : alternates) out.push_back(a.state);
    return out;
  }
};

using QutritReconstruction = ReconstructionResult<QutritState>;
using QuquartReconstruction = ReconstructionResult<QuquartState>;

namespace reconstruct {

inline constexpr double kIdealZeroThreshold = 1e-4;
inline constexpr double kResidualCeiling = 0.05;
inline constexpr double kRenormalizationWarning = 0.05;

/// Squared magnitudes are counts over the expected coincidence total
/// eta*N_pairs/2, or over the observed total when N_pairs is unknown.
/// Throws IncompleteRecord, MalformedRecord, or BasisMismatch (wrong kind).
std::vector<double> magnitudes_from_record(const CoincidenceRecord& rec, StateKind kind);

/// Throws BasisMismatch unless `natural` and `rotated` are one natural and
/// one rotated45 record of the same kind.
MagnitudeEstimate estimate_magnitudes(const CoincidenceRecord& natural,
                                      const CoincidenceRecord& rotated);

/// Magnitudes below this are treated as exactly zero.
double zero_threshold(const MagnitudeEstimate& m);

/// Gauge phi2 = 0.  Throws Inconsistent when nothing fits below the residual ceiling.
QutritReconstruction qutrit_phases(const MagnitudeEstimate& m);

/// Gauge: phases of the nonzero amplitudes sum to zero.
QuquartReconstruction ququart_phases(const MagnitudeEstimate& m);

/// RMS mismatch of a candidate against the rotated-basis data.
double qutrit_residual(const MagnitudeEstimate& m, const QutritState& q);
double ququart_residual(const MagnitudeEstimate& m, const QuquartState& s);

struct ShortcutResult {
  double schmidt_k = 1.0;
  double concurrence = 0.0;  // C for qutrits, C_I for ququarts
  double d2 = 0.0;           // |C1C4 - C2C3|^2, ququarts only
  bool clipped = false;
};

/// Real coefficients only.  Singles are formed from the magnitudes.
ShortcutResult qutrit_real_shortcut(const MagnitudeEstimate& m);

/// Real coefficients only.  Out-of-range determinants throw Inconsistent
/// unless `allow_clip`, in which case the clipped value is flagged.
ShortcutResult ququart_real_shortcut(const MagnitudeEstimate& m, bool allow_clip = false);

}  // namespace reconstruct
}  // namespace biphoton
