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

#include "biphoton/reconstruct.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>

#include "biphoton/errors.hpp"
#include "biphoton/phase_solver.hpp"

namespace biphoton {

std::string_view to_string(ReconstructionStatus s) {
  return s == ReconstructionStatus::Complete ? "complete" : "phase_unobservable";
}

namespace reconstruct {

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double squared_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

void renormalize(std::vector<double>& v, double squared) {
  const double n = std::sqrt(squared);
  for (double& x : v) x /= n;
}

// Squared magnitudes, unnormalized.
std::vector<double> squared_magnitudes(const CoincidenceRecord& rec, StateKind kind) {
  if (rec.kind != kind) {
    throw Error(ErrorCode::BasisMismatch, "record kind " + std::string(to_string(rec.kind)) +
                                              " does not match " + std::string(to_string(kind)));
  }
  const auto& required = required_settings(kind);
  for (const auto& label : required) {
    if (!rec.counts.contains(label)) {
      throw Error(ErrorCode::IncompleteRecord, "record lacks setting " + label);
    }
  }
  for (const auto& [label, n] : rec.counts) {
    if (std::find(required.begin(), required.end(), label) == required.end()) {
      throw Error(ErrorCode::MalformedRecord, "unknown setting " + label);
    }
    if (!std::isfinite(n) || n < 0.0) {
      throw Error(ErrorCode::MalformedRecord, "negative or non-finite count for " + label);
    }
  }
  const double observed = rec.total_coincidences();
  if (!(observed > 0.0)) throw Error(ErrorCode::MalformedRecord, "record has no coincidences");
  const double expected = rec.eta * static_cast<double>(rec.total_pairs) / 2.0;
  const double total = expected > 0.0 ? expected : observed;

  const auto n = [&](const char* label) { return rec.counts.at(label) / total; };
  if (kind == StateKind::Qutrit) {
    return {n("H|H"), n("H|V") + n("V|H"), n("V|V")};
  }
  return {n("Hh|Hl") + n("Hl|Hh"), n("Hh|Vl") + n("Vl|Hh"), n("Vh|Hl") + n("Hl|Vh"),
          n("Vh|Vl") + n("Vl|Vh")};
}

std::array<double, 3> qutrit_observables(const QutritState& q) {
  const QutritState r = qutrit::rotate_basis(q, std::numbers::pi / 4.0);
  return {std::norm(r.c2()), std::norm(r.c1()) - std::norm(r.c3()), 0.0};
}

std::array<double, 3> ququart_observables(const QuquartState& s) {
  const QuquartState r = ququart::rotate_basis_45(s);
  const double w1 = std::norm(r.c(1));
  return {w1 + std::norm(r.c(2)), w1 + std::norm(r.c(3)), w1 + std::norm(r.c(4))};
}

QutritState qutrit_from(const std::vector<double>& a, const std::vector<double>& phi) {
  return {std::polar(a[0], phi[0]), std::polar(a[1], phi[1]), std::polar(a[2], phi[2])};
}

QuquartState ququart_from(const std::vector<double>& a, const std::vector<double>& phi) {
  return {std::polar(a[0], phi[0]), std::polar(a[1], phi[1]), std::polar(a[2], phi[2]),
          std::polar(a[3], phi[3])};
}

// Candidates closer than this are merged when the residual stays low on
// the straight path between them.
constexpr double kValleyRadius = 0.05;
constexpr int kValleySamples = 8;
constexpr double kBarrierFloor = 1e-14;
constexpr std::size_t kMaxAlternates = 63;

double phase_distance(const std::vector<double>& x, const std::vector<double>& y) {
  double d = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double diff = std::abs(phase_solver::wrap(x[k]) - phase_solver::wrap(y[k]));
    d = std::max(d, std::min(diff, 2.0 * std::numbers::pi - diff));
  }
  return d;
}

double accept_tolerance(const MagnitudeEstimate& m) { return 1e-6 + 5.0 * m.noise_scale; }

void add_common_warnings(const MagnitudeEstimate& m, std::vector<std::string>& warnings) {
  for (double r : {m.renormalization, m.renormalization45}) {
    if (std::abs(r - 1.0) > kRenormalizationWarning) {
      warnings.push_back("renormalization factor " + format_number(r) + " departs from 1 by more than 5%");
    }
  }
}

template <class State>
struct Candidate {
  State state;
  std::vector<double> phases;
  double residual;
};

// Interior points of the shortest torus path from x to y.
std::vector<std::vector<double>> segment(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<std::vector<double>> out;
  for (int i = 1; i <= kValleySamples; ++i) {
    const double t = static_cast<double>(i) / (kValleySamples + 1);
    std::vector<double> p(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) p[k] = x[k] + t * std::remainder(y[k] - x[k], 2.0 * std::numbers::pi);
    out.push_back(std::move(p));
  }
  return out;
}

template <class State>
ReconstructionResult<State> assemble(std::vector<Candidate<State>> found, const MagnitudeEstimate& m,
                                     std::string gauge, ReconstructionStatus status,
                                     const std::function<double(const std::vector<double>&)>& residual_at) {
  std::sort(found.begin(), found.end(),
            [](const auto& x, const auto& y) { return x.phases < y.phases; });
  const auto best = std::min_element(found.begin(), found.end(),
                                     [](const auto& x, const auto& y) { return x.residual < y.residual; });
  if (best == found.end() || best->residual > kResidualCeiling) {
    throw Error(ErrorCode::Inconsistent,
                "no phase assignment reproduces the rotated-basis record (best residual " +
                    (best == found.end() ? std::string("n/a") : format_number(best->residual)) + ")");
  }
  const double tol = std::max(accept_tolerance(m), best->residual);
  // Near a double root the residual is flat in one direction and refinement
  // stops at scattered points of one shallow valley.  Best fits go first and
  // absorb any nearby candidate they reach without crossing a barrier.
  std::vector<Candidate<State>> ranked;
  for (auto& c : found) {
    if (c.residual <= tol) ranked.push_back(std::move(c));
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& x, const auto& y) { return x.residual < y.residual; });
  const auto same_valley = [&](const Candidate<State>& x, const Candidate<State>& y) {
    if (phase_distance(x.phases, y.phases) >= kValleyRadius) return false;
    const double ceiling = std::min(tol, std::max(2.0 * y.residual, kBarrierFloor));
    const auto path = segment(x.phases, y.phases);
    return std::all_of(path.begin(), path.end(), [&](const auto& p) { return residual_at(p) <= ceiling; });
  };
  std::vector<Candidate<State>> kept;
  for (auto& c : ranked) {
    if (std::none_of(kept.begin(), kept.end(), [&](const auto& k) { return same_valley(k, c); })) {
      kept.push_back(std::move(c));
    }
  }
  std::sort(kept.begin(), kept.end(), [](const auto& x, const auto& y) { return x.phases < y.phases; });
  const bool continuum = kept.size() > kMaxAlternates + 1;
  const std::size_t total_kept = kept.size();
  if (continuum) kept.erase(kept.begin() + kMaxAlternates + 1, kept.end());

  ReconstructionResult<State> out{kept.front().state, kept.front().phases, kept.front().residual,
                                  {}, std::move(gauge), {}, status};
  for (std::size_t k = 1; k < kept.size(); ++k) {
    out.alternates.push_back({kept[k].state, kept[k].phases, kept[k].residual});
  }
  add_common_warnings(m, out.warnings);
  if (status == ReconstructionStatus::PhaseUnobservable) {
    out.warnings.push_back("vanishing amplitudes leave some relative phases unobservable");
  }
  if (continuum) {
    out.warnings.push_back("solution set is not discrete: " + std::to_string(total_kept) +
                           " distinct phase assignments fit, only the first " +
                           std::to_string(kMaxAlternates + 1) + " are listed");
  } else if (!out.alternates.empty()) {
    out.warnings.push_back(std::to_string(out.alternates.size()) +
                           " alternate solution(s) fit the data equally well");
  }
  return out;
}

// With phi1 = 0 each pair equation reads
//   a1 a_p cos(phi_p) + a_x a_y cos(phi_x - phi_y) = t_p,
// where {p, x, y} = {2, 3, 4}.  Solving the best-conditioned one for phi_p
// leaves two equations on a 2-torus, scanned finely enough to separate
// roots that sit closer together than the 3-torus grid spacing.
std::vector<std::vector<double>> ququart_elimination_seeds(const std::vector<double>& a,
                                                           const std::vector<double>& b) {
  constexpr int kGrid = 192;
  constexpr std::size_t kPerBranch = 64;
  const auto t = [&](int k) { return b[0] * b[0] + b[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(k)] - 0.5; };
  // Pair equation with pivot phase k (1-based amplitude index k+1) uses measured pair (0, j).
  // pivot 2 (phi3) <- pair (1,2); pivot 1 (phi2) <- pair (1,3); pivot 3 (phi4) <- pair (1,4).
  const auto target = [&](int pivot) { return pivot == 2 ? t(1) : pivot == 1 ? t(2) : t(3); };

  int p = 1;
  for (int k : {2, 3}) {
    if (a[static_cast<std::size_t>(k)] > a[static_cast<std::size_t>(p)]) p = k;
  }
  int x = p == 1 ? 2 : 1;
  int y = p == 3 ? 2 : 3;
  const auto A = [&](int k) { return a[static_cast<std::size_t>(k)]; };
  const double step = 2.0 * std::numbers::pi / kGrid;

  std::vector<std::vector<double>> seeds;
  for (int branch : {1, -1}) {
    std::vector<double> cost(kGrid * kGrid);
    std::vector<double> pivot(kGrid * kGrid);
    for (int i = 0; i < kGrid; ++i) {
      for (int j = 0; j < kGrid; ++j) {
        const double px = i * step, py = j * step;
        double c = (target(p) - A(x) * A(y) * std::cos(px - py)) / (A(0) * A(p));
        double penalty = 0.0;
        if (std::abs(c) > 1.0) {
          penalty = std::pow((std::abs(c) - 1.0) * A(0) * A(p), 2);
          c = std::clamp(c, -1.0, 1.0);
        }
        const double pp = branch * std::acos(c);
        const double ex = A(0) * A(x) * std::cos(px) + A(p) * A(y) * std::cos(pp - py) - target(x);
        const double ey = A(0) * A(y) * std::cos(py) + A(p) * A(x) * std::cos(pp - px) - target(y);
        cost[static_cast<std::size_t>(i * kGrid + j)] = ex * ex + ey * ey + penalty;
        pivot[static_cast<std::size_t>(i * kGrid + j)] = pp;
      }
    }
    std::vector<std::size_t> minima;
    for (int i = 0; i < kGrid; ++i) {
      for (int j = 0; j < kGrid; ++j) {
        const std::size_t here = static_cast<std::size_t>(i * kGrid + j);
        bool is_min = true;
        for (int di = -1; di <= 1 && is_min; ++di) {
          for (int dj = -1; dj <= 1; ++dj) {
            const std::size_t there =
                static_cast<std::size_t>(((i + di + kGrid) % kGrid) * kGrid + (j + dj + kGrid) % kGrid);
            if (cost[there] < cost[here]) {
              is_min = false;
              break;
            }
          }
        }
        if (is_min) minima.push_back(here);
      }
    }
    std::sort(minima.begin(), minima.end(), [&](std::size_t u, std::size_t v) { return cost[u] < cost[v]; });
    if (minima.size() > kPerBranch) minima.resize(kPerBranch);
    for (std::size_t idx : minima) {
      std::vector<double> phi(3);
      phi[static_cast<std::size_t>(x - 1)] = static_cast<double>(idx / kGrid) * step;
      phi[static_cast<std::size_t>(y - 1)] = static_cast<double>(idx % kGrid) * step;
      phi[static_cast<std::size_t>(p - 1)] = pivot[idx];
      seeds.push_back(std::move(phi));
    }
  }
  return seeds;
}

}  // namespace

std::vector<double> magnitudes_from_record(const CoincidenceRecord& rec, StateKind kind) {
  auto w = squared_magnitudes(rec, kind);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<double> a;
  for (double x : w) a.push_back(std::sqrt(x / total));
  return a;
}

MagnitudeEstimate estimate_magnitudes(const CoincidenceRecord& natural, const CoincidenceRecord& rotated) {
  if (natural.kind != rotated.kind) {
    throw Error(ErrorCode::BasisMismatch, "records describe different kinds of state");
  }
  if (natural.basis != MeasurementBasis::Natural || rotated.basis != MeasurementBasis::Rotated45) {
    throw Error(ErrorCode::BasisMismatch, "need one natural and one rotated45 record");
  }
  MagnitudeEstimate m;
  m.kind = natural.kind;
  const auto w = squared_magnitudes(natural, m.kind);
  const auto w45 = squared_magnitudes(rotated, m.kind);
  for (double x : w) m.magnitudes.push_back(std::sqrt(x));
  for (double x : w45) m.magnitudes45.push_back(std::sqrt(x));
  m.renormalization = squared_sum(m.magnitudes);
  m.renormalization45 = squared_sum(m.magnitudes45);
  renormalize(m.magnitudes, m.renormalization);
  renormalize(m.magnitudes45, m.renormalization45);
  m.sampled = natural.mode == NoiseMode::Sampled || rotated.mode == NoiseMode::Sampled;
  if (m.sampled) {
    const double n = std::min(natural.total_coincidences(), rotated.total_coincidences());
    m.noise_scale = 1.0 / std::sqrt(n);
  }
  return m;
}

double zero_threshold(const MagnitudeEstimate& m) {
  return m.sampled ? 3.0 * m.noise_scale : kIdealZeroThreshold;
}

double qutrit_residual(const MagnitudeEstimate& m, const QutritState& q) {
  const auto& b = m.magnitudes45;
  const auto o = qutrit_observables(q);
  const double r0 = o[0] - b[1] * b[1];
  const double r1 = o[1] - (b[0] * b[0] - b[2] * b[2]);
  return std::sqrt((r0 * r0 + r1 * r1) / 2.0);
}

double ququart_residual(const MagnitudeEstimate& m, const QuquartState& s) {
  const auto& b = m.magnitudes45;
  const auto o = ququart_observables(s);
  double sum = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double r = o[static_cast<std::size_t>(k)] - (b[0] * b[0] + b[static_cast<std::size_t>(k) + 1] * b[static_cast<std::size_t>(k) + 1]);
    sum += r * r;
  }
  return std::sqrt(sum / 3.0);
}

QutritReconstruction qutrit_phases(const MagnitudeEstimate& m) {
  if (m.kind != StateKind::Qutrit || m.magnitudes.size() != 3 || m.magnitudes45.size() != 3) {
    throw Error(ErrorCode::BadDimension, "qutrit reconstruction needs three magnitudes per basis");
  }
  const auto& a = m.magnitudes;
  const auto& b = m.magnitudes45;
  const double thr = zero_threshold(m);
  const bool nz1 = a[0] >= thr, nz2 = a[1] >= thr, nz3 = a[2] >= thr;

  // Which amplitude phases are free, and which one is pinned at zero.
  std::vector<int> free;
  std::string gauge;
  auto status = ReconstructionStatus::Complete;
  if (nz2) {
    gauge = "phi2 = 0";
    if (nz1) free.push_back(0);
    if (nz3) free.push_back(2);
  } else {
    status = ReconstructionStatus::PhaseUnobservable;
    gauge = "phi2 unobservable; phi3 = 0";
    if (nz1 && nz3) free.push_back(0);
  }

  const auto expand = [&](std::span<const double> x) {
    std::vector<double> phi(3, 0.0);
    for (std::size_t k = 0; k < free.size(); ++k) phi[static_cast<std::size_t>(free[k])] = x[k];
    return phi;
  };
  const phase_solver::Residual f = [&](std::span<const double> x, std::span<double> out) {
    const auto o = qutrit_observables(qutrit_from(a, expand(x)));
    out[0] = o[0] - b[1] * b[1];
    out[1] = o[1] - (b[0] * b[0] - b[2] * b[2]);
  };

  // Exact roots of the noiseless system seed the search directly.
  std::vector<std::vector<double>> seeds;
  if (free.size() == 2) {
    const double cos_delta =
        std::clamp(((a[0] * a[0] + a[2] * a[2]) / 2.0 - b[1] * b[1]) / (a[0] * a[2]), -1.0, 1.0);
    const double target = (b[0] * b[0] - b[2] * b[2]) / (std::sqrt(2.0) * a[1]);
    for (double delta : {std::acos(cos_delta), -std::acos(cos_delta)}) {
      const double x = a[0] + a[2] * std::cos(delta), y = a[2] * std::sin(delta);
      const double amp = std::hypot(x, y);
      if (amp == 0.0) continue;
      const double theta = std::atan2(y, x);
      const double spread = std::acos(std::clamp(target / amp, -1.0, 1.0));
      for (double phi1 : {theta + spread, theta - spread}) seeds.push_back({phi1, phi1 - delta});
    }
  }

  phase_solver::Options opts;
  opts.grid_points = 64;
  const auto roots = phase_solver::solve(f, static_cast<int>(free.size()), 2, opts, seeds);

  std::vector<Candidate<QutritState>> found;
  for (const auto& root : roots) {
    const auto phi = expand(root.phases);
    const QutritState q = qutrit_from(a, phi);
    found.push_back({q, phi, qutrit_residual(m, q)});
  }
  return assemble(std::move(found), m, std::move(gauge), status,
                  [&](const std::vector<double>& phi) { return qutrit_residual(m, qutrit_from(a, phi)); });
}

QuquartReconstruction ququart_phases(const MagnitudeEstimate& m) {
  if (m.kind != StateKind::Ququart || m.magnitudes.size() != 4 || m.magnitudes45.size() != 4) {
    throw Error(ErrorCode::BadDimension, "ququart reconstruction needs four magnitudes per basis");
  }
  const auto& a = m.magnitudes;
  const auto& b = m.magnitudes45;
  const double thr = zero_threshold(m);
  std::vector<int> nonzero;
  for (int k = 0; k < 4; ++k) {
    if (a[static_cast<std::size_t>(k)] >= thr) nonzero.push_back(k);
  }
  const auto status = nonzero.size() == 4 ? ReconstructionStatus::Complete
                                          : ReconstructionStatus::PhaseUnobservable;

  // Solve with the first nonzero phase pinned, then shift to the sum gauge.
  const std::size_t unknowns = nonzero.empty() ? 0 : nonzero.size() - 1;
  const auto expand = [&](std::span<const double> x) {
    std::vector<double> phi(4, 0.0);
    for (std::size_t k = 0; k < unknowns; ++k) phi[static_cast<std::size_t>(nonzero[k + 1])] = x[k];
    return phi;
  };
  const phase_solver::Residual f = [&](std::span<const double> x, std::span<double> out) {
    const auto o = ququart_observables(ququart_from(a, expand(x)));
    for (std::size_t k = 0; k < 3; ++k) out[k] = o[k] - (b[0] * b[0] + b[k + 1] * b[k + 1]);
  };

  phase_solver::Options opts;
  opts.grid_points = 32;
  opts.max_seeds = 512;
  std::vector<std::vector<double>> seeds;
  if (nonzero.size() == 4) seeds = ququart_elimination_seeds(a, b);
  const auto roots = phase_solver::solve(f, static_cast<int>(unknowns), 3, opts, seeds);

  std::vector<Candidate<QuquartState>> found;
  for (const auto& root : roots) {
    auto phi = expand(root.phases);
    double sum = 0.0;
    for (int k : nonzero) sum += phi[static_cast<std::size_t>(k)];
    for (int k : nonzero) {
      phi[static_cast<std::size_t>(k)] =
          phase_solver::wrap(phi[static_cast<std::size_t>(k)] - sum / static_cast<double>(nonzero.size()));
    }
    // Report the sum gauge in (-pi, pi] so that the phases visibly add to zero.
    for (double& p : phi) {
      if (p > std::numbers::pi) p -= 2.0 * std::numbers::pi;
    }
    const QuquartState s = ququart_from(a, phi);
    found.push_back({s, phi, ququart_residual(m, s)});
  }
  return assemble(std::move(found), m, "phases of nonzero amplitudes sum to 0 (mod 2pi)", status,
                  [&](const std::vector<double>& phi) { return ququart_residual(m, ququart_from(a, phi)); });
}

ShortcutResult qutrit_real_shortcut(const MagnitudeEstimate& m) {
  const auto& a = m.magnitudes;
  const auto& b = m.magnitudes45;
  // Single-photon probabilities: w_H = |C1|^2 + |C2|^2/2, w_V = |C3|^2 + |C2|^2/2.
  const double dw = a[0] * a[0] - a[2] * a[2];
  const double dw45 = b[0] * b[0] - b[2] * b[2];
  const double inv_k = 0.5 * (1.0 + dw * dw + dw45 * dw45);
  ShortcutResult r;
  r.schmidt_k = 1.0 / inv_k;
  const double c2 = 1.0 - dw * dw - dw45 * dw45;
  r.clipped = c2 < 0.0;
  r.concurrence = std::sqrt(std::max(c2, 0.0));
  return r;
}

ShortcutResult ququart_real_shortcut(const MagnitudeEstimate& m, bool allow_clip) {
  const auto& a = m.magnitudes;
  const auto& b = m.magnitudes45;
  const auto sq = [](double x) { return x * x; };
  const double pair = sq(b[0]) + sq(b[3]) - 0.5;
  double d2 = 2.0 * (sq(a[0]) * sq(a[3]) + sq(a[1]) * sq(a[2])) - pair * pair;
  ShortcutResult r;
  if (d2 < -1e-9 || d2 > 0.25 + 1e-9) {
    const double clipped = std::clamp(d2, 0.0, 0.25);
    if (!allow_clip) {
      throw Error(ErrorCode::Inconsistent, "determinant estimate " + format_number(d2) +
                                               " outside [0, 1/4]; clipped value " +
                                               format_number(clipped));
    }
    r.clipped = true;
  }
  d2 = std::clamp(d2, 0.0, 0.25);
  r.d2 = d2;
  r.schmidt_k = 2.0 / (1.0 - 2.0 * d2);
  r.concurrence = std::sqrt(1.0 + 2.0 * d2);
  return r;
}

}  // namespace reconstruct
}  // namespace biphoton
