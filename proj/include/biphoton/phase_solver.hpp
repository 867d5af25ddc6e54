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

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace biphoton::phase_solver {

/// Writes the equation mismatches at the given phases into `out`.
using Residual = std::function<void(std::span<const double> phases, std::span<double> out)>;

struct Options {
  int grid_points = 64;       // per unknown, over [-pi, pi)
  int max_seeds = 256;        // lowest discrete grid minima that get refined
  int max_iterations = 200;
  double dedupe_tolerance = 1e-6;
  /// Distances at which every refined root is re-seeded along its flattest
  /// residual direction, to split nearly coincident roots.
  std::vector<double> probe_radii{0.02, 0.05, 0.1, 0.2, 0.4};
};

struct Root {
  std::vector<double> phases;  // wrapped into [0, 2 pi)
  double rms = 0.0;
};

/// Root-mean-square of the residual vector.
double rms(const Residual& f, int equations, std::span<const double> phases);

/// Levenberg-Marquardt refinement of a single starting point.
Root refine(const Residual& f, int equations, std::vector<double> start, int max_iterations = 200);

/// Grid-seeded least squares on the torus [0, 2 pi)^unknowns.  Every
/// discrete local minimum of the grid (plus any extra seeds) is refined,
/// every result is probed along its flattest direction, and the distinct results are returned in lexicographic phase order, whatever
/// their residual.  With zero unknowns the single empty point is returned.
std::vector<Root> solve(const Residual& f, int unknowns, int equations, const Options& options,
                        const std::vector<std::vector<double>>& extra_seeds = {});

/// Angle wrapped into [0, 2 pi).
double wrap(double angle);

}  // namespace biphoton::phase_solver
