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

#include "biphoton/phase_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>

namespace biphoton::phase_solver {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double half_cost(const Residual& f, int equations, std::span<const double> x,
                 Eigen::VectorXd& r) {
  r.resize(equations);
  f(x, std::span<double>(r.data(), static_cast<std::size_t>(equations)));
  return 0.5 * r.squaredNorm();
}

double torus_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = std::abs(wrap(a[k]) - wrap(b[k]));
    d = std::max(d, std::min(diff, kTwoPi - diff));
  }
  return d;
}

Eigen::VectorXd flattest_direction(const Residual& f, int equations, const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  constexpr double h = 1e-6;
  Eigen::MatrixXd jac(equations, n);
  Eigen::VectorXd plus, minus;
  for (int k = 0; k < n; ++k) {
    std::vector<double> xp = x, xm = x;
    xp[static_cast<std::size_t>(k)] += h;
    xm[static_cast<std::size_t>(k)] -= h;
    half_cost(f, equations, xp, plus);
    half_cost(f, equations, xm, minus);
    jac.col(k) = (plus - minus) / (2.0 * h);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullV);
  return svd.matrixV().col(n - 1);
}

}  // namespace

double wrap(double angle) {
  double w = std::fmod(angle, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w >= kTwoPi ? 0.0 : w;
}

double rms(const Residual& f, int equations, std::span<const double> phases) {
  if (equations == 0) return 0.0;
  Eigen::VectorXd r;
  return std::sqrt(2.0 * half_cost(f, equations, phases, r) / equations);
}

Root refine(const Residual& f, int equations, std::vector<double> x, int max_iterations) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd r, r_trial, r_plus, r_minus;
  double cost = half_cost(f, equations, x, r);
  double mu = 1e-3;
  constexpr double h = 1e-7;

  for (int it = 0; it < max_iterations && n > 0 && cost > 1e-32; ++it) {
    Eigen::MatrixXd jac(equations, n);
    for (int k = 0; k < n; ++k) {
      std::vector<double> xp = x, xm = x;
      xp[static_cast<std::size_t>(k)] += h;
      xm[static_cast<std::size_t>(k)] -= h;
      half_cost(f, equations, xp, r_plus);
      half_cost(f, equations, xm, r_minus);
      jac.col(k) = (r_plus - r_minus) / (2.0 * h);
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * r;
    if (grad.lpNorm<Eigen::Infinity>() < 1e-18) break;

    bool improved = false;
    for (int attempt = 0; attempt < 30 && !improved; ++attempt) {
      Eigen::MatrixXd a = jtj;
      a.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
      const Eigen::VectorXd step = a.ldlt().solve(-grad);
      std::vector<double> trial = x;
      for (int k = 0; k < n; ++k) trial[static_cast<std::size_t>(k)] += step(k);
      const double trial_cost = half_cost(f, equations, trial, r_trial);
      if (trial_cost < cost) {
        const double step_size = step.lpNorm<Eigen::Infinity>();
        x = std::move(trial);
        r = r_trial;
        cost = trial_cost;
        mu = std::max(mu / 4.0, 1e-15);
        improved = true;
        if (step_size < 1e-15) it = max_iterations;
      } else {
        mu *= 8.0;
      }
    }
    if (!improved) break;
  }

  Root root;
  root.phases.reserve(x.size());
  for (double v : x) root.phases.push_back(wrap(v));
  root.rms = equations == 0 ? 0.0 : std::sqrt(2.0 * cost / equations);
  return root;
}

std::vector<Root> solve(const Residual& f, int unknowns, int equations, const Options& options,
                        const std::vector<std::vector<double>>& extra_seeds) {
  if (unknowns == 0) return {refine(f, equations, {}, 0)};

  const int g = options.grid_points;
  std::size_t total = 1;
  for (int k = 0; k < unknowns; ++k) total *= static_cast<std::size_t>(g);

  const auto point = [&](std::size_t flat) {
    std::vector<double> x(static_cast<std::size_t>(unknowns));
    for (int k = 0; k < unknowns; ++k) {
      x[static_cast<std::size_t>(k)] = -std::numbers::pi + kTwoPi * static_cast<double>(flat % g) / g;
      flat /= static_cast<std::size_t>(g);
    }
    return x;
  };

  std::vector<double> cost(total);
  Eigen::VectorXd r;
  for (std::size_t i = 0; i < total; ++i) cost[i] = half_cost(f, equations, point(i), r);

  // Periodic neighbourhood {-1, 0, 1}^unknowns.
  std::vector<std::vector<int>> offsets;
  const int neighbourhood = static_cast<int>(std::pow(3, unknowns));
  for (int code = 0; code < neighbourhood; ++code) {
    std::vector<int> off(static_cast<std::size_t>(unknowns));
    int c = code;
    bool zero = true;
    for (int k = 0; k < unknowns; ++k) {
      off[static_cast<std::size_t>(k)] = c % 3 - 1;
      zero = zero && off[static_cast<std::size_t>(k)] == 0;
      c /= 3;
    }
    if (!zero) offsets.push_back(std::move(off));
  }

  std::vector<std::size_t> minima;
  std::vector<int> digits(static_cast<std::size_t>(unknowns));
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rest = i;
    for (int k = 0; k < unknowns; ++k) {
      digits[static_cast<std::size_t>(k)] = static_cast<int>(rest % g);
      rest /= static_cast<std::size_t>(g);
    }
    bool is_min = true;
    for (const auto& off : offsets) {
      std::size_t j = 0, stride = 1;
      for (int k = 0; k < unknowns; ++k) {
        const int d = (digits[static_cast<std::size_t>(k)] + off[static_cast<std::size_t>(k)] + g) % g;
        j += static_cast<std::size_t>(d) * stride;
        stride *= static_cast<std::size_t>(g);
      }
      if (cost[j] < cost[i]) {
        is_min = false;
        break;
      }
    }
    if (is_min) minima.push_back(i);
  }
  std::stable_sort(minima.begin(), minima.end(),
                   [&](std::size_t a, std::size_t b) { return cost[a] < cost[b]; });
  if (minima.size() > static_cast<std::size_t>(options.max_seeds)) {
    minima.resize(static_cast<std::size_t>(options.max_seeds));
  }

  std::vector<std::vector<double>> seeds = extra_seeds;
  for (std::size_t i : minima) seeds.push_back(point(i));

  std::vector<Root> roots;
  const auto add = [&](std::vector<double> seed) {
    Root root = refine(f, equations, std::move(seed), options.max_iterations);
    const auto same = std::find_if(roots.begin(), roots.end(), [&](const Root& other) {
      return torus_distance(other.phases, root.phases) < options.dedupe_tolerance;
    });
    if (same == roots.end()) {
      roots.push_back(std::move(root));
    } else if (root.rms < same->rms) {
      *same = std::move(root);
    }
  };
  for (auto& seed : seeds) add(std::move(seed));

  // Nearly coincident roots share one grid basin.  The partner lies along
  // the direction in which the residual is flattest.
  const std::size_t refined = roots.size();
  for (std::size_t k = 0; k < refined; ++k) {
    const std::vector<double> x = roots[k].phases;
    const Eigen::VectorXd dir = flattest_direction(f, equations, x);
    for (double radius : options.probe_radii) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> probe = x;
        for (int i = 0; i < unknowns; ++i) {
          probe[static_cast<std::size_t>(i)] += sign * radius * dir(i);
        }
        add(std::move(probe));
      }
    }
  }
  std::sort(roots.begin(), roots.end(),
            [](const Root& a, const Root& b) { return a.phases < b.phases; });
  return roots;
}

}  // namespace biphoton::phase_solver
