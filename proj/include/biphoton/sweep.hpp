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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace biphoton::sweep {

/// fig1: real qutrits C+ Phi+ + C- Phi- + C2 Psi_HV over C+ in [-1, 1] with
///       C- = sqrt(1 - C+^2) cos(chi), C2 = sqrt(1 - C+^2) sin(chi).
/// fig4: (cos phi, 0, 0, sin phi) ququarts over phi in [0, pi].
/// fig5: (cos phi/sqrt2, 1/2, 1/2, sin phi/sqrt2) ququarts over phi in [0, pi].
enum class Figure { Fig1, Fig4, Fig5 };

std::optional<Figure> parse_figure(std::string_view name);

struct Row {
  double parameter = 0.0;
  double schmidt_k = 1.0;
  double concurrence = 0.0;  // C for fig1, C_I otherwise
  double entropy = 0.0;
};

Row evaluate(Figure fig, double parameter, double chi = 0.0);

/// `points` >= 2 evenly spaced parameters, both ends included.
std::vector<Row> run(Figure fig, int points, double chi = 0.0);

/// Header row then one line per row; shortest round-trip floats.
std::string to_csv(Figure fig, const std::vector<Row>& rows);

}  // namespace biphoton::sweep
