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

#include "biphoton/sweep.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "biphoton/errors.hpp"
#include "biphoton/ququart.hpp"
#include "biphoton/qutrit.hpp"

namespace biphoton::sweep {

namespace {

std::string shortest(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

std::optional<Figure> parse_figure(std::string_view name) {
  if (name == "fig1") return Figure::Fig1;
  if (name == "fig4") return Figure::Fig4;
  if (name == "fig5") return Figure::Fig5;
  return std::nullopt;
}

Row evaluate(Figure fig, double parameter, double chi) {
  Row row;
  row.parameter = parameter;
  if (fig == Figure::Fig1) {
    const auto r = qutrit::quantify(qutrit::real_from_c_plus(parameter, chi));
    row.schmidt_k = r.schmidt_k;
    row.concurrence = r.concurrence;
    row.entropy = r.entropy;
    return row;
  }
  const QuquartState s = fig == Figure::Fig4 ? ququart::family_psi_phi(parameter).state
                                             : ququart::family_psi_phi_prime(parameter);
  const auto r = ququart::quantify(s);
  row.schmidt_k = r.schmidt_k;
  row.concurrence = r.i_concurrence;
  row.entropy = r.entropy;
  return row;
}

std::vector<Row> run(Figure fig, int points, double chi) {
  if (points < 2) throw Error(ErrorCode::MalformedRecord, "a sweep needs at least two points");
  const double lo = fig == Figure::Fig1 ? -1.0 : 0.0;
  const double hi = fig == Figure::Fig1 ? 1.0 : std::numbers::pi;
  std::vector<Row> rows;
  rows.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    // Hit the right end exactly.
    const double t = i == points - 1 ? hi : lo + (hi - lo) * i / (points - 1);
    rows.push_back(evaluate(fig, t, chi));
  }
  return rows;
}

std::string to_csv(Figure fig, const std::vector<Row>& rows) {
  std::string out = fig == Figure::Fig1 ? "C_plus,K,C,S_r\n" : "phi,K,C_I,S_r\n";
  for (const auto& r : rows) {
    out += shortest(r.parameter) + "," + shortest(r.schmidt_k) + "," + shortest(r.concurrence) + "," +
           shortest(r.entropy) + "\n";
  }
  return out;
}

}  // namespace biphoton::sweep
