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

#include "biphoton/serialize.hpp"

#include <cmath>

#include "biphoton/errors.hpp"

namespace biphoton::serialize {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::MalformedRecord, what);
}

Json amplitudes_to_json(const auto& amps) {
  Json out = Json::array();
  for (const Complex& z : amps) out.push_back(complex_to_json(z));
  return out;
}

template <class State>
Json result_to_json(const ReconstructionResult<State>& r, StateKind kind) {
  Json j;
  j["schema"] = kResultSchema;
  j["kind"] = std::string(to_string(kind));
  j["amplitudes"] = amplitudes_to_json(r.state.amplitudes());
  j["phases"] = r.phases;
  j["residual"] = r.residual;
  j["gauge"] = r.gauge;
  j["warnings"] = r.warnings;
  j["status"] = std::string(to_string(r.status));
  j["alternates"] = Json::array();
  for (const auto& a : r.alternates) {
    j["alternates"].push_back(
        {{"amplitudes", amplitudes_to_json(a.state.amplitudes())}, {"phases", a.phases}, {"residual", a.residual}});
  }
  return j;
}

template <class T>
T get_field(const Json& j, const char* key) {
  if (!j.contains(key)) malformed(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    malformed(std::string("field \"") + key + "\" has the wrong type");
  }
}

}  // namespace

Json complex_to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_object() && j.contains("re") && j.at("re").is_number()) {
    if (j.contains("im") && !j.at("im").is_number()) malformed("\"im\" must be a number");
    const double im = j.contains("im") ? j.at("im").get<double>() : 0.0;
    return {j.at("re").get<double>(), im};
  }
  malformed("complex numbers are {\"re\": x, \"im\": y} objects");
}

std::vector<Complex> amplitudes_from_json(const Json& j) {
  if (!j.is_array()) malformed("amplitudes must be a JSON array");
  std::vector<Complex> out;
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

Json to_json(const CoincidenceRecord& rec) {
  Json j;
  j["schema"] = kRecordSchema;
  j["kind"] = std::string(to_string(rec.kind));
  j["basis"] = std::string(to_string(rec.basis));
  j["mode"] = std::string(to_string(rec.mode));
  j["eta"] = rec.eta;
  j["total_pairs"] = rec.total_pairs;
  if (rec.seed) j["seed"] = *rec.seed;
  Json counts = Json::object();
  for (const auto& [label, n] : rec.counts) {
    if (rec.mode == NoiseMode::Sampled) {
      counts[label] = static_cast<std::uint64_t>(std::llround(n));
    } else {
      counts[label] = n;
    }
  }
  j["counts"] = counts;
  return j;
}

CoincidenceRecord record_from_json(const Json& j) {
  if (!j.is_object()) malformed("record must be a JSON object");
  if (get_field<std::string>(j, "schema") != kRecordSchema) {
    malformed("unsupported record schema \"" + j.at("schema").get<std::string>() + "\"");
  }
  CoincidenceRecord rec;

  const auto basis = get_field<std::string>(j, "basis");
  if (basis == "natural") {
    rec.basis = MeasurementBasis::Natural;
  } else if (basis == "rotated45") {
    rec.basis = MeasurementBasis::Rotated45;
  } else {
    malformed("unknown basis \"" + basis + "\"");
  }

  const auto mode = get_field<std::string>(j, "mode");
  if (mode == "ideal") {
    rec.mode = NoiseMode::Ideal;
  } else if (mode == "sampled") {
    rec.mode = NoiseMode::Sampled;
  } else {
    malformed("unknown mode \"" + mode + "\"");
  }

  rec.eta = get_field<double>(j, "eta");
  if (!(rec.eta > 0.0 && rec.eta <= 1.0)) malformed("eta must lie in (0, 1]");
  const Json& pairs = j.contains("total_pairs") ? j.at("total_pairs") : Json();
  if (!pairs.is_number_unsigned() && !(pairs.is_number_integer() && pairs.get<std::int64_t>() >= 0)) {
    malformed("total_pairs must be a nonnegative integer");
  }
  rec.total_pairs = pairs.get<std::uint64_t>();
  if (j.contains("seed") && !j.at("seed").is_null()) {
    if (!j.at("seed").is_number_integer()) malformed("seed must be an integer");
    rec.seed = j.at("seed").get<std::uint64_t>();
  }

  const Json& counts = j.contains("counts") ? j.at("counts") : Json();
  if (!counts.is_object()) malformed("counts must be an object");
  for (const auto& [label, n] : counts.items()) {
    if (!n.is_number()) malformed("count for " + label + " is not a number");
    rec.counts[label] = n.get<double>();
  }

  if (j.contains("kind")) {
    const auto kind = get_field<std::string>(j, "kind");
    if (kind == "qutrit") {
      rec.kind = StateKind::Qutrit;
    } else if (kind == "ququart") {
      rec.kind = StateKind::Ququart;
    } else {
      malformed("unknown kind \"" + kind + "\"");
    }
  } else {
    rec.kind = rec.counts.contains("Hh|Hl") ? StateKind::Ququart : StateKind::Qutrit;
  }
  return rec;
}

Json to_json(const QutritReconstruction& r) { return result_to_json(r, StateKind::Qutrit); }
Json to_json(const QuquartReconstruction& r) { return result_to_json(r, StateKind::Ququart); }

Json to_json(const EntanglementReport& r) {
  return {{"K", r.schmidt_k},
          {"C", r.concurrence},
          {"S_r", r.entropy},
          {"lambda_plus", r.lambda_plus},
          {"lambda_minus", r.lambda_minus}};
}

Json to_json(const QuquartReport& r) {
  return {{"K", r.schmidt_k},
          {"C_I", r.i_concurrence},
          {"S_r", r.entropy},
          {"lambdas", std::vector<double>(r.lambdas.begin(), r.lambdas.end())}};
}

Json to_json(const PolarizationReport& r) {
  return {{"xi", std::vector<double>(r.xi.begin(), r.xi.end())}, {"P", r.degree_p}};
}

Json to_json(const SchmidtDecomposition& s) {
  Json terms = Json::array();
  for (const auto& t : s.terms) {
    terms.push_back({{"lambda", t.lambda},
                     {"mode_first", amplitudes_to_json(std::vector<Complex>(t.first.data(), t.first.data() + t.first.size()))},
                     {"mode_second", amplitudes_to_json(std::vector<Complex>(t.second.data(), t.second.data() + t.second.size()))}});
  }
  return {{"rank", s.terms.size()}, {"terms", terms}};
}

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace biphoton::serialize
