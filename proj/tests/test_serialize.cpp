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

#include "biphoton/errors.hpp"
#include "biphoton/reconstruct.hpp"
#include "biphoton/serialize.hpp"

using namespace biphoton;
using serialize::Json;

namespace {

ErrorCode parse_error(const Json& j) {
  try {
    serialize::record_from_json(j);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("record accepted");
  return ErrorCode::BadDimension;
}

}  // namespace

TEST_CASE("complex numbers") {
  CHECK(serialize::complex_to_json({0.5, -0.25}) == Json{{"re", 0.5}, {"im", -0.25}});
  CHECK(serialize::complex_from_json(Json{{"re", 1.5}, {"im", 2.0}}) == Complex(1.5, 2.0));
  CHECK(serialize::complex_from_json(Json{{"re", 1.5}}) == Complex(1.5, 0.0));
  CHECK(serialize::complex_from_json(Json::array({1.0, -1.0})) == Complex(1.0, -1.0));
  CHECK(serialize::complex_from_json(Json(0.25)) == Complex(0.25, 0.0));
  CHECK_THROWS_AS(serialize::complex_from_json(Json("1+2i")), Error);
  CHECK_THROWS_AS(serialize::complex_from_json(Json{{"re", 1.0}, {"im", "x"}}), Error);
}

TEST_CASE("coincidence records survive a round trip") {
  ExperimentConfig cfg;
  cfg.noise = NoiseMode::Sampled;
  cfg.seed = 99;
  cfg.eta = 0.9;
  cfg.basis = MeasurementBasis::Rotated45;
  for (const auto& rec : {measurement::simulate(QutritState(0.3, 0.5, 0.8), cfg),
                          measurement::simulate(QuquartState(0.1, 0.2, 0.3, 0.4), cfg)}) {
    const Json j = serialize::to_json(rec);
    CHECK(j.at("schema") == "coincidence/1");
    CHECK(j.at("basis") == "rotated45");
    CHECK(j.at("mode") == "sampled");
    CHECK(j.at("seed") == 99);
    const auto back = serialize::record_from_json(Json::parse(serialize::dump(j)));
    CHECK(back.kind == rec.kind);
    CHECK(back.basis == rec.basis);
    CHECK(back.mode == rec.mode);
    CHECK(back.eta == rec.eta);
    CHECK(back.total_pairs == rec.total_pairs);
    CHECK(back.seed == rec.seed);
    CHECK(back.counts == rec.counts);
  }
}

TEST_CASE("ideal counts keep full precision") {
  const auto rec = measurement::simulate(QutritState(Complex(0.3, 0.4), -0.5, Complex(0.2, -0.6)), ExperimentConfig{});
  const auto back = serialize::record_from_json(Json::parse(serialize::dump(serialize::to_json(rec))));
  CHECK(back.counts == rec.counts);
}

TEST_CASE("kind is inferred from the labels") {
  Json j = serialize::to_json(measurement::simulate(QuquartState(1.0, 0.0, 0.0, 1.0), ExperimentConfig{}));
  j.erase("kind");
  CHECK(serialize::record_from_json(j).kind == StateKind::Ququart);
}

TEST_CASE("malformed records") {
  const Json good = serialize::to_json(measurement::simulate(QutritState(0.3, 0.5, 0.8), ExperimentConfig{}));
  Json j = good;
  j["schema"] = "coincidence/0";
  CHECK(parse_error(j) == ErrorCode::MalformedRecord);
  j = good;
  j.erase("counts");
  CHECK(parse_error(j) == ErrorCode::MalformedRecord);
  j = good;
  j["basis"] = "diagonal";
  CHECK(parse_error(j) == ErrorCode::MalformedRecord);
  j = good;
  j["eta"] = 1.5;
  CHECK(parse_error(j) == ErrorCode::MalformedRecord);
  j = good;
  j["total_pairs"] = -4;
  CHECK(parse_error(j) == ErrorCode::MalformedRecord);
  j = good;
  j["counts"]["H|H"] = "many";
  CHECK(parse_error(j) == ErrorCode::MalformedRecord);
  CHECK(parse_error(Json::array()) == ErrorCode::MalformedRecord);
}

TEST_CASE("reconstruction result layout") {
  const QutritState q(Complex(0.3, 0.4), -0.5, Complex(0.2, -0.6));
  ExperimentConfig cfg;
  const auto natural = measurement::simulate(q, cfg);
  cfg.basis = MeasurementBasis::Rotated45;
  const auto r = reconstruct::qutrit_phases(reconstruct::estimate_magnitudes(natural, measurement::simulate(q, cfg)));
  const Json j = serialize::to_json(r);
  CHECK(j.at("schema") == "recon/1");
  CHECK(j.at("kind") == "qutrit");
  REQUIRE(j.at("amplitudes").size() == 3);
  CHECK(j.at("amplitudes")[0].contains("re"));
  CHECK(j.at("amplitudes")[0].contains("im"));
  CHECK(j.at("residual").get<double>() == r.residual);
  CHECK(j.at("alternates").size() == r.alternates.size());
  CHECK(j.at("gauge").is_string());
  CHECK(j.at("warnings").is_array());
  CHECK(j.at("status") == "complete");
}

TEST_CASE("dump sorts keys and round-trips floats") {
  const Json j{{"b", 0.1}, {"a", 1.0 / 3.0}};
  const std::string text = serialize::dump(j);
  CHECK(text.find("\"a\"") < text.find("\"b\""));
  CHECK(Json::parse(text).at("a").get<double>() == 1.0 / 3.0);
}

TEST_CASE("reports") {
  const Json e = serialize::to_json(qutrit::quantify(QutritState(0.0, 1.0, 0.0)));
  CHECK(e.at("K").get<double>() == doctest::Approx(2.0));
  CHECK(e.at("C").get<double>() == doctest::Approx(1.0));
  CHECK(e.at("S_r").get<double>() == doctest::Approx(1.0));
  const Json s = serialize::to_json(qutrit::schmidt_decompose(QutritState(1.0, 0.0, 0.0)));
  CHECK(s.at("rank") == 1);
  CHECK(s.at("terms")[0].at("mode_first").size() == 2);
  const Json m = serialize::to_json(ququart::reduced_density(QuquartState(1.0, 0.0, 0.0, 1.0)));
  CHECK(m.size() == 4);
  CHECK(m[0][0].at("re").get<double>() == doctest::Approx(0.25));
}
