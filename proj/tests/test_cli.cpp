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

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "biphoton/qutrit.hpp"
#include "cli.hpp"
#include "oracles.hpp"

using namespace biphoton;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args, const std::string& input = "",
             const std::optional<std::string>& env_seed = std::nullopt) {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, {in, out, err, !input.empty()}, env_seed);
  return {code, out.str(), err.str()};
}

json amplitudes_arg(const QutritState& q) {
  json a = json::array();
  for (const Complex& z : q.amplitudes()) a.push_back({{"re", z.real()}, {"im", z.imag()}});
  return a;
}

}  // namespace

TEST_CASE("quantify Psi_HV") {
  const auto r = call({"quantify", "--kind", "qutrit", "--amplitudes", "[0,1,0]"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("entanglement").at("K").get<double>() == doctest::Approx(2.0));
  CHECK(j.at("entanglement").at("C").get<double>() == doctest::Approx(1.0));
  CHECK(j.at("entanglement").at("S_r").get<double>() == doctest::Approx(1.0));
  CHECK(j.at("polarization").at("P").get<double>() == doctest::Approx(0.0));
  CHECK_FALSE(j.contains("density_matrix"));
}

TEST_CASE("quantify HH and a maximally entangled ququart") {
  const json hh = json::parse(call({"quantify", "--kind", "qutrit", "--amplitudes", "[1,0,0]"}).out);
  CHECK(hh.at("entanglement").at("K").get<double>() == doctest::Approx(1.0));
  CHECK(hh.at("polarization").at("P").get<double>() == doctest::Approx(1.0));

  const auto r = call({"quantify", "--kind", "ququart", "--amplitudes", "[0.7071067811865476,0,0,0.7071067811865476]",
                       "--dump-density"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("entanglement").at("K").get<double>() == doctest::Approx(4.0));
  CHECK(j.at("entanglement").at("C_I").get<double>() == doctest::Approx(std::sqrt(1.5)));
  CHECK(j.at("density_matrix").size() == 16);
}

TEST_CASE("quantify a family") {
  const auto r = call({"quantify", "--family", "psi_phi", "--param", "0.7853981633974483"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("entanglement").at("K").get<double>() == doctest::Approx(4.0));
}

TEST_CASE("input errors exit with 2") {
  CHECK(call({"quantify", "--amplitudes", "[1,0"}).code == 2);
  CHECK(call({"quantify", "--kind", "qutrit", "--amplitudes", "[1,0,0,0]"}).code == 2);
  CHECK(call({"quantify", "--amplitudes", "[0,0,0]"}).code == 2);
  CHECK(call({"quantify"}).code == 2);
  CHECK(call({"quantify", "--family", "psi_phi", "--amplitudes", "[1,0,0]"}).code == 2);
  CHECK(call({"sweep", "--family", "fig9"}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  const auto r = call({"quantify", "--amplitudes", "[\"x\",0,0]"});
  CHECK(r.code == 2);
  CHECK(r.err.rfind("biphoton: ", 0) == 0);
}

TEST_CASE("sweep rows") {
  const auto r = call({"sweep", "--family", "fig1", "--points", "5"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  CHECK(header == "C_plus,K,C,S_r");
  std::vector<std::string> rows;
  while (std::getline(in, row)) rows.push_back(row);
  REQUIRE(rows.size() == 5);
  double v[4];
  REQUIRE(std::sscanf(rows[2].c_str(), "%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3]) == 4);
  CHECK(v[0] == 0.0);
  CHECK(std::abs(v[1] - 2.0) < 1e-12);
  CHECK(std::abs(v[2] - 1.0) < 1e-12);
  CHECK(std::abs(v[3] - 1.0) < 1e-12);

  const auto fig4 = call({"sweep", "--family", "fig4", "--points", "5"});
  CHECK(fig4.out.find("\n0.7853981633974483,4,") != std::string::npos);
}

TEST_CASE("sweep to a file and to an unwritable path") {
  const auto path = std::filesystem::temp_directory_path() / "biphoton_sweep_test.csv";
  REQUIRE(call({"sweep", "--family", "fig5", "--points", "3", "--out", path.string()}).code == 0);
  std::ifstream file(path);
  std::string header;
  std::getline(file, header);
  CHECK(header == "phi,K,C_I,S_r");
  std::filesystem::remove(path);
  CHECK(call({"sweep", "--family", "fig5", "--out", "/nonexistent-dir/x.csv"}).code == 3);
}

TEST_CASE("simulate Psi_HV") {
  const auto r = call({"simulate", "--amplitudes", "[0,1,0]"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("schema") == "coincidence/1");
  CHECK(j.at("basis") == "natural");
  const double total = j.at("counts").at("H|V").get<double>() + j.at("counts").at("V|H").get<double>();
  CHECK(j.at("counts").at("H|V").get<double>() / total == doctest::Approx(0.5));
  CHECK(j.at("counts").at("V|H").get<double>() / total == doctest::Approx(0.5));
}

TEST_CASE("seed flag, environment fallback, determinism") {
  const std::vector<std::string> base{"simulate", "--amplitudes", "[0.3,0.5,0.8]", "--noise", "sampled"};
  auto with_seed = base;
  with_seed.insert(with_seed.end(), {"--seed", "17"});
  const auto a = call(with_seed);
  const auto b = call(with_seed);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(call(base, "", "17").out == a.out);
  CHECK(call(base, "", "18").out != a.out);
  CHECK(call(with_seed, "", "18").out == a.out);
  CHECK(call(base, "", "seventeen").code == 2);
}

TEST_CASE("round trip through the command line") {
  oracle::RandomStates rs(42);
  const QutritState q = rs.qutrit();
  const std::string amps = amplitudes_arg(q).dump();
  const auto natural = call({"simulate", "--amplitudes", amps});
  const auto both = call({"simulate", "--amplitudes", amps, "--basis", "rotated45"}, natural.out);
  REQUIRE(both.code == 0);
  const auto rec = call({"reconstruct"}, both.out);
  REQUIRE(rec.code == 0);
  const json j = json::parse(rec.out);
  CHECK(j.at("schema") == "recon/1");
  const double truth = qutrit::concurrence(q);
  bool found = std::abs(j.at("quantifiers").at("C").get<double>() - truth) <= 1e-6;
  for (const auto& alt : j.at("alternates")) {
    found = found || std::abs(alt.at("quantifiers").at("C").get<double>() - truth) <= 1e-6;
  }
  CHECK(found);
  CHECK(call({"reconstruct"}, both.out).out == rec.out);
}

TEST_CASE("reconstruct contract violations exit with 4") {
  const auto natural = call({"simulate", "--amplitudes", "[0.3,0.5,0.8]"});
  CHECK(call({"reconstruct"}, natural.out).code == 4);
  CHECK(call({"reconstruct"}, natural.out + natural.out).code == 4);
  const auto ququart = call({"simulate", "--amplitudes", "[0.1,0.2,0.3,0.4]", "--basis", "rotated45"});
  CHECK(call({"reconstruct"}, natural.out + ququart.out).code == 4);
  CHECK(call({"reconstruct"}, "{\"schema\":\"coincidence/1\"}\n" + natural.out).code == 2);
  CHECK(call({"reconstruct", "/nonexistent-dir/records.ndjson"}).code == 3);
}

TEST_CASE("compare-2qubit") {
  const auto r = call({"compare-2qubit", "--amplitudes", "[1,0,0,0]"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("K").get<double>() == doctest::Approx(2.0));
  CHECK(j.at("K_2qb").get<double>() == doctest::Approx(1.0));
  CHECK(j.at("K_over_K_2qb").get<double>() == doctest::Approx(2.0));
  CHECK(call({"compare-2qubit", "--amplitudes", "[1,0,0]"}).code == 2);
}
