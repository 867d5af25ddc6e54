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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include "biphoton/errors.hpp"
#include "biphoton/measurement.hpp"
#include "biphoton/reconstruct.hpp"
#include "biphoton/serialize.hpp"
#include "biphoton/sweep.hpp"

namespace biphoton::cli {

namespace {

using serialize::Json;
using AnyState = std::variant<QutritState, QuquartState>;

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, std::string message) { throw Failure{code, std::move(message)}; }

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::BasisMismatch: return kContractMismatch;
    default: return kInputError;
  }
}

struct StateOptions {
  std::string kind;
  std::string amplitudes;
  std::string family;
  std::vector<double> params;
};

void add_state_options(CLI::App* cmd, StateOptions& s) {
  cmd->add_option("--kind", s.kind, "qutrit or ququart")->check(CLI::IsMember({"qutrit", "ququart"}));
  cmd->add_option("--amplitudes", s.amplitudes, "JSON array of {re, im} objects or numbers");
  cmd->add_option("--family", s.family, "non_entangled, max_entangled, psi_phi, psi_phi_prime");
  cmd->add_option("--param", s.params, "family parameters (radians)")->delimiter(',');
}

AnyState build_state(const StateOptions& s) {
  if (s.amplitudes.empty() == s.family.empty()) {
    fail(kInputError, "give exactly one of --amplitudes and --family");
  }
  if (!s.amplitudes.empty()) {
    Json j;
    try {
      j = Json::parse(s.amplitudes);
    } catch (const Json::exception& e) {
      fail(kInputError, std::string("malformed --amplitudes JSON: ") + e.what());
    }
    const auto a = serialize::amplitudes_from_json(j);
    const std::string kind = !s.kind.empty() ? s.kind : a.size() == 4 ? "ququart" : "qutrit";
    if (kind == "qutrit") {
      if (a.size() != 3) fail(kInputError, "a qutrit takes 3 amplitudes, got " + std::to_string(a.size()));
      return QutritState(a[0], a[1], a[2]);
    }
    if (a.size() != 4) fail(kInputError, "a ququart takes 4 amplitudes, got " + std::to_string(a.size()));
    return QuquartState(a[0], a[1], a[2], a[3]);
  }

  const auto param = [&](std::size_t i) { return i < s.params.size() ? s.params[i] : 0.0; };
  const bool qutrit_family = s.family == "non_entangled" || s.family == "max_entangled";
  const bool ququart_family = s.family == "psi_phi" || s.family == "psi_phi_prime";
  if (!qutrit_family && !ququart_family) fail(kInputError, "unknown family \"" + s.family + "\"");
  if (!s.kind.empty() && (s.kind == "qutrit") != qutrit_family) {
    fail(kInputError, "family " + s.family + " is not a " + s.kind + " family");
  }
  if (s.family == "non_entangled") return qutrit::non_entangled_family(param(0), param(1), param(2));
  if (s.family == "max_entangled") return qutrit::max_entangled_family(param(0), param(1), param(2));
  if (s.family == "psi_phi") return ququart::family_psi_phi(param(0)).state;
  return ququart::family_psi_phi_prime(param(0));
}

Json amplitudes_json(const auto& amps) {
  Json out = Json::array();
  for (const Complex& z : amps) out.push_back(serialize::complex_to_json(z));
  return out;
}

Json quantify_json(const AnyState& state, bool dump_density) {
  Json j;
  if (const auto* q = std::get_if<QutritState>(&state)) {
    j["kind"] = "qutrit";
    j["amplitudes"] = amplitudes_json(q->amplitudes());
    j["entanglement"] = serialize::to_json(qutrit::quantify(*q));
    j["polarization"] = serialize::to_json(qutrit::polarization(*q));
    j["schmidt"] = serialize::to_json(qutrit::schmidt_decompose(*q));
    j["reduced_density"] = serialize::to_json(qutrit::reduced_density(*q));
    if (dump_density) j["density_matrix"] = serialize::to_json(qutrit::density_matrix(*q));
  } else {
    const auto& s = std::get<QuquartState>(state);
    j["kind"] = "ququart";
    j["amplitudes"] = amplitudes_json(s.amplitudes());
    j["entanglement"] = serialize::to_json(ququart::quantify(s));
    j["schmidt"] = serialize::to_json(ququart::schmidt_decompose(s));
    j["reduced_density"] = serialize::to_json(ququart::reduced_density(s));
    if (dump_density) j["density_matrix"] = serialize::to_json(ququart::density_matrix(s));
  }
  return j;
}

std::vector<CoincidenceRecord> read_records(std::istream& in, const std::string& source) {
  std::vector<CoincidenceRecord> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {
      fail(kInputError, source + ":" + std::to_string(number) + ": malformed JSON: " + e.what());
    }
    try {
      out.push_back(serialize::record_from_json(j));
    } catch (const Error& e) {
      fail(kInputError, source + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, const std::optional<std::string>& env) {
  if (flag) return *flag;
  if (!env || env->empty()) return 0;
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(env->data(), env->data() + env->size(), v);
  if (ec != std::errc() || ptr != env->data() + env->size()) {
    fail(kInputError, "BIPHOTON_SEED is not a nonnegative integer: " + *env);
  }
  return v;
}

void emit(std::ostream& out, const Json& j) { out << serialize::dump(j) << '\n'; }

}  // namespace

int run(const std::vector<std::string>& args, Streams io, const std::optional<std::string>& env_seed) {
  CLI::App app{"Biphoton qutrit and ququart toolkit"};
  app.name("biphoton");
  app.require_subcommand(1);

  StateOptions state_opts;
  bool dump_density = false;
  auto* quantify = app.add_subcommand("quantify", "Entanglement and polarization report of a state");
  add_state_options(quantify, state_opts);
  quantify->add_flag("--dump-density", dump_density, "include the full two-photon density matrix");

  std::string figure;
  int points = 101;
  std::string out_path;
  double chi = 0.0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Write a figure sweep as CSV");
  sweep_cmd->add_option("--family", figure, "fig1, fig4 or fig5")->required();
  sweep_cmd->add_option("--points", points, "grid points, ends included")->check(CLI::Range(2, 10'000'000));
  sweep_cmd->add_option("--param", chi, "fig1 mixing angle chi between Phi- and Psi_HV");
  sweep_cmd->add_option("--out", out_path, "CSV path (stdout when omitted)");

  StateOptions sim_state;
  std::string basis = "natural", noise = "ideal";
  double eta = 1.0;
  std::uint64_t pairs = 1'000'000;
  std::optional<std::uint64_t> seed;
  bool no_stdin = false;
  auto* simulate = app.add_subcommand("simulate", "Coincidence record of a state; piped records pass through");
  add_state_options(simulate, sim_state);
  simulate->add_option("--basis", basis)->check(CLI::IsMember({"natural", "rotated45"}));
  simulate->add_option("--noise", noise)->check(CLI::IsMember({"ideal", "sampled"}));
  simulate->add_option("--eta", eta, "detector efficiency in (0, 1]");
  simulate->add_option("--pairs", pairs, "number of generated pairs");
  simulate->add_option("--seed", seed, "sampling seed (falls back to BIPHOTON_SEED)");
  simulate->add_flag("--no-stdin", no_stdin, "do not read piped records");

  std::vector<std::string> inputs;
  auto* recon = app.add_subcommand("reconstruct", "Recover a state from a natural and a rotated45 record");
  recon->add_option("inputs", inputs, "record files (newline-delimited JSON); stdin when omitted");

  StateOptions cmp_state;
  auto* compare = app.add_subcommand("compare-2qubit", "Ququart quantifiers next to the two-qubit model");
  add_state_options(compare, cmp_state);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, io.out, io.err);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (quantify->parsed()) {
      emit(io.out, quantify_json(build_state(state_opts), dump_density));
    } else if (sweep_cmd->parsed()) {
      const auto fig = sweep::parse_figure(figure);
      if (!fig) fail(kInputError, "unknown sweep family \"" + figure + "\" (fig1, fig4, fig5)");
      const std::string csv = sweep::to_csv(*fig, sweep::run(*fig, points, chi));
      if (out_path.empty()) {
        io.out << csv;
      } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) fail(kIoError, "cannot open " + out_path + " for writing");
        file << csv;
        if (!file.flush()) fail(kIoError, "write to " + out_path + " failed");
      }
    } else if (simulate->parsed()) {
      const AnyState state = build_state(sim_state);
      std::vector<CoincidenceRecord> upstream;
      if (io.in_is_pipe && !no_stdin) upstream = read_records(io.in, "stdin");
      ExperimentConfig cfg;
      cfg.total_pairs = pairs;
      cfg.eta = eta;
      cfg.basis = basis == "natural" ? MeasurementBasis::Natural : MeasurementBasis::Rotated45;
      cfg.noise = noise == "ideal" ? NoiseMode::Ideal : NoiseMode::Sampled;
      cfg.seed = resolve_seed(seed, env_seed);
      const CoincidenceRecord rec =
          std::visit([&](const auto& s) { return measurement::simulate(s, cfg); }, state);
      for (const auto& r : upstream) emit(io.out, serialize::to_json(r));
      emit(io.out, serialize::to_json(rec));
    } else if (recon->parsed()) {
      std::vector<CoincidenceRecord> records;
      if (inputs.empty()) {
        records = read_records(io.in, "stdin");
      } else {
        for (const auto& path : inputs) {
          std::ifstream file(path);
          if (!file) fail(kIoError, "cannot read " + path);
          auto more = read_records(file, path);
          records.insert(records.end(), more.begin(), more.end());
        }
      }
      if (records.size() != 2) {
        fail(kContractMismatch, "reconstruct needs exactly two records, got " + std::to_string(records.size()));
      }
      std::sort(records.begin(), records.end(),
                [](const auto& a, const auto& b) { return a.basis < b.basis; });
      const auto m = reconstruct::estimate_magnitudes(records[0], records[1]);
      Json j;
      if (m.kind == StateKind::Qutrit) {
        const auto r = reconstruct::qutrit_phases(m);
        j = serialize::to_json(r);
        j["quantifiers"] = serialize::to_json(qutrit::quantify(r.state));
        for (std::size_t k = 0; k < r.alternates.size(); ++k) {
          j["alternates"][k]["quantifiers"] = serialize::to_json(qutrit::quantify(r.alternates[k].state));
        }
      } else {
        const auto r = reconstruct::ququart_phases(m);
        j = serialize::to_json(r);
        j["quantifiers"] = serialize::to_json(ququart::quantify(r.state));
        for (std::size_t k = 0; k < r.alternates.size(); ++k) {
          j["alternates"][k]["quantifiers"] = serialize::to_json(ququart::quantify(r.alternates[k].state));
        }
      }
      emit(io.out, j);
    } else if (compare->parsed()) {
      const AnyState state = build_state(cmp_state);
      const auto* s = std::get_if<QuquartState>(&state);
      if (!s) fail(kInputError, "compare-2qubit takes a ququart");
      const auto full = ququart::quantify(*s);
      const auto model = ququart::two_qubit_model(*s);
      emit(io.out, {{"amplitudes", amplitudes_json(s->amplitudes())},
                    {"K", full.schmidt_k},
                    {"K_2qb", model.k_2qb},
                    {"K_over_K_2qb", full.schmidt_k / model.k_2qb},
                    {"C_I", full.i_concurrence},
                    {"C_2qb", model.c_2qb},
                    {"rho_r_2qb", serialize::to_json(model.rho_r_2qb)}});
    }
  } catch (const Failure& f) {
    io.err << "biphoton: " << f.message << '\n';
    return f.code;
  } catch (const Error& e) {
    io.err << "biphoton: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kOk;
}

}  // namespace biphoton::cli
