// Copyright 2026 The qness Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qness/cli.hpp"

#include <chrono>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qness/correlations.hpp"
#include "qness/interferometer.hpp"
#include "qness/io.hpp"
#include "qness/witness.hpp"

namespace qness::cli {

namespace {

using nlohmann::json;

/// Flag combination that CLI11 cannot express on its own.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::string state_a, state_b, state, out, fringes_out, method = "direct", unitary, mode = "exact", which;
  int shots = 0;
  int phases = 8;
  int grid = 12, starts = 5, max_evals = 2000;
  int dim = 0, rank = 0;
  std::uint64_t seed = 0;
  std::vector<int> dims;
  double phi = 0.0, theta = 0.0;
};

json input_entry(const std::string& role, const std::string& path) {
  return {{"role", role}, {"path", path}, {"sha256", file_digest(path)}};
}

struct Report {
  std::string command;
  json inputs = json::array();
  json results = json::object();
  std::optional<std::uint64_t> seed;
};

void emit(const Report& r, long long timing_ms, const std::string& path, std::ostream& out) {
  json doc{{"schema_version", kSchemaVersion},
           {"command", r.command},
           {"inputs", r.inputs},
           {"results", r.results},
           {"seed", r.seed ? json(*r.seed) : json(nullptr)},
           {"timing_ms", timing_ms}};
  const std::string text = doc.dump(2) + "\n";
  if (path.empty())
    out << text;
  else
    write_text(path, text);
}

FringeMode parse_mode(const std::string& m) { return m == "sampled" ? FringeMode::sampled : FringeMode::exact; }

Report run_witness(const Options& opt, bool seed_given) {
  Report r;
  r.command = "witness";
  const auto a = load_state(opt.state_a).state;
  const auto b = load_state(opt.state_b).state;
  r.inputs.push_back(input_entry("state_a", opt.state_a));
  r.inputs.push_back(input_entry("state_b", opt.state_b));

  if (opt.method == "interfere") {
    const FringeMode mode = opt.shots > 0 ? FringeMode::sampled : FringeMode::exact;
    if (mode == FringeMode::sampled) r.seed = opt.seed;
    const auto res = interferometric_quantumness(a, b, mode, opt.shots, opt.seed);
    r.results = {{"method", to_string(res.witness.method)},
                 {"q_value", res.witness.q_value},
                 {"v1", res.witness.v1_term},
                 {"v2", res.witness.v2_term},
                 {"stderr_q", res.stderr_q},
                 {"mode", mode == FringeMode::sampled ? "sampled" : "exact"},
                 {"shots_per_phase", opt.shots},
                 {"visibilities", {{"u1", visibility_to_json(res.u1)}, {"u2", visibility_to_json(res.u2)}}}};
  } else {
    if (opt.shots > 0 || seed_given) throw UsageError("--shots/--seed only apply to --method interfere");
    const auto method = opt.method == "trace" ? QuantumnessMethod::trace_formula : QuantumnessMethod::direct_norm;
    const auto res = quantumness(a, b, method);
    r.results = {{"method", to_string(res.method)},
                 {"q_value", res.q_value},
                 {"v1", res.v1_term},
                 {"v2", res.v2_term}};
  }
  return r;
}

Report run_interfere(const Options& opt) {
  Report r;
  r.command = "interfere";
  const auto a = load_state(opt.state_a).state;
  const auto b = load_state(opt.state_b).state;
  r.inputs.push_back(input_entry("state_a", opt.state_a));
  r.inputs.push_back(input_entry("state_b", opt.state_b));
  if (a.dim() != b.dim()) throw DimensionError("state-a and state-b differ in dimension");

  const FringeMode mode = parse_mode(opt.mode);
  if (mode == FringeMode::sampled) {
    if (opt.shots < 1) throw UsageError("--mode sampled requires --shots N with N >= 1");
    r.seed = opt.seed;
  }
  if (opt.phases < 3) throw UsageError("--phases must be at least 3");

  const int d = a.dim();
  const RegisterLayout layout({d, d, d, d});
  InterferometerSpec spec{opt.unitary == "u2" ? build_u2(layout) : build_u1(layout),
                          {a, a, b, b},
                          default_phases(opt.phases),
                          mode,
                          opt.shots,
                          opt.seed};
  const auto fringes = run_interferometer(spec);
  const auto vis = extract_visibility(fringes);
  write_fringes(fringes, opt.fringes_out);
  const cplx exact = permutation_expectation(spec.unitary, spec.inputs);

  r.results = {{"unitary", opt.unitary},
               {"mode", opt.mode},
               {"shots_per_phase", mode == FringeMode::sampled ? opt.shots : 0},
               {"phases", opt.phases},
               {"expectation_exact", {{"re", exact.real()}, {"im", exact.imag()}}},
               {"visibility", visibility_to_json(vis)},
               {"fringes", {{"path", opt.fringes_out}, {"sha256", file_digest(opt.fringes_out)}}}};
  return r;
}

Report run_discord(const Options& opt) {
  Report r;
  r.command = "discord";
  const auto loaded = load_state(opt.state);
  r.inputs.push_back(input_entry("state", opt.state));
  const auto rho = loaded.bipartite(std::make_pair(opt.dims.at(0), opt.dims.at(1)));
  if (rho.dim_a() < 2) throw ParseError("discord search needs dim_a >= 2");
  if (opt.grid < 1 || opt.starts < 0 || opt.max_evals < 1) throw UsageError("--grid, --starts and --max-evals must be positive");

  OptimizerConfig cfg;
  cfg.grid = opt.grid;
  cfg.starts = opt.starts;
  cfg.max_evals = opt.max_evals;
  cfg.seed = opt.seed;
  r.seed = opt.seed;
  const auto rep = maximize_witness(rho, cfg);
  r.results = {{"dims", {rho.dim_a(), rho.dim_b()}},
               {"config", {{"grid", cfg.grid}, {"starts", cfg.starts}, {"max_evals", cfg.max_evals}}},
               {"q_value", rep.best_q},
               {"discord", discord_report_to_json(rep, cfg.threshold)}};
  return r;
}

Report run_example(const Options& opt) {
  Report r;
  r.command = "example";
  const bool epr = opt.which == "epr";
  const auto rho = epr ? epr_state() : separable_example_state();
  const auto [e1, e2] = projector_pair({opt.theta, opt.phi});
  const auto c1 = conditional_state(rho, e1);
  const auto c2 = conditional_state(rho, e2);
  const double q = correlation_witness(rho, e1, e2);
  const double s = std::sin(2.0 * opt.phi);
  r.results = {{"state", opt.which},
               {"theta", opt.theta},
               {"phi", opt.phi},
               {"q_value", q},
               {"closed_form", epr ? s * s : s * s / 16.0},
               {"probabilities", {c1.probability, c2.probability}},
               {"conditional_states", {state_to_json(*c1.state), state_to_json(*c2.state)}}};
  return r;
}

Report run_random_state(const Options& opt) {
  Report r;
  r.command = "random-state";
  const auto rho = random_density({opt.dim, opt.rank, opt.seed});
  save_state(opt.out, rho);
  r.seed = opt.seed;
  r.results = {{"dim", opt.dim},
               {"rank", opt.rank},
               {"purity", rho.purity()},
               {"path", opt.out},
               {"sha256", file_digest(opt.out)}};
  return r;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Quantumness measure, interferometer simulation and discord witness", "qness"};
  app.require_subcommand(1);

  auto* witness = app.add_subcommand("witness", "Q(rho_a, rho_b) of two states");
  witness->add_option("--state-a", opt.state_a, "State file for rho_a")->required();
  witness->add_option("--state-b", opt.state_b, "State file for rho_b")->required();
  witness->add_option("--method", opt.method, "direct | trace | interfere")
      ->check(CLI::IsMember({"direct", "trace", "interfere"}));
  witness->add_option("--shots", opt.shots, "Shots per phase (interfere; enables sampling)")
      ->check(CLI::NonNegativeNumber);
  auto* witness_seed = witness->add_option("--seed", opt.seed, "Sampling seed");
  witness->add_option("--out", opt.out, "Report path (default stdout)");

  auto* interfere = app.add_subcommand("interfere", "Fringe data for one SWAP-cascade experiment");
  interfere->add_option("--u", opt.unitary, "u1 | u2")->required()->check(CLI::IsMember({"u1", "u2"}));
  interfere->add_option("--state-a", opt.state_a)->required();
  interfere->add_option("--state-b", opt.state_b)->required();
  interfere->add_option("--phases", opt.phases, "Number of equally spaced phases");
  interfere->add_option("--mode", opt.mode, "exact | sampled")->check(CLI::IsMember({"exact", "sampled"}));
  interfere->add_option("--shots", opt.shots, "Shots per phase")->check(CLI::NonNegativeNumber);
  interfere->add_option("--seed", opt.seed);
  interfere->add_option("--fringes-out", opt.fringes_out, "CSV output")->required();
  interfere->add_option("--out", opt.out);

  auto* discord = app.add_subcommand("discord", "Maximize Q over projective measurements on A");
  discord->add_option("--state", opt.state)->required();
  discord->add_option("--dims", opt.dims, "DA DB")->required()->expected(2);
  discord->add_option("--grid", opt.grid);
  discord->add_option("--starts", opt.starts);
  discord->add_option("--max-evals", opt.max_evals);
  discord->add_option("--seed", opt.seed);
  discord->add_option("--out", opt.out);

  auto* example = app.add_subcommand("example", "Built-in EPR or separable example state");
  example->add_option("state", opt.which, "epr | separable")->required()->check(CLI::IsMember({"epr", "separable"}));
  example->add_option("--phi", opt.phi)->required();
  example->add_option("--theta", opt.theta);
  example->add_option("--out", opt.out);

  auto* random = app.add_subcommand("random-state", "Write a seeded random density matrix");
  random->add_option("--dim", opt.dim)->required()->check(CLI::PositiveNumber);
  random->add_option("--rank", opt.rank)->required()->check(CLI::PositiveNumber);
  random->add_option("--seed", opt.seed)->required();
  random->add_option("--out", opt.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Report r;
    if (*witness)
      r = run_witness(opt, witness_seed->count() > 0);
    else if (*interfere)
      r = run_interfere(opt);
    else if (*discord)
      r = run_discord(opt);
    else if (*example)
      r = run_example(opt);
    else
      r = run_random_state(opt);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    // random-state uses --out for the state file; its report goes to stdout.
    emit(r, static_cast<long long>(ms), *random ? std::string() : opt.out, out);
    return kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  } catch (const ParseError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const InvalidState& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const DimensionError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
}

}  // namespace qness::cli
