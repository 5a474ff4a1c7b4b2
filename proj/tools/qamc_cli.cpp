// Copyright 2026 The QAMC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "qamc/error.hpp"
#include "qamc/experiment.hpp"
#include "qamc/pricing.hpp"
#include "qamc/selftest.hpp"

namespace {

using namespace qamc;

struct Flags {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> jobs;
  std::optional<std::string> payoff;
  std::optional<double> strike;
  std::optional<std::string> encoding;
  std::optional<std::string> ae;
  std::optional<double> epsilon;
  std::optional<double> q;
  std::optional<unsigned> reps;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON experiment config");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--jobs", f.jobs, "parallel runs");
  cmd->add_option("--payoff", f.payoff, "euro_call|euro_put|digital_call|digital_put|futures");
  cmd->add_option("--strike", f.strike, "strike price");
  cmd->add_option("--encoding", f.encoding, "sqrt|direct");
  cmd->add_option("--ae", f.ae, "cae|iqae|mlae|rqae");
  cmd->add_option("--epsilon", f.epsilon, "target amplitude accuracy");
  cmd->add_option("--q", f.q, "RQAE amplification ratio");
  cmd->add_option("--reps", f.reps, "repetitions per cell");
}

PayoffSpec default_contract(PayoffKind kind) {
  for (const auto& c : reference_contracts()) {
    if (c.kind == kind) return c;
  }
  return PayoffSpec{kind, 1.0, 1.0};
}

ExperimentSpec build_spec(const Flags& f) {
  ExperimentSpec spec = f.config.empty() ? parse_spec_text("") : parse_spec(f.config);
  if (f.payoff) {
    PayoffSpec p = default_contract(parse_payoff_kind(*f.payoff));
    if (f.strike) p.strike = *f.strike;
    spec.payoffs = {p};
  } else if (f.strike) {
    for (auto& p : spec.payoffs) p.strike = *f.strike;
  }
  if (f.encoding) spec.encodings = {parse_encoding_kind(*f.encoding)};
  if (f.ae) {
    const AEAlgorithm a = parse_ae_algorithm(*f.ae);
    AlgorithmSweep chosen;
    chosen.algorithm = a;
    for (const auto& s : spec.algorithms) {
      if (s.algorithm == a) {
        chosen = s;
        break;
      }
    }
    spec.algorithms = {chosen};
  }
  for (auto& s : spec.algorithms) {
    if (f.epsilon) s.epsilons = {*f.epsilon};
    if (f.q) s.qs = {*f.q};
    if (f.reps) s.repetitions = *f.reps;
  }
  if (f.reps) {
    spec.repetitions = *f.reps;
    spec.cmc.repetitions = *f.reps;
  }
  if (f.seed) spec.seed = *f.seed;
  if (f.jobs) spec.jobs = *f.jobs;
  if (f.out) spec.out = *f.out;
  spec.validate();
  return spec;
}

void print_kv(const std::string& key, const std::string& value) {
  std::cout << key << ": " << value << '\n';
}

int cmd_price(const Flags& f) {
  const ExperimentSpec spec = build_spec(f);
  const auto cells = expand_cells(spec);
  if (cells.empty()) throw ValidationError("algorithms", "no runnable cell");
  const Cell& cell = cells.front();
  AEConfig ae = cell.ae;
  ae.seed = spec.seed;
  const DiscretizedModel model = discretize(spec.model, spec.grid);
  const PriceResult r = qamc_price(model, cell.payoff, cell.encoding, ae);
  print_kv("cell", cell.id);
  print_kv("expectation_estimate", format_double(r.expectation_estimate));
  print_kv("discounted_price", format_double(r.discounted_price));
  print_kv("reference", format_double(r.reference));
  print_kv("abs_error", format_double(r.abs_error));
  print_kv("oracle_calls", std::to_string(r.cost));
  print_kv("ci", "[" + format_double(r.ci_lo) + ", " + format_double(r.ci_hi) + "]");
  for (const auto& [k, v] : r.metadata) print_kv(k, v);
  for (const auto& flag : r.flags) print_kv("flag", flag);
  return 0;
}

int cmd_sweep(const Flags& f) {
  const ExperimentSpec spec = build_spec(f);
  const SuiteSummary s = run_and_emit(spec);
  std::cout << "records: " << s.records << "  failed: " << s.failed << '\n';
  for (const auto& p : s.files) std::cout << "wrote " << p.string() << '\n';
  return exit_code(s);
}

int cmd_reference(const Flags& f) {
  const ExperimentSpec spec = build_spec(f);
  const DiscretizedModel model = discretize(spec.model, spec.grid);
  std::printf("%-13s %8s %22s %22s\n", "payoff", "strike", "riemann", "closed_form");
  for (const auto& c : reference_contracts(spec.model.s_t)) {
    std::printf("%-13s %8s %22s %22s\n", std::string(to_string(c.kind)).c_str(),
                format_double(c.strike).c_str(),
                format_double(riemann_expectation(model, c)).c_str(),
                format_double(closed_form_expectation(c, spec.model)).c_str());
  }
  return 0;
}

int cmd_cmc(const Flags& f) {
  const ExperimentSpec spec = build_spec(f);
  const SuiteSummary s = run_and_emit_cmc(spec);
  std::cout << "records: " << s.records << '\n';
  for (const auto& p : s.files) std::cout << "wrote " << p.string() << '\n';
  return 0;
}

int cmd_selftest() {
  int failed = 0;
  for (const auto& c : run_selftest()) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  " << c.detail << '\n';
    failed += c.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statevector quantum Monte Carlo pricing experiments"};
  app.require_subcommand(1);
  Flags flags;
  auto* price = app.add_subcommand("price", "one pricing run");
  auto* sweep = app.add_subcommand("sweep", "full experiment suite from a config");
  auto* reference = app.add_subcommand("reference", "discretized and closed-form references");
  auto* cmc = app.add_subcommand("cmc", "classical Monte Carlo baseline sweep");
  auto* selftest = app.add_subcommand("selftest", "invariant checks");
  for (auto* cmd : {price, sweep, reference, cmc}) add_flags(cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (price->parsed()) return cmd_price(flags);
    if (sweep->parsed()) return cmd_sweep(flags);
    if (reference->parsed()) return cmd_reference(flags);
    if (cmc->parsed()) return cmd_cmc(flags);
    if (selftest->parsed()) return cmd_selftest();
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
