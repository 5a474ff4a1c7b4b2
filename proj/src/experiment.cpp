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

#include "qamc/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "qamc/error.hpp"
#include "qamc/rng.hpp"

namespace qamc {
namespace {

using json = nlohmann::json;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ValidationError(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ValidationError(path.empty() ? key : path + "." + key, "unknown field");
    }
  }
}

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError(path, "expected a number");
  return j.get<double>();
}

std::uint64_t as_u64(const json& j, const std::string& path) {
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (d >= 0.0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
  }
  if (!j.is_number_unsigned()) throw ValidationError(path, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ValidationError(path, "expected a string");
  return j.get<std::string>();
}

template <class T, class F>
std::vector<T> as_list(const json& j, const std::string& path, F&& item) {
  std::vector<T> out;
  if (!j.is_array()) {
    out.push_back(item(j, path));
    return out;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(item(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

void read_model(const json& j, ModelParams& m) {
  check_keys(j, "model", {"s_t", "r", "sigma", "maturity", "density"});
  if (j.contains("s_t")) m.s_t = as_double(j["s_t"], "model.s_t");
  if (j.contains("r")) m.r = as_double(j["r"], "model.r");
  if (j.contains("sigma")) m.sigma = as_double(j["sigma"], "model.sigma");
  if (j.contains("maturity")) m.maturity = as_double(j["maturity"], "model.maturity");
  if (j.contains("density")) {
    const auto d = as_string(j["density"], "model.density");
    if (d == "lognormal") {
      m.density = DensityMode::lognormal;
    } else if (d == "appendix") {
      m.density = DensityMode::appendix;
    } else {
      throw ValidationError("model.density", "expected lognormal or appendix, got '" + d + "'");
    }
  }
}

void read_grid(const json& j, GridSpec& g) {
  check_keys(j, "grid", {"x_lo", "x_hi", "n_qubits", "rule"});
  if (j.contains("x_lo")) g.x_lo = as_double(j["x_lo"], "grid.x_lo");
  if (j.contains("x_hi")) g.x_hi = as_double(j["x_hi"], "grid.x_hi");
  if (j.contains("n_qubits")) {
    g.n_qubits = static_cast<unsigned>(std::min<std::uint64_t>(
        as_u64(j["n_qubits"], "grid.n_qubits"), 1000));
  }
  if (j.contains("rule")) {
    const auto r = as_string(j["rule"], "grid.rule");
    if (r == "midpoint") {
      g.rule = CellRule::midpoint;
    } else if (r == "cell_mass") {
      g.rule = CellRule::cell_mass;
    } else {
      throw ValidationError("grid.rule", "expected midpoint or cell_mass, got '" + r + "'");
    }
  }
}

PayoffSpec read_payoff(const json& j, const std::string& path) {
  check_keys(j, path, {"kind", "strike", "scale"});
  PayoffSpec p;
  if (!j.contains("kind")) throw ValidationError(join(path, "kind"), "required");
  try {
    p.kind = parse_payoff_kind(as_string(j["kind"], join(path, "kind")));
  } catch (const ValidationError& e) {
    throw ValidationError(join(path, "kind"), e.message());
  }
  if (j.contains("strike")) p.strike = as_double(j["strike"], join(path, "strike"));
  if (j.contains("scale")) p.scale = as_double(j["scale"], join(path, "scale"));
  return p;
}

AlgorithmSweep read_algorithm(const json& j, const std::string& path) {
  AlgorithmSweep s;
  if (j.is_string()) {
    s.algorithm = parse_ae_algorithm(j.get<std::string>());
    return s;
  }
  check_keys(j, path, {"name", "epsilon", "aux_qubits", "q", "schedules", "shots", "alpha",
                       "gamma", "ns", "delta", "repetitions"});
  if (!j.contains("name")) throw ValidationError(join(path, "name"), "required");
  try {
    s.algorithm = parse_ae_algorithm(as_string(j["name"], join(path, "name")));
  } catch (const ValidationError& e) {
    throw ValidationError(join(path, "name"), e.message());
  }
  if (j.contains("epsilon")) s.epsilons = as_list<double>(j["epsilon"], join(path, "epsilon"), as_double);
  if (j.contains("aux_qubits")) {
    s.aux_qubits.clear();
    for (auto v : as_list<std::uint64_t>(j["aux_qubits"], join(path, "aux_qubits"), as_u64)) {
      s.aux_qubits.push_back(static_cast<unsigned>(std::min<std::uint64_t>(v, 1000)));
    }
  }
  if (j.contains("q")) s.qs = as_list<double>(j["q"], join(path, "q"), as_double);
  if (j.contains("schedules")) {
    s.schedules = as_list<std::string>(j["schedules"], join(path, "schedules"), as_string);
  }
  if (j.contains("shots")) s.shots = as_u64(j["shots"], join(path, "shots"));
  if (j.contains("alpha")) s.alpha = as_double(j["alpha"], join(path, "alpha"));
  if (j.contains("gamma")) s.gamma = as_double(j["gamma"], join(path, "gamma"));
  if (j.contains("ns")) s.ns = as_u64(j["ns"], join(path, "ns"));
  if (j.contains("delta")) s.delta = as_double(j["delta"], join(path, "delta"));
  if (j.contains("repetitions")) {
    s.repetitions = static_cast<unsigned>(
        std::min<std::uint64_t>(as_u64(j["repetitions"], join(path, "repetitions")), 1u << 30));
  }
  return s;
}

void read_cmc(const json& j, CMCSweep& c) {
  check_keys(j, "cmc", {"n_paths", "n_steps", "scheme", "repetitions", "floor_at_zero"});
  if (j.contains("n_paths")) c.n_paths = as_list<std::uint64_t>(j["n_paths"], "cmc.n_paths", as_u64);
  if (j.contains("n_steps")) c.n_steps = as_list<std::uint64_t>(j["n_steps"], "cmc.n_steps", as_u64);
  if (j.contains("scheme")) c.scheme = parse_cmc_scheme(as_string(j["scheme"], "cmc.scheme"));
  if (j.contains("repetitions")) {
    c.repetitions = static_cast<unsigned>(
        std::min<std::uint64_t>(as_u64(j["repetitions"], "cmc.repetitions"), 1u << 30));
  }
  if (j.contains("floor_at_zero")) {
    if (!j["floor_at_zero"].is_boolean()) throw ValidationError("cmc.floor_at_zero", "expected a boolean");
    c.floor_at_zero = j["floor_at_zero"].get<bool>();
  }
}

std::string describe_payoff(const PayoffSpec& p) {
  std::string s = std::string(to_string(p.kind)) + "_K" + format_double(p.strike);
  if (p.scale != 1.0) s += "_x" + format_double(p.scale);
  return s;
}

AEConfig base_config(const AlgorithmSweep& s) {
  AEConfig c;
  c.algorithm = s.algorithm;
  c.shots = s.shots;
  c.alpha = s.alpha;
  c.gamma = s.gamma;
  c.ns = s.ns;
  c.delta = s.delta;
  return c;
}

std::string validation_path(const ValidationError& e, const std::string& prefix) {
  return prefix + "." + e.field();
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

void close_out(std::ofstream& f, const std::filesystem::path& path) {
  f.flush();
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

std::string optional_number(double v) { return std::isnan(v) ? std::string() : format_double(v); }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void ExperimentSpec::validate() const {
  model.validate();
  grid.validate();
  discretize(model, grid);
  if (payoffs.empty()) throw ValidationError("payoffs", "must not be empty");
  for (std::size_t i = 0; i < payoffs.size(); ++i) {
    try {
      payoffs[i].validate();
    } catch (const ValidationError& e) {
      const auto& f = e.field();
      throw ValidationError("payoffs[" + std::to_string(i) + "]." + f.substr(f.find('.') + 1),
                            e.message());
    }
  }
  if (encodings.empty()) throw ValidationError("encodings", "must not be empty");
  for (auto e : encodings) {
    if (e == EncodingKind::synthetic) {
      throw ValidationError("encodings", "only sqrt and direct apply to pricing");
    }
  }
  if (algorithms.empty()) throw ValidationError("algorithms", "must not be empty");
  const bool has_direct =
      std::find(encodings.begin(), encodings.end(), EncodingKind::direct) != encodings.end();
  for (std::size_t i = 0; i < algorithms.size(); ++i) {
    const auto& s = algorithms[i];
    const std::string prefix = "algorithms[" + std::to_string(i) + "]";
    if (s.repetitions && *s.repetitions < 1) {
      throw ValidationError(prefix + ".repetitions", "must be at least 1");
    }
    if (s.algorithm == AEAlgorithm::rqae && !has_direct) {
      throw ValidationError(prefix + ".name", "RQAE requires the direct encoding");
    }
    AEConfig c = base_config(s);
    try {
      switch (s.algorithm) {
        case AEAlgorithm::cae:
          if (s.aux_qubits.empty()) throw ValidationError("aux_qubits", "must not be empty");
          for (auto a : s.aux_qubits) {
            c.aux_qubits = a;
            c.validate();
            check_width(grid.n_qubits + 1 + a);
          }
          break;
        case AEAlgorithm::iqae:
          if (s.epsilons.empty()) throw ValidationError("epsilon", "must not be empty");
          for (double e : s.epsilons) {
            c.epsilon = e;
            c.validate();
          }
          break;
        case AEAlgorithm::mlae:
          if (s.schedules.empty()) throw ValidationError("schedules", "must not be empty");
          for (const auto& name : s.schedules) {
            c.schedule = make_schedule(name);
            c.validate();
          }
          break;
        case AEAlgorithm::rqae:
          if (s.epsilons.empty()) throw ValidationError("epsilon", "must not be empty");
          if (s.qs.empty()) throw ValidationError("q", "must not be empty");
          for (double e : s.epsilons) {
            for (double q : s.qs) {
              c.epsilon = e;
              c.q = q;
              c.validate();
            }
          }
          break;
      }
    } catch (const ValidationError& e) {
      throw ValidationError(validation_path(e, prefix), e.message());
    } catch (const ResourceError& e) {
      throw ValidationError(prefix + ".aux_qubits", e.what());
    }
  }
  if (repetitions && *repetitions < 1) throw ValidationError("repetitions", "must be at least 1");
  if (jobs < 1) throw ValidationError("jobs", "must be at least 1");
  if (cmc.n_paths.empty()) throw ValidationError("cmc.n_paths", "must not be empty");
  for (auto n : cmc.n_paths) {
    if (n < 1) throw ValidationError("cmc.n_paths", "must be at least 1");
  }
  for (auto m : cmc.n_steps) {
    if (m < 1) throw ValidationError("cmc.n_steps", "must be at least 1");
  }
  if (cmc.n_steps.empty()) throw ValidationError("cmc.n_steps", "must not be empty");
  if (cmc.repetitions < 1) throw ValidationError("cmc.repetitions", "must be at least 1");
}

unsigned repetitions_for(const ExperimentSpec& spec, const AlgorithmSweep& sweep,
                         EncodingKind encoding) {
  if (sweep.repetitions) return *sweep.repetitions;
  if (spec.repetitions) return *spec.repetitions;
  if (encoding == EncodingKind::sqrt) return 10;
  switch (sweep.algorithm) {
    case AEAlgorithm::iqae:
    case AEAlgorithm::rqae: return 100;
    case AEAlgorithm::cae:
    case AEAlgorithm::mlae: return 10;
  }
  return 10;
}

ExperimentSpec parse_spec_text(const std::string& text) {
  ExperimentSpec spec;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    spec.validate();
    return spec;
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ValidationError("config", "JSON syntax error at line " + std::to_string(line) +
                                        ", column " + std::to_string(col));
  }
  check_keys(j, "", {"model", "grid", "payoffs", "encodings", "algorithms", "cmc",
                     "repetitions", "seed", "out", "jobs"});
  if (j.contains("model")) read_model(j["model"], spec.model);
  if (j.contains("grid")) read_grid(j["grid"], spec.grid);
  if (j.contains("payoffs")) {
    const auto& p = j["payoffs"];
    if (p.is_string()) {
      if (p.get<std::string>() != "reference") {
        throw ValidationError("payoffs", "expected a list or \"reference\"");
      }
      const auto ref = reference_contracts(spec.model.s_t);
      spec.payoffs.assign(ref.begin(), ref.end());
    } else {
      spec.payoffs = as_list<PayoffSpec>(p, "payoffs", read_payoff);
    }
  }
  if (j.contains("encodings")) {
    spec.encodings = as_list<EncodingKind>(j["encodings"], "encodings",
                                           [](const json& v, const std::string& path) {
                                             try {
                                               return parse_encoding_kind(as_string(v, path));
                                             } catch (const ValidationError& e) {
                                               throw ValidationError(path, e.message());
                                             }
                                           });
  }
  if (j.contains("algorithms")) {
    spec.algorithms = as_list<AlgorithmSweep>(j["algorithms"], "algorithms", read_algorithm);
  }
  if (j.contains("cmc")) read_cmc(j["cmc"], spec.cmc);
  if (j.contains("repetitions")) {
    spec.repetitions = static_cast<unsigned>(
        std::min<std::uint64_t>(as_u64(j["repetitions"], "repetitions"), 1u << 30));
  }
  if (j.contains("seed")) spec.seed = as_u64(j["seed"], "seed");
  if (j.contains("out")) spec.out = as_string(j["out"], "out");
  if (j.contains("jobs")) {
    spec.jobs = static_cast<unsigned>(std::min<std::uint64_t>(as_u64(j["jobs"], "jobs"), 4096));
  }
  spec.validate();
  return spec;
}

ExperimentSpec parse_spec(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("config", "cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_spec_text(ss.str());
}

std::vector<Cell> expand_cells(const ExperimentSpec& spec) {
  std::vector<Cell> cells;
  for (const auto& payoff : spec.payoffs) {
    const std::string pname = describe_payoff(payoff);
    for (auto enc : spec.encodings) {
      const std::string ename(to_string(enc));
      for (const auto& s : spec.algorithms) {
        if (s.algorithm == AEAlgorithm::rqae && enc != EncodingKind::direct) continue;
        const std::string aname(to_string(s.algorithm));
        const std::string stem = pname + "/" + ename + "/" + aname;
        const std::string series = pname + "_" + ename + "_" + aname;
        const unsigned reps = repetitions_for(spec, s, enc);
        auto add = [&](AEConfig ae, std::string param, std::string suffix, double eps, double q) {
          cells.push_back({stem + "/" + param, series + suffix, payoff, enc, std::move(ae), eps,
                           q, reps});
        };
        AEConfig c = base_config(s);
        switch (s.algorithm) {
          case AEAlgorithm::cae:
            for (auto a : s.aux_qubits) {
              c.aux_qubits = a;
              add(c, "aux=" + std::to_string(a), "", kNaN, kNaN);
            }
            break;
          case AEAlgorithm::iqae:
            for (double e : s.epsilons) {
              c.epsilon = e;
              add(c, "eps=" + format_double(e), "", e, kNaN);
            }
            break;
          case AEAlgorithm::mlae:
            for (const auto& name : s.schedules) {
              c.schedule = make_schedule(name);
              add(c, "schedule=" + name, "", kNaN, kNaN);
            }
            break;
          case AEAlgorithm::rqae:
            for (double q : s.qs) {
              for (double e : s.epsilons) {
                c.epsilon = e;
                c.q = q;
                add(c, "q=" + format_double(q) + "_eps=" + format_double(e),
                    "_q" + format_double(q), e, q);
              }
            }
            break;
        }
      }
    }
  }
  return cells;
}

std::vector<RunRecord> run_suite(const ExperimentSpec& spec) {
  spec.validate();
  const auto cells = expand_cells(spec);
  const DiscretizedModel model = discretize(spec.model, spec.grid);

  std::vector<std::pair<std::size_t, unsigned>> tasks;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (unsigned r = 0; r < cells[c].repetitions; ++r) tasks.emplace_back(c, r);
  }
  std::vector<RunRecord> records(tasks.size());
  const auto n = static_cast<std::int64_t>(tasks.size());
  const int threads = static_cast<int>(std::max(1u, spec.jobs));

#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t t = 0; t < n; ++t) {
    const auto [ci, rep] = tasks[static_cast<std::size_t>(t)];
    const Cell& cell = cells[ci];
    RunRecord& rec = records[static_cast<std::size_t>(t)];
    rec.cell_index = ci;
    rec.cell_id = cell.id;
    rec.algorithm = to_string(cell.ae.algorithm);
    rec.encoding = to_string(cell.encoding);
    rec.payoff = to_string(cell.payoff.kind);
    rec.strike = cell.payoff.strike;
    rec.epsilon = cell.epsilon;
    rec.q = cell.q;
    rec.repetition = rep;
    rec.seed = derive_seed(spec.seed, stable_hash(cell.id), rep);
    AEConfig ae = cell.ae;
    ae.seed = rec.seed;
    const auto start = std::chrono::steady_clock::now();
    try {
      const PriceResult pr = qamc_price(model, cell.payoff, cell.encoding, ae);
      rec.oracle_calls = pr.cost;
      rec.abs_error = pr.abs_error;
      rec.estimate = pr.expectation_estimate;
    } catch (const std::exception& e) {
      rec.ok = false;
      rec.error = e.what();
      rec.abs_error = kNaN;
      rec.estimate = kNaN;
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start).count();
  }
  return records;
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) return kNaN;
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(p, 0.0, 1.0) * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records,
                                    const std::vector<Cell>& cells) {
  std::vector<AggregateRow> rows;
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<double>> xs, ys;
  for (const auto& r : records) {
    auto [it, fresh] = index.try_emplace(r.cell_id, rows.size());
    if (fresh) {
      AggregateRow row;
      row.cell_id = r.cell_id;
      row.series = r.cell_index < cells.size() ? cells[r.cell_index].series : r.cell_id;
      rows.push_back(std::move(row));
      xs.emplace_back();
      ys.emplace_back();
    }
    const std::size_t i = it->second;
    if (r.ok) {
      ++rows[i].n_ok;
      xs[i].push_back(static_cast<double>(r.oracle_calls));
      ys[i].push_back(r.abs_error);
    } else {
      ++rows[i].n_failed;
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& row = rows[i];
    if (row.n_ok == 0) {
      row.x = row.y = row.y_min = row.y_max = kNaN;
      continue;
    }
    row.x = percentile(xs[i], 0.5);
    row.y = percentile(ys[i], 0.5);
    row.y_min = row.y - percentile(ys[i], 0.1);
    row.y_max = percentile(ys[i], 0.9) - row.y;
  }
  return rows;
}

void emit_dat(const std::vector<AggregateRow>& rows, const std::filesystem::path& path) {
  auto f = open_out(path);
  f << "x y y-min y-max\n";
  for (const auto& r : rows) {
    f << format_double(r.x) << ' ' << format_double(r.y) << ' ' << format_double(r.y_min)
      << ' ' << format_double(r.y_max) << '\n';
  }
  close_out(f, path);
}

void emit_records_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
  auto f = open_out(path);
  f << "cell_id,algorithm,encoding,payoff,strike,epsilon,q,seed,oracle_calls,abs_error,wall_ms\n";
  char wall[32];
  for (const auto& r : records) {
    std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
    f << r.cell_id << ',' << r.algorithm << ',' << r.encoding << ',' << r.payoff << ','
      << format_double(r.strike) << ',' << optional_number(r.epsilon) << ','
      << optional_number(r.q) << ',' << r.seed << ',' << r.oracle_calls << ','
      << optional_number(r.abs_error) << ',' << wall << '\n';
  }
  close_out(f, path);
}

void emit_aggregate_csv(const std::vector<AggregateRow>& rows,
                        const std::filesystem::path& path) {
  auto f = open_out(path);
  f << "# x: median oracle_calls; y: median abs_error against the discretized expectation\n"
       "# y_min = y - p10, y_max = p90 - y; percentiles interpolate linearly between order "
       "statistics at rank p*(n-1)\n"
       "# failed runs are excluded from the statistics and counted in n_failed; "
       "flag = ok | partial | failed\n";
  f << "cell_id,series,x,y,y_min,y_max,n_ok,n_failed,flag\n";
  for (const auto& r : rows) {
    const char* flag = r.n_failed == 0 ? "ok" : (r.n_ok == 0 ? "failed" : "partial");
    f << r.cell_id << ',' << r.series << ',' << optional_number(r.x) << ','
      << optional_number(r.y) << ',' << optional_number(r.y_min) << ','
      << optional_number(r.y_max) << ',' << r.n_ok << ',' << r.n_failed << ',' << flag << '\n';
  }
  close_out(f, path);
}

namespace {

std::vector<std::filesystem::path> emit_series(const std::vector<AggregateRow>& rows,
                                               const std::filesystem::path& dir) {
  std::map<std::string, std::vector<AggregateRow>> series;
  for (const auto& r : rows) {
    if (r.n_ok > 0) series[r.series].push_back(r);
  }
  std::vector<std::filesystem::path> files;
  for (auto& [name, list] : series) {
    std::stable_sort(list.begin(), list.end(),
                     [](const AggregateRow& a, const AggregateRow& b) { return a.x < b.x; });
    auto path = dir / (name + ".dat");
    emit_dat(list, path);
    files.push_back(std::move(path));
  }
  return files;
}

}  // namespace

SuiteSummary run_and_emit(const ExperimentSpec& spec) {
  const auto cells = expand_cells(spec);
  const auto records = run_suite(spec);
  const auto rows = aggregate(records, cells);
  std::filesystem::create_directories(spec.out);

  SuiteSummary s;
  s.records = records.size();
  s.failed = static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const RunRecord& r) { return !r.ok; }));
  emit_records_csv(records, spec.out / "records.csv");
  emit_aggregate_csv(rows, spec.out / "aggregate.csv");
  s.files = {spec.out / "records.csv", spec.out / "aggregate.csv"};
  if (s.failed > 0) {
    const auto path = spec.out / "failures.txt";
    auto f = open_out(path);
    for (const auto& r : records) {
      if (!r.ok) f << r.cell_id << " rep=" << r.repetition << ": " << r.error << '\n';
    }
    close_out(f, path);
    s.files.push_back(path);
  }
  for (auto& p : emit_series(rows, spec.out)) s.files.push_back(std::move(p));
  return s;
}

std::vector<CMCRecord> run_cmc_sweep(const ExperimentSpec& spec) {
  spec.validate();
  const SDEModel sde = SDEModel::black_scholes(spec.model);
  std::vector<std::uint64_t> steps = spec.cmc.n_steps;
  if (spec.cmc.scheme == CMCScheme::exact_bs) steps = {1};
  std::vector<CMCRecord> out;
  for (const auto& payoff : spec.payoffs) {
    for (auto m : steps) {
      for (auto n : spec.cmc.n_paths) {
        const std::string label = "cmc/" + describe_payoff(payoff) + "/" +
                                  std::string(to_string(spec.cmc.scheme)) + "/M=" +
                                  std::to_string(m) + "/N=" + std::to_string(n);
        for (unsigned rep = 0; rep < spec.cmc.repetitions; ++rep) {
          CMCConfig cfg;
          cfg.n_paths = n;
          cfg.n_steps = m;
          cfg.scheme = spec.cmc.scheme;
          cfg.floor_at_zero = spec.cmc.floor_at_zero;
          cfg.seed = derive_seed(spec.seed, stable_hash(label), rep);
          const auto pr = cmc_price(sde, payoff, cfg, spec.model);
          out.push_back({std::string(to_string(payoff.kind)), payoff.strike, n, m, rep, cfg.seed,
                         pr.cost, pr.expectation_estimate, pr.abs_error, pr.std_error});
        }
      }
    }
  }
  return out;
}

SuiteSummary run_and_emit_cmc(const ExperimentSpec& spec) {
  const auto records = run_cmc_sweep(spec);
  std::filesystem::create_directories(spec.out);
  SuiteSummary s;
  s.records = records.size();

  const auto csv_path = spec.out / "cmc_records.csv";
  auto f = open_out(csv_path);
  f << "payoff,strike,scheme,n_paths,n_steps,seed,path_cost,estimate,abs_error,std_error\n";
  for (const auto& r : records) {
    f << r.payoff << ',' << format_double(r.strike) << ',' << to_string(spec.cmc.scheme) << ','
      << r.n_paths << ',' << r.n_steps << ',' << r.seed << ',' << r.path_cost << ','
      << format_double(r.estimate) << ',' << format_double(r.abs_error) << ','
      << format_double(r.std_error) << '\n';
  }
  close_out(f, csv_path);
  s.files.push_back(csv_path);

  std::map<std::string, std::vector<AggregateRow>> series;
  std::map<std::string, std::pair<std::vector<double>, std::string>> groups;
  std::vector<std::string> order;
  for (const auto& r : records) {
    const std::string name = "cmc_" + r.payoff + "_K" + format_double(r.strike) + "_" +
                             std::string(to_string(spec.cmc.scheme)) + "_M" +
                             std::to_string(r.n_steps);
    const std::string key = name + "/N=" + std::to_string(r.n_paths);
    auto [it, fresh] = groups.try_emplace(key);
    if (fresh) {
      it->second.second = name;
      order.push_back(key);
    }
    it->second.first.push_back(r.abs_error);
  }
  for (const auto& key : order) {
    const auto& [errors, name] = groups[key];
    const auto n = std::stoull(key.substr(key.rfind('=') + 1));
    const auto m = std::stoull(name.substr(name.rfind('M') + 1));
    AggregateRow row;
    row.cell_id = key;
    row.series = name;
    row.x = static_cast<double>(n * m);
    row.y = percentile(errors, 0.5);
    row.y_min = row.y - percentile(errors, 0.1);
    row.y_max = percentile(errors, 0.9) - row.y;
    row.n_ok = errors.size();
    series[name].push_back(row);
  }
  for (auto& [name, rows] : series) {
    auto path = spec.out / (name + ".dat");
    emit_dat(rows, path);
    s.files.push_back(std::move(path));
  }
  return s;
}

int exit_code(const SuiteSummary& summary) {
  if (summary.failed == 0) return 0;
  return summary.failed == summary.records ? 2 : 3;
}

}  // namespace qamc
