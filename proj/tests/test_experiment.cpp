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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "qamc/error.hpp"
#include "qamc/experiment.hpp"

namespace qamc {
namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path temp_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("qamc_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string field_of(const std::string& text) {
  try {
    parse_spec_text(text);
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "<no error>";
}

TEST(ParseSpec, EmptyConfigGivesDefaults) {
  for (const char* text : {"", "{}", "  \n"}) {
    const auto s = parse_spec_text(text);
    EXPECT_EQ(s.model.s_t, 1.0);
    EXPECT_EQ(s.model.sigma, 0.5);
    EXPECT_EQ(s.model.r, 0.05);
    EXPECT_EQ(s.grid.x_lo, 0.01);
    EXPECT_EQ(s.grid.x_hi, 5.0);
    EXPECT_EQ(s.grid.n_qubits, 5u);
    ASSERT_EQ(s.payoffs.size(), 1u);
    EXPECT_EQ(s.payoffs[0].kind, PayoffKind::euro_call);
    ASSERT_EQ(s.encodings.size(), 1u);
    EXPECT_EQ(s.encodings[0], EncodingKind::direct);
    ASSERT_EQ(s.algorithms.size(), 1u);
    EXPECT_EQ(s.algorithms[0].algorithm, AEAlgorithm::iqae);
    EXPECT_EQ(s.algorithms[0].epsilons, std::vector<double>{1e-3});
  }
}

TEST(ParseSpec, ValidationNamesTheField) {
  EXPECT_EQ(field_of(R"j({"payoffs": [{"kind": "asian", "strike": 1}]})j"), "payoffs[0].kind");
  try {
    parse_spec_text(R"j({"payoffs": [{"kind": "asian"}]})j");
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("asian"), std::string::npos);
  }
  EXPECT_EQ(field_of(R"j({"algorithms": [{"name": "rqae", "q": 0.5}]})j"), "algorithms[0].q");
  EXPECT_EQ(field_of(R"j({"model": {"sigma": -1}})j"), "model.sigma");
  EXPECT_EQ(field_of(R"j({"model": {"sigmaa": 1}})j"), "model.sigmaa");
  EXPECT_EQ(field_of(R"j({"repetitions": 0})j"), "repetitions");
  EXPECT_EQ(field_of(R"j({"encodings": ["sqrt"], "algorithms": ["rqae"]})j"), "algorithms[0].name");
  EXPECT_EQ(field_of(R"j({"algorithms": [{"name": "cae", "aux_qubits": [30]}]})j"),
            "algorithms[0].aux_qubits");
  EXPECT_EQ(field_of(R"j({"seed": "x"})j"), "seed");
}

TEST(ParseSpec, SyntaxErrorReportsLine) {
  try {
    parse_spec_text("{\n  \"seed\": 1,\n  \"jobs\": ,\n}");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(ParseSpec, FullConfig) {
  const auto s = parse_spec_text(R"j({
    "model": {"s_t": 1.0, "sigma": 0.4, "density": "appendix"},
    "grid": {"n_qubits": 4, "rule": "cell_mass"},
    "payoffs": "reference",
    "encodings": ["sqrt", "direct"],
    "algorithms": [{"name": "mlae", "schedules": ["lin(5)", "exp(7)"]}, "cae"],
    "repetitions": 3, "seed": 9, "out": "somewhere", "jobs": 2})j");
  EXPECT_EQ(s.model.density, DensityMode::appendix);
  EXPECT_EQ(s.grid.rule, CellRule::cell_mass);
  EXPECT_EQ(s.payoffs.size(), 7u);
  EXPECT_EQ(s.algorithms[0].schedules.size(), 2u);
  EXPECT_EQ(s.algorithms[1].algorithm, AEAlgorithm::cae);
  EXPECT_EQ(s.out, fs::path("somewhere"));
  EXPECT_EQ(expand_cells(s).size(), 7u * 2u * 3u);
}

TEST(ParseSpec, ReadsFiles) {
  const auto dir = temp_dir("parse");
  std::ofstream(dir / "c.json") << R"j({"seed": 5})j";
  EXPECT_EQ(parse_spec(dir / "c.json").seed, 5u);
  EXPECT_THROW(parse_spec(dir / "missing.json"), ValidationError);
}

TEST(Cells, DirectEncodingGridRecordCount) {
  // CAE 4 aux x 10, IQAE 4 eps x 100, MLAE 5 schedules x 10,
  // RQAE 3 eps x 6 q x 100, for each of the seven contracts.
  const auto s = parse_spec(fs::path(QAMC_SOURCE_DIR) / "configs" / "direct_encoding.json");
  std::size_t records = 0;
  for (const auto& c : expand_cells(s)) records += c.repetitions;
  EXPECT_EQ(records, 7u * (4 * 10 + 4 * 100 + 5 * 10 + 3 * 6 * 100));
}

TEST(Cells, DefaultRepetitions) {
  ExperimentSpec s;
  AlgorithmSweep iqae, cae;
  cae.algorithm = AEAlgorithm::cae;
  EXPECT_EQ(repetitions_for(s, iqae, EncodingKind::direct), 100u);
  EXPECT_EQ(repetitions_for(s, cae, EncodingKind::direct), 10u);
  EXPECT_EQ(repetitions_for(s, iqae, EncodingKind::sqrt), 10u);
  s.repetitions = 4;
  EXPECT_EQ(repetitions_for(s, iqae, EncodingKind::direct), 4u);
  iqae.repetitions = 2;
  EXPECT_EQ(repetitions_for(s, iqae, EncodingKind::direct), 2u);
}

TEST(Cells, RqaeSkipsSqrt) {
  const auto s = parse_spec_text(R"j({"encodings": ["sqrt", "direct"], "algorithms": ["rqae"]})j");
  const auto cells = expand_cells(s);
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(cells[0].encoding, EncodingKind::direct);
}

TEST(Aggregate, PercentileRule) {
  EXPECT_DOUBLE_EQ(percentile({5, 1, 4, 2, 3}, 0.5), 3.0);
  EXPECT_NEAR(percentile({5, 1, 4, 2, 3}, 0.1), 1.4, 1e-15);
  EXPECT_NEAR(percentile({5, 1, 4, 2, 3}, 0.9), 4.6, 1e-15);
  EXPECT_DOUBLE_EQ(percentile({7}, 0.9), 7.0);
}

std::vector<RunRecord> make_records(const std::string& id, std::vector<double> errors) {
  std::vector<RunRecord> out;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    RunRecord r;
    r.cell_id = id;
    r.repetition = static_cast<unsigned>(i);
    r.oracle_calls = 1000;
    r.abs_error = errors[i];
    out.push_back(r);
  }
  return out;
}

TEST(Aggregate, FiveErrors) {
  const auto rows = aggregate(make_records("c", {1, 2, 3, 4, 5}), {});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].x, 1000.0);
  EXPECT_EQ(rows[0].y, 3.0);
  EXPECT_NEAR(rows[0].y_min, 1.6, 1e-12);
  EXPECT_NEAR(rows[0].y_max, 1.6, 1e-12);
}

TEST(Aggregate, SingleRepetition) {
  const auto rows = aggregate(make_records("c", {0.25}), {});
  EXPECT_EQ(rows[0].y, 0.25);
  EXPECT_EQ(rows[0].y_min, 0.0);
  EXPECT_EQ(rows[0].y_max, 0.0);
}

TEST(Aggregate, FailedRunsFlagged) {
  auto recs = make_records("a", {1, 2});
  recs[1].ok = false;
  auto dead = make_records("b", {1});
  dead[0].ok = false;
  recs.push_back(dead[0]);
  const auto rows = aggregate(recs, {});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].n_ok, 1u);
  EXPECT_EQ(rows[0].n_failed, 1u);
  EXPECT_EQ(rows[1].n_ok, 0u);
  const auto dir = temp_dir("agg");
  emit_aggregate_csv(rows, dir / "aggregate.csv");
  const auto text = read_file(dir / "aggregate.csv");
  EXPECT_NE(text.find(",partial\n"), std::string::npos);
  EXPECT_NE(text.find(",failed\n"), std::string::npos);
  EXPECT_EQ(text[0], '#');
}

TEST(EmitDat, ExactFormat) {
  const auto dir = temp_dir("dat");
  AggregateRow r;
  r.x = 1000;
  r.y = 0.01;
  r.y_min = 0.002;
  r.y_max = 0.003;
  emit_dat({r}, dir / "a.dat");
  EXPECT_EQ(read_file(dir / "a.dat"), "x y y-min y-max\n1000 0.01 0.002 0.003\n");
  emit_dat({}, dir / "b.dat");
  EXPECT_EQ(read_file(dir / "b.dat"), "x y y-min y-max\n");
  EXPECT_THROW(emit_dat({}, dir / "no" / "such" / "c.dat"), std::runtime_error);
}

TEST(EmitDat, RoundTrip) {
  const auto dir = temp_dir("roundtrip");
  AggregateRow r;
  r.x = 123456789.0;
  r.y = 0.1 + 0.2;
  r.y_min = 1.0 / 3.0;
  r.y_max = 6.02214076e23;
  emit_dat({r}, dir / "a.dat");
  std::istringstream in(read_file(dir / "a.dat"));
  std::string header;
  std::getline(in, header);
  double x, y, lo, hi;
  in >> x >> y >> lo >> hi;
  EXPECT_EQ(x, r.x);
  EXPECT_EQ(y, r.y);
  EXPECT_EQ(lo, r.y_min);
  EXPECT_EQ(hi, r.y_max);
}

TEST(RunSuite, OneCellTenReps) {
  auto s = parse_spec_text(R"j({"algorithms": [{"name": "iqae", "epsilon": 0.01}], "repetitions": 10})j");
  const auto recs = run_suite(s);
  ASSERT_EQ(recs.size(), 10u);
  std::set<std::uint64_t> seeds;
  for (const auto& r : recs) {
    EXPECT_TRUE(r.ok) << r.error;
    seeds.insert(r.seed);
  }
  EXPECT_EQ(seeds.size(), 10u);
  const auto again = run_suite(s);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(recs[i].seed, again[i].seed);
    EXPECT_EQ(recs[i].abs_error, again[i].abs_error);
    EXPECT_EQ(recs[i].oracle_calls, again[i].oracle_calls);
  }
}

TEST(RunSuite, MonotoneTrendForDirectIqae) {
  auto s = parse_spec_text(
      R"j({"algorithms": [{"name": "iqae", "epsilon": [1e-2, 1e-3, 1e-4]}], "repetitions": 21})j");
  const auto cells = expand_cells(s);
  const auto rows = aggregate(run_suite(s), cells);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_LT(rows[0].x, rows[1].x);
  EXPECT_LT(rows[1].x, rows[2].x);
  EXPECT_GE(rows[0].y, rows[1].y);
  EXPECT_GE(rows[1].y, rows[2].y);
}

TEST(RunSuite, EmitsCompleteOutputs) {
  auto s = parse_spec_text(R"j({"payoffs": [{"kind": "futures", "strike": 1.5}],
      "algorithms": [{"name": "rqae", "epsilon": [0.01, 0.001], "q": [2, 5]}, "mlae"],
      "repetitions": 3})j");
  s.out = temp_dir("suite");
  const auto summary = run_and_emit(s);
  EXPECT_EQ(summary.records, 5u * 3u);
  EXPECT_EQ(exit_code(summary), 0);
  const auto csv = read_file(s.out / "records.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "cell_id,algorithm,encoding,payoff,strike,epsilon,q,seed,oracle_calls,abs_error,wall_ms");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 16);
  EXPECT_TRUE(fs::exists(s.out / "futures_K1.5_direct_rqae_q2.dat"));
  EXPECT_TRUE(fs::exists(s.out / "futures_K1.5_direct_rqae_q5.dat"));
  EXPECT_TRUE(fs::exists(s.out / "futures_K1.5_direct_mlae.dat"));
  const auto dat = read_file(s.out / "futures_K1.5_direct_rqae_q2.dat");
  EXPECT_EQ(std::count(dat.begin(), dat.end(), '\n'), 3);
}

TEST(ExitCodes, Summary) {
  EXPECT_EQ(exit_code({4, 0, {}}), 0);
  EXPECT_EQ(exit_code({4, 4, {}}), 2);
  EXPECT_EQ(exit_code({4, 1, {}}), 3);
}

TEST(CmcSweep, RecordsAndSeries) {
  auto s = parse_spec_text(R"j({"payoffs": [{"kind": "futures", "strike": 1.0}],
      "cmc": {"n_paths": [100, 1000], "repetitions": 4}})j");
  s.out = temp_dir("cmc");
  const auto recs = run_cmc_sweep(s);
  EXPECT_EQ(recs.size(), 8u);
  const auto summary = run_and_emit_cmc(s);
  EXPECT_TRUE(fs::exists(s.out / "cmc_futures_K1_exact_bs_M1.dat"));
  EXPECT_EQ(summary.records, 8u);
}

}  // namespace
}  // namespace qamc
