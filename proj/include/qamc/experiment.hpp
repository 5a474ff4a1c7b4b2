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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qamc/amplitude_estimation.hpp"
#include "qamc/encoding.hpp"
#include "qamc/model.hpp"
#include "qamc/payoff.hpp"
#include "qamc/pricing.hpp"

namespace qamc {

/// One AE algorithm with the parameter grid it is swept over.
struct AlgorithmSweep {
  AEAlgorithm algorithm = AEAlgorithm::iqae;
  std::vector<double> epsilons{1e-3};        ///< iqae, rqae
  std::vector<unsigned> aux_qubits{10};      ///< cae
  std::vector<double> qs{2.0};               ///< rqae
  std::vector<std::string> schedules{"exp(5)"};  ///< mlae
  std::uint64_t shots = 100;
  double alpha = 0.05;
  double gamma = 0.05;
  std::size_t ns = 10000;
  double delta = 1e-7;
  /// Overrides the suite-level repetition count when set.
  std::optional<unsigned> repetitions;
};

struct CMCSweep {
  std::vector<std::uint64_t> n_paths{100, 1000, 10000, 100000, 1000000};
  std::vector<std::uint64_t> n_steps{1};
  CMCScheme scheme = CMCScheme::exact_bs;
  unsigned repetitions = 20;
  bool floor_at_zero = false;
};

struct ExperimentSpec {
  ModelParams model;
  GridSpec grid;
  std::vector<PayoffSpec> payoffs{PayoffSpec{}};
  std::vector<EncodingKind> encodings{EncodingKind::direct};
  std::vector<AlgorithmSweep> algorithms{AlgorithmSweep{}};
  CMCSweep cmc;
  /// Applies to every algorithm without its own count. Unset means 10 for
  /// sqrt encoding; for direct encoding 10 (cae, mlae) or 100 (iqae, rqae).
  std::optional<unsigned> repetitions;
  std::uint64_t seed = 0;
  std::filesystem::path out = "qamc_out";
  unsigned jobs = 1;

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

/// Repetitions used for one (encoding, algorithm) pair.
unsigned repetitions_for(const ExperimentSpec& spec, const AlgorithmSweep& sweep,
                         EncodingKind encoding);

/// Parses a JSON config; all fields optional. Syntax errors report line and
/// column, unknown or invalid fields name their JSON path.
ExperimentSpec parse_spec_text(const std::string& text);
ExperimentSpec parse_spec(const std::filesystem::path& path);

/// One point of the sweep grid.
struct Cell {
  std::string id;
  std::string series;  ///< cells sharing a series form one .dat curve
  PayoffSpec payoff;
  EncodingKind encoding = EncodingKind::direct;
  AEConfig ae;         ///< seed filled per repetition
  double epsilon = 0.0;  ///< NaN when the algorithm has no epsilon
  double q = 0.0;        ///< NaN unless rqae
  unsigned repetitions = 1;
};

/// Expands payoff x encoding x algorithm x parameter grid. RQAE cells are
/// generated for the direct encoding only.
std::vector<Cell> expand_cells(const ExperimentSpec& spec);

struct RunRecord {
  std::size_t cell_index = 0;
  std::string cell_id;
  std::string algorithm;
  std::string encoding;
  std::string payoff;
  double strike = 0.0;
  double epsilon = 0.0;
  double q = 0.0;
  unsigned repetition = 0;
  std::uint64_t seed = 0;
  std::uint64_t oracle_calls = 0;
  double abs_error = 0.0;
  double estimate = 0.0;
  double wall_ms = 0.0;
  bool ok = true;
  std::string error;
};

/// Runs every cell and repetition, `spec.jobs` at a time. Records come back
/// ordered by (cell, repetition); a failing run is recorded, not thrown.
std::vector<RunRecord> run_suite(const ExperimentSpec& spec);

/// Linear-interpolation percentile (p in [0, 1]) of unsorted values.
double percentile(std::vector<double> values, double p);

struct AggregateRow {
  std::string cell_id;
  std::string series;
  double x = 0.0;      ///< median oracle calls
  double y = 0.0;      ///< median absolute error
  double y_min = 0.0;  ///< median - 10th percentile
  double y_max = 0.0;  ///< 90th percentile - median
  std::size_t n_ok = 0;
  std::size_t n_failed = 0;
};

/// One row per distinct cell, in first-seen order. Failed records are
/// excluded from the statistics and counted in n_failed.
std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records,
                                    const std::vector<Cell>& cells);

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// Header `x y y-min y-max`, then one whitespace-separated row per entry.
void emit_dat(const std::vector<AggregateRow>& rows, const std::filesystem::path& path);
void emit_records_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path);
void emit_aggregate_csv(const std::vector<AggregateRow>& rows,
                        const std::filesystem::path& path);

struct SuiteSummary {
  std::size_t records = 0;
  std::size_t failed = 0;
  std::vector<std::filesystem::path> files;
};

/// run_suite + aggregate + emission under spec.out: records.csv,
/// aggregate.csv and one .dat per series.
SuiteSummary run_and_emit(const ExperimentSpec& spec);

struct CMCRecord {
  std::string payoff;
  double strike = 0.0;
  std::uint64_t n_paths = 0;
  std::uint64_t n_steps = 0;
  unsigned repetition = 0;
  std::uint64_t seed = 0;
  std::uint64_t path_cost = 0;
  double estimate = 0.0;
  double abs_error = 0.0;
  double std_error = 0.0;
};

/// Classical baseline over spec.payoffs x cmc.n_steps x cmc.n_paths.
std::vector<CMCRecord> run_cmc_sweep(const ExperimentSpec& spec);
SuiteSummary run_and_emit_cmc(const ExperimentSpec& spec);

/// Exit status for a finished suite: 0 clean, 2 all failed, 3 partial.
int exit_code(const SuiteSummary& summary);

}  // namespace qamc
