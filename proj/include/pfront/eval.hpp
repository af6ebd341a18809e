/*
 * Copyright 2026 The pfront Authors
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
 *
 */

#ifndef PFRONT_EVAL_HPP
#define PFRONT_EVAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfront/learner.hpp"
#include "pfront/metric.hpp"
#include "pfront/testbench.hpp"

namespace pfront {

/// One training + generation run of a benchmark grid.
struct RunReport {
    std::string method;
    std::string problem;
    std::size_t n_max = 0;
    std::uint64_t seed = 0;
    /// Mean distance of the generated points to the true front.
    double err = 0.0;
    TrainTimes wall_clock;
    std::size_t n_generated = 0;
};

/// Aggregate of one (method, n_max) cell. repeats counts the runs that
/// entered the mean; failed runs are excluded and counted separately.
struct SummaryCell {
    std::string method;
    std::string problem;
    std::size_t n_max = 0;
    double mean_err = 0.0;
    /// Sample standard deviation; absent when fewer than two runs succeed.
    std::optional<double> std_err;
    std::size_t repeats = 0;
    std::size_t failures = 0;
};

struct BenchmarkSummary {
    /// Cells ordered by (method, n_max) as requested by the caller.
    std::vector<SummaryCell> cells;
    /// Successful runs in cell order, repeat index ascending within a cell.
    std::vector<RunReport> runs;
    /// One diagnostic per failed run.
    std::vector<std::string> failures;
    /// Set when more than 1% of the scheduled runs failed.
    bool failure_flagged = false;
};

/// Mean distance of the generated points to the true front of p. The
/// distances are accumulated in sorted order, so the result is exactly
/// permutation-invariant. Throws DomainError on an empty set and
/// DimensionError on a member length mismatch.
double compute_err(const Problem& p, const MetricSet& generated);

/// Generated-sample count used by the reference protocol: 1000 points for
/// two-metric problems, 8000 for three or more.
std::size_t default_n_pf(const Problem& p);

/// Trains every (method, n_max, repeat) combination with seed base_seed + r,
/// generates n_pf points (0 selects default_n_pf), and aggregates Err.
/// The active method runs first within each (n_max, repeat) so the passive
/// methods can reuse its frozen per-level kernel hyperparameters; an
/// explicit theta2 setting in base disables the hand-off. Individual run
/// failures are recorded and excluded. base supplies the shared solver and
/// kernel settings; its method/n_max/seed fields are overwritten.
BenchmarkSummary run_benchmark(const Problem& p, const std::vector<TrainMethod>& methods,
                               const std::vector<std::size_t>& n_max_list,
                               std::size_t repeats, std::size_t n_pf,
                               std::uint64_t base_seed,
                               const TrainConfig& base = TrainConfig());

/// Per-method wall-clock totals across a set of runs.
struct TimingRow {
    std::string method;
    std::size_t runs = 0;
    double acquisition = 0.0;
    double query_overhead = 0.0;
    double fitting = 0.0;
    double total = 0.0;
};

/// Groups reports by method in first-appearance order and totals the
/// wall-clock components. Absolute values are machine-dependent; only the
/// structure (active query overhead versus zero passive overhead) carries
/// meaning.
std::vector<TimingRow> timing_report(const std::vector<RunReport>& reports);

/// CSV with header method,problem,n_max,mean_err,std_err,repeats; std_err
/// is empty when absent.
std::string summary_csv(const BenchmarkSummary& summary);

/// CSV with one row per report and header
/// method,problem,n_max,seed,err,acquisition_s,query_overhead_s,fitting_s,n_generated.
std::string runs_csv(const std::vector<RunReport>& runs);

/// Human-readable fixed-width table of timing rows.
std::string timing_table(const std::vector<TimingRow>& rows);

}  // namespace pfront

#endif
