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

#ifndef PFRONT_LEARNER_HPP
#define PFRONT_LEARNER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pfront/box_solver.hpp"
#include "pfront/chain_model.hpp"
#include "pfront/metric.hpp"
#include "pfront/nbi.hpp"
#include "pfront/rng.hpp"
#include "pfront/testbench.hpp"

namespace pfront {

/// p_agpr: active querying at the maximum-variance position.
/// p_pgpr: passive GPR chain trained on n_max random scalarizations.
/// p_ppr:  the same acquisition with degree-2 polynomial levels.
enum class TrainMethod { p_agpr, p_pgpr, p_ppr };

/// Throws ConfigError for unknown names.
TrainMethod parse_method(const std::string& name);
std::string method_name(TrainMethod method);

struct TrainConfig {
    /// Sample budget per level.
    std::size_t n_max = 10;
    /// Initial samples for the active method; 0 selects
    /// max(3, ceil(n_max/2)) clamped below n_max. Passive methods always
    /// train on the full budget.
    std::size_t n0 = 0;
    std::uint64_t seed = 0;
    TrainMethod method = TrainMethod::p_agpr;
    SolverConfig solver;
    /// Kernel amplitude; shared by every level.
    double theta1 = 1.0;
    /// Inverse squared lengthscale; <= 0 selects 1/median pairwise squared
    /// distance of each level's initial inputs, frozen for all refits.
    double theta2 = 0.0;
    /// Kernel diagonal regularization; 0 selects the escalation ladder.
    double jitter = 0.0;
    /// Final-level equality tolerance of the trained chain; <= 0 selects
    /// the model-error-scaled default.
    double eq_tol = 0.0;
    /// Per-level theta2 override (entry j applies to level k = j+2); used
    /// to hand one run's frozen hyperparameters to another for fairness.
    std::vector<double> theta2_by_level;
    /// Candidate draws and local refinement steps per variance query.
    std::size_t query_candidates = 2000;
    std::size_t query_refinements = 50;
};

/// Effective initial sample count for cfg (method-dependent).
std::size_t resolved_n0(const TrainConfig& cfg);

/// The maximum-variance position of one level: the query input, its
/// predictive variance, and the around-point extending it with the level
/// mean.
struct QueryPoint {
    MetricVector f_query;
    double sigma2 = 0.0;
    MetricVector f_around;
};

struct TraceRow {
    std::size_t level = 0;
    std::size_t iter = 0;
    AcquireBranch branch = AcquireBranch::vertical;
    double sigma2 = 0.0;
    double residual = 0.0;
    MetricVector f_query;
};

struct TraceLog {
    std::vector<TraceRow> rows;
    /// Header `level,iter,branch,sigma2,residual,f_query` with one query
    /// coordinate per trailing column (rows are ragged across levels).
    std::string to_csv() const;
};

/// Wall-clock split of one training run in seconds: anchor and front-point
/// solves (acquisition), maximum-variance searches (query_overhead, zero
/// for passive methods), and level-model fits (fitting).
struct TrainTimes {
    double acquisition = 0.0;
    double query_overhead = 0.0;
    double fitting = 0.0;
};

struct TrainResult {
    ChainedPfModel model;
    TraceLog trace;
    /// False when acquisition aborted the active loop; model and trace
    /// hold the partial state and failure carries the diagnostic.
    bool completed = true;
    std::string failure;
    TrainTimes times;
};

/// Chain initialization: per-metric anchor solves fix f_min and the
/// scalarization matrix, then each level k acquires N points (N = n0 for
/// the active method, n_max otherwise) by scalarized solves along
/// -F_{1:k} e with fresh uniform simplex weights, and fits its level
/// model. Infeasible anchor or scalarization solves raise
/// AcquisitionError with level context.
ChainedPfModel initialize(const Problem& p, const TrainConfig& cfg);

/// Approximately maximizes the level-k predictive variance subject to the
/// cascade constraints (f1 in [l1, f_max], later coordinates above the
/// level means). Candidate sampling follows the cascade, so feasibility
/// holds by construction; a local coordinate search with re-projection
/// then polishes the best candidate. Throws DomainError when no feasible
/// candidate exists after retries.
QueryPoint query_max_variance(const ChainedPfModel& model, std::size_t k, Rng& rng,
                              std::size_t candidates = 2000,
                              std::size_t refinements = 50);

/// The active loop: initialize with n0 samples, then per level query the
/// maximum-variance position, acquire the front point around it through
/// the rectified cascade, and refit, until every level holds n_max
/// points. Acquisition failure aborts with the partial model and trace.
TrainResult train_active(const Problem& p, const TrainConfig& cfg);

/// Initialization with the full budget; no querying.
ChainedPfModel train_passive_gpr(const Problem& p, const TrainConfig& cfg);

/// Same acquisition as train_passive_gpr with degree-2 polynomial levels
/// (zero predictive variance).
ChainedPfModel train_passive_poly(const Problem& p, const TrainConfig& cfg);

/// Dispatch on cfg.method; passive methods return an empty trace.
TrainResult train(const Problem& p, const TrainConfig& cfg);

}  // namespace pfront

#endif
