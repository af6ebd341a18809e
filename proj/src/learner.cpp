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

#include "pfront/learner.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <utility>

#include "pfront/csv.hpp"
#include "pfront/errors.hpp"
#include "pfront/gpr.hpp"
#include "pfront/poly.hpp"

namespace pfront {

namespace {

struct LevelData {
    std::vector<MetricVector> inputs;
    std::vector<double> targets;
};

struct Workspace {
    MetricVector f_min;
    MetricVector f_max;
    std::vector<LevelData> data;  // index j holds level k = j+2
    std::vector<double> theta2;   // frozen per level
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

const char* branch_label(AcquireBranch b) {
    switch (b) {
        case AcquireBranch::vertical: return "vertical";
        case AcquireBranch::diagonal: return "diagonal";
        case AcquireBranch::rectified: return "rectified";
    }
    return "unknown";
}

void validate(const Problem& p, const TrainConfig& cfg) {
    if (cfg.n_max < 1) throw ConfigError("n_max must be at least 1");
    if (cfg.theta1 <= 0.0) throw ConfigError("theta1 must be positive");
    if (!std::isfinite(cfg.eq_tol)) throw ConfigError("eq_tol must be finite");
    if (cfg.query_candidates < 1) throw ConfigError("query_candidates must be at least 1");
    if (!cfg.theta2_by_level.empty()) {
        if (cfg.theta2_by_level.size() != p.metric_dim() - 1)
            throw ConfigError("theta2_by_level needs one entry per level");
        for (double t : cfg.theta2_by_level)
            if (t <= 0.0) throw ConfigError("theta2_by_level entries must be positive");
    }
    if (cfg.method == TrainMethod::p_agpr) {
        if (cfg.n_max < 2) throw ConfigError("active training requires n_max >= 2");
        if (cfg.n0 != 0 && cfg.n0 >= cfg.n_max)
            throw ConfigError("n0 must be below n_max for active training");
    }
}

/// Anchor solves fix f_min, then each level acquires n_points scalarized
/// solutions along -F_{1:k} e with fresh uniform simplex weights.
Workspace acquire_scalarized(const Problem& p, const TrainConfig& cfg,
                             std::size_t n_points) {
    const std::size_t m = p.metric_dim();
    std::vector<double> fmin(m);
    for (std::size_t i = 1; i <= m; ++i) {
        const AnchorResult a = solve_anchor(p, i, cfg.solver);
        if (!a.converged)
            throw AcquisitionError("anchor solve for metric " + std::to_string(i) +
                                   " on " + p.name() + " did not converge");
        fmin[i - 1] = a.f_min;
    }

    Workspace ws;
    ws.f_min = MetricVector(fmin);
    ws.f_max = p.f_max();
    const FMatrix f(ws.f_min, ws.f_max);
    ws.data.resize(m - 1);
    for (std::size_t k = 2; k <= m; ++k) {
        Rng rng(Rng::derive(cfg.seed, k));
        const Eigen::VectorXd dir =
            -(f.leading(k) * Eigen::VectorXd::Ones(static_cast<Eigen::Index>(k)));
        const std::vector<double> n(dir.data(), dir.data() + dir.size());
        LevelData& d = ws.data[k - 2];
        for (std::size_t j = 0; j < n_points; ++j) {
            const std::vector<double> s = rng.simplex_weights(k);
            const NbiSolution sol = solve_nbi(p, f, k, s, n, cfg.solver);
            if (sol.status == SolveStatus::infeasible)
                throw AcquisitionError(
                    "initialization at level " + std::to_string(k) + " on " + p.name() +
                    ": scalarized subproblem infeasible (residual " +
                    format_double(sol.residual) + ")");
            d.inputs.push_back(sol.f_opt.head(k - 1));
            d.targets.push_back(sol.f_opt[k - 1]);
        }
    }

    ws.theta2.resize(m - 1);
    for (std::size_t j = 0; j < m - 1; ++j) {
        if (!cfg.theta2_by_level.empty())
            ws.theta2[j] = cfg.theta2_by_level[j];
        else if (cfg.theta2 > 0.0)
            ws.theta2[j] = cfg.theta2;
        else
            ws.theta2[j] = 1.0 / median_pairwise_sq_distance(ws.data[j].inputs);
    }
    return ws;
}

ChainedPfModel make_chain(const Problem& p, const TrainConfig& cfg, const Workspace& ws,
                          bool poly) {
    std::vector<LevelModel> levels;
    levels.reserve(ws.data.size());
    for (std::size_t j = 0; j < ws.data.size(); ++j) {
        if (poly) {
            levels.emplace_back(PolyModel::fit(ws.data[j].inputs, ws.data[j].targets));
        } else {
            GprHyperParams h;
            h.theta1 = cfg.theta1;
            h.theta2 = ws.theta2[j];
            h.jitter = cfg.jitter;
            levels.emplace_back(GprModel::fit(ws.data[j].inputs, ws.data[j].targets, h));
        }
    }
    return ChainedPfModel(p.name(), ws.f_min, ws.f_max, std::move(levels), cfg.eq_tol);
}

TrainResult timed_passive(const Problem& p, const TrainConfig& cfg, bool poly) {
    validate(p, cfg);
    TrainTimes times;
    Clock::time_point t0 = Clock::now();
    const Workspace ws = acquire_scalarized(p, cfg, cfg.n_max);
    times.acquisition = seconds_since(t0);
    t0 = Clock::now();
    ChainedPfModel model = make_chain(p, cfg, ws, poly);
    times.fitting = seconds_since(t0);
    return {std::move(model), {}, true, {}, times};
}

}  // namespace

TrainMethod parse_method(const std::string& name) {
    if (name == "p_agpr") return TrainMethod::p_agpr;
    if (name == "p_pgpr") return TrainMethod::p_pgpr;
    if (name == "p_ppr") return TrainMethod::p_ppr;
    throw ConfigError("unknown method '" + name + "' (expected p_agpr, p_pgpr or p_ppr)");
}

std::string method_name(TrainMethod method) {
    switch (method) {
        case TrainMethod::p_agpr: return "p_agpr";
        case TrainMethod::p_pgpr: return "p_pgpr";
        case TrainMethod::p_ppr: return "p_ppr";
    }
    return "unknown";
}

std::size_t resolved_n0(const TrainConfig& cfg) {
    if (cfg.method != TrainMethod::p_agpr) return cfg.n_max;
    if (cfg.n0 != 0) return cfg.n0;
    const std::size_t half = std::max<std::size_t>(3, (cfg.n_max + 1) / 2);
    return std::min(half, cfg.n_max - 1);
}

std::string TraceLog::to_csv() const {
    std::string out = "level,iter,branch,sigma2,residual,f_query\n";
    for (const TraceRow& r : rows) {
        std::vector<std::string> cells{std::to_string(r.level), std::to_string(r.iter),
                                       branch_label(r.branch), format_double(r.sigma2),
                                       format_double(r.residual)};
        for (double v : r.f_query.values()) cells.push_back(format_double(v));
        out += csv_line(cells);
        out += '\n';
    }
    return out;
}

ChainedPfModel initialize(const Problem& p, const TrainConfig& cfg) {
    validate(p, cfg);
    const Workspace ws = acquire_scalarized(p, cfg, resolved_n0(cfg));
    return make_chain(p, cfg, ws, cfg.method == TrainMethod::p_ppr);
}

QueryPoint query_max_variance(const ChainedPfModel& model, std::size_t k, Rng& rng,
                              std::size_t candidates, std::size_t refinements) {
    const std::size_t m = model.metric_dim();
    if (k < 2 || k > m)
        throw DimensionError("query level " + std::to_string(k) + " outside 2.." +
                             std::to_string(m));
    const MetricVector& fmax = model.f_max();
    const MetricVector& fmin = model.f_min();

    // One cascade draw; empty when every retry hit an empty interval.
    const auto draw = [&]() -> std::optional<std::vector<double>> {
        for (int attempt = 0; attempt < kGenerateRetries; ++attempt) {
            std::vector<double> f;
            f.reserve(k - 1);
            f.push_back(rng.uniform(model.l1(), fmax[0]));
            bool ok = true;
            for (std::size_t j = 2; j <= k - 1; ++j) {
                const double mu = model.level(j).predict(MetricVector(f)).mean;
                if (mu > fmax[j - 1]) {
                    ok = false;
                    break;
                }
                f.push_back(rng.uniform(mu, fmax[j - 1]));
            }
            if (ok) return f;
        }
        return std::nullopt;
    };

    const auto variance = [&](const std::vector<double>& f) {
        return model.level(k).predict(MetricVector(f)).variance;
    };

    // Clamps each coordinate into its cascade interval, front to back, so
    // the result is feasible by construction; fails when an interval is
    // empty at the projected prefix.
    const auto project = [&](std::vector<double>& f) {
        for (std::size_t i = 0; i < k - 1; ++i) {
            double lo = model.l1();
            if (i > 0) {
                const std::vector<double> prefix(f.begin(),
                                                 f.begin() + static_cast<std::ptrdiff_t>(i));
                lo = model.level(i + 1).predict(MetricVector(prefix)).mean;
            }
            if (lo > fmax[i]) return false;
            f[i] = std::clamp(f[i], lo, fmax[i]);
        }
        return true;
    };

    std::vector<double> best;
    double best_v = -1.0;
    for (std::size_t c = 0; c < candidates; ++c) {
        const auto cand = draw();
        if (!cand) continue;
        const double v = variance(*cand);
        if (v > best_v) {
            best_v = v;
            best = *cand;
        }
    }
    if (best.empty())
        throw DomainError("level " + std::to_string(k) +
                          " query region is degenerate: no feasible candidate");

    double scale = 0.25;
    std::size_t stale = 0;
    for (std::size_t t = 0; t < refinements; ++t) {
        const std::size_t j = t % (k - 1);
        const double span = fmax[j] - fmin[j];
        bool improved = false;
        for (const double dir : {1.0, -1.0}) {
            std::vector<double> cand = best;
            cand[j] += dir * scale * span;
            if (!project(cand)) continue;
            const double v = variance(cand);
            if (v > best_v) {
                best_v = v;
                best = std::move(cand);
                improved = true;
            }
        }
        if (improved) {
            stale = 0;
        } else if (++stale >= k - 1) {
            scale *= 0.5;
            stale = 0;
        }
    }

    QueryPoint q;
    q.f_query = MetricVector(best);
    q.sigma2 = best_v;
    best.push_back(model.level(k).predict(q.f_query).mean);
    q.f_around = MetricVector(std::move(best));
    return q;
}

TrainResult train_active(const Problem& p, const TrainConfig& cfg) {
    if (cfg.method != TrainMethod::p_agpr)
        throw ConfigError("train_active requires method p_agpr");
    validate(p, cfg);
    TrainTimes times;
    Clock::time_point t0 = Clock::now();
    Workspace ws = acquire_scalarized(p, cfg, resolved_n0(cfg));
    times.acquisition += seconds_since(t0);
    t0 = Clock::now();
    ChainedPfModel model = make_chain(p, cfg, ws, false);
    times.fitting += seconds_since(t0);
    TraceLog trace;
    const std::size_t m = p.metric_dim();
    for (std::size_t k = 2; k <= m; ++k) {
        Rng qrng(Rng::derive(cfg.seed, 100 + k));
        std::size_t iter = 0;
        while (ws.data[k - 2].inputs.size() < cfg.n_max) {
            t0 = Clock::now();
            const QueryPoint q = query_max_variance(model, k, qrng, cfg.query_candidates,
                                                    cfg.query_refinements);
            times.query_overhead += seconds_since(t0);
            AcquireResult acq;
            t0 = Clock::now();
            try {
                acq = acquire_pf_point(p, model.f_matrix(), k, q.f_around, cfg.solver);
            } catch (const AcquisitionError& e) {
                times.acquisition += seconds_since(t0);
                return {std::move(model), std::move(trace), false,
                        "level " + std::to_string(k) + " iteration " +
                            std::to_string(iter) + ": " + e.what(),
                        times};
            }
            times.acquisition += seconds_since(t0);
            ws.data[k - 2].inputs.push_back(acq.solution.f_opt.head(k - 1));
            ws.data[k - 2].targets.push_back(acq.solution.f_opt[k - 1]);
            t0 = Clock::now();
            model = make_chain(p, cfg, ws, false);
            times.fitting += seconds_since(t0);
            trace.rows.push_back(
                {k, iter, acq.branch, q.sigma2, acq.solution.residual, q.f_query});
            ++iter;
        }
    }
    return {std::move(model), std::move(trace), true, {}, times};
}

ChainedPfModel train_passive_gpr(const Problem& p, const TrainConfig& cfg) {
    if (cfg.method != TrainMethod::p_pgpr)
        throw ConfigError("train_passive_gpr requires method p_pgpr");
    return timed_passive(p, cfg, false).model;
}

ChainedPfModel train_passive_poly(const Problem& p, const TrainConfig& cfg) {
    if (cfg.method != TrainMethod::p_ppr)
        throw ConfigError("train_passive_poly requires method p_ppr");
    return timed_passive(p, cfg, true).model;
}

TrainResult train(const Problem& p, const TrainConfig& cfg) {
    switch (cfg.method) {
        case TrainMethod::p_agpr: return train_active(p, cfg);
        case TrainMethod::p_pgpr: return timed_passive(p, cfg, false);
        case TrainMethod::p_ppr: return timed_passive(p, cfg, true);
    }
    throw ConfigError("unhandled training method");
}

}  // namespace pfront
