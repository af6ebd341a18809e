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

#include "pfront/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>

#include "pfront/csv.hpp"
#include "pfront/errors.hpp"

namespace pfront {

namespace {

/// Stream tag separating generation draws from the training streams.
constexpr std::uint64_t kGenerationStream = 777;

std::vector<double> frozen_theta2(const ChainedPfModel& model) {
    std::vector<double> t;
    t.reserve(model.metric_dim() - 1);
    for (std::size_t k = 2; k <= model.metric_dim(); ++k)
        t.push_back(model.level(k).gpr().hyper().theta2);
    return t;
}

double mean_of(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

}  // namespace

double compute_err(const Problem& p, const MetricSet& generated) {
    if (generated.empty()) throw DomainError("cannot compute Err of an empty metric set");
    std::vector<double> distances;
    distances.reserve(generated.size());
    for (const MetricVector& f : generated) {
        if (f.size() != p.metric_dim())
            throw DimensionError("generated point has " + std::to_string(f.size()) +
                                 " metrics, expected " + std::to_string(p.metric_dim()));
        distances.push_back(p.distance_to_true_pf(f));
    }
    // Sorted accumulation makes the mean independent of member order.
    std::sort(distances.begin(), distances.end());
    return mean_of(distances);
}

std::size_t default_n_pf(const Problem& p) { return p.metric_dim() == 2 ? 1000 : 8000; }

BenchmarkSummary run_benchmark(const Problem& p, const std::vector<TrainMethod>& methods,
                               const std::vector<std::size_t>& n_max_list,
                               std::size_t repeats, std::size_t n_pf,
                               std::uint64_t base_seed, const TrainConfig& base) {
    if (methods.empty()) throw ConfigError("benchmark needs at least one method");
    if (n_max_list.empty()) throw ConfigError("benchmark needs at least one n_max value");
    if (repeats < 1) throw ConfigError("repeats must be at least 1");
    const std::size_t count = n_pf == 0 ? default_n_pf(p) : n_pf;

    // The active method runs first within each (n_max, repeat) so its frozen
    // kernel hyperparameters can be handed to the passive baselines.
    std::vector<std::size_t> order(methods.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_partition(order.begin(), order.end(), [&](std::size_t i) {
        return methods[i] == TrainMethod::p_agpr;
    });
    const bool hand_off = base.theta2 <= 0.0 && base.theta2_by_level.empty();

    struct Cell {
        std::vector<RunReport> ok;
        std::size_t failures = 0;
    };
    std::vector<std::vector<Cell>> grid(methods.size(),
                                        std::vector<Cell>(n_max_list.size()));
    BenchmarkSummary summary;

    for (std::size_t ni = 0; ni < n_max_list.size(); ++ni) {
        for (std::size_t r = 0; r < repeats; ++r) {
            const std::uint64_t seed = base_seed + r;
            std::optional<std::vector<double>> shared;
            for (const std::size_t mi : order) {
                TrainConfig cfg = base;
                cfg.method = methods[mi];
                cfg.n_max = n_max_list[ni];
                cfg.seed = seed;
                if (cfg.method != TrainMethod::p_agpr && hand_off && shared)
                    cfg.theta2_by_level = *shared;
                Cell& cell = grid[mi][ni];
                try {
                    const TrainResult res = train(p, cfg);
                    if (cfg.method == TrainMethod::p_agpr && res.model.metric_dim() > 0)
                        shared = frozen_theta2(res.model);
                    if (!res.completed) throw AcquisitionError(res.failure);
                    const MetricSet points =
                        res.model.generate(count, Rng::derive(seed, kGenerationStream));
                    RunReport report;
                    report.method = method_name(cfg.method);
                    report.problem = p.name();
                    report.n_max = cfg.n_max;
                    report.seed = seed;
                    report.err = compute_err(p, points);
                    report.wall_clock = res.times;
                    report.n_generated = points.size();
                    cell.ok.push_back(std::move(report));
                } catch (const std::exception& e) {
                    ++cell.failures;
                    summary.failures.push_back(method_name(cfg.method) + " " + p.name() +
                                               " n_max=" + std::to_string(cfg.n_max) +
                                               " seed=" + std::to_string(seed) + ": " +
                                               e.what());
                }
            }
        }
    }

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        for (std::size_t ni = 0; ni < n_max_list.size(); ++ni) {
            const Cell& cell = grid[mi][ni];
            SummaryCell out;
            out.method = method_name(methods[mi]);
            out.problem = p.name();
            out.n_max = n_max_list[ni];
            out.repeats = cell.ok.size();
            out.failures = cell.failures;
            if (cell.ok.empty()) {
                out.mean_err = std::numeric_limits<double>::quiet_NaN();
            } else {
                std::vector<double> errs;
                errs.reserve(cell.ok.size());
                for (const RunReport& rep : cell.ok) errs.push_back(rep.err);
                out.mean_err = mean_of(errs);
                if (errs.size() >= 2) {
                    double ss = 0.0;
                    for (double e : errs) ss += (e - out.mean_err) * (e - out.mean_err);
                    out.std_err = std::sqrt(ss / static_cast<double>(errs.size() - 1));
                }
            }
            summary.cells.push_back(std::move(out));
            for (const RunReport& rep : cell.ok) summary.runs.push_back(rep);
        }
    }

    const std::size_t total = methods.size() * n_max_list.size() * repeats;
    summary.failure_flagged =
        static_cast<double>(summary.failures.size()) > 0.01 * static_cast<double>(total);
    return summary;
}

std::vector<TimingRow> timing_report(const std::vector<RunReport>& reports) {
    std::vector<TimingRow> rows;
    for (const RunReport& rep : reports) {
        TimingRow* row = nullptr;
        for (TimingRow& r : rows)
            if (r.method == rep.method) row = &r;
        if (row == nullptr) {
            rows.push_back(TimingRow{rep.method, 0, 0.0, 0.0, 0.0, 0.0});
            row = &rows.back();
        }
        row->runs += 1;
        row->acquisition += rep.wall_clock.acquisition;
        row->query_overhead += rep.wall_clock.query_overhead;
        row->fitting += rep.wall_clock.fitting;
    }
    for (TimingRow& r : rows) r.total = r.acquisition + r.query_overhead + r.fitting;
    return rows;
}

std::string summary_csv(const BenchmarkSummary& summary) {
    std::string out = "method,problem,n_max,mean_err,std_err,repeats\n";
    for (const SummaryCell& c : summary.cells) {
        out += csv_line({c.method, c.problem, std::to_string(c.n_max),
                         format_double(c.mean_err),
                         c.std_err ? format_double(*c.std_err) : std::string(),
                         std::to_string(c.repeats)});
        out += '\n';
    }
    return out;
}

std::string runs_csv(const std::vector<RunReport>& runs) {
    std::string out =
        "method,problem,n_max,seed,err,acquisition_s,query_overhead_s,fitting_s,"
        "n_generated\n";
    for (const RunReport& r : runs) {
        out += csv_line({r.method, r.problem, std::to_string(r.n_max),
                         std::to_string(r.seed), format_double(r.err),
                         format_double(r.wall_clock.acquisition),
                         format_double(r.wall_clock.query_overhead),
                         format_double(r.wall_clock.fitting),
                         std::to_string(r.n_generated)});
        out += '\n';
    }
    return out;
}

std::string timing_table(const std::vector<TimingRow>& rows) {
    std::string out =
        "method    runs  acquisition_s  query_overhead_s  fitting_s    total_s\n";
    char line[128];
    for (const TimingRow& r : rows) {
        std::snprintf(line, sizeof(line), "%-8s %5zu %14.4f %17.4f %10.4f %10.4f\n",
                      r.method.c_str(), r.runs, r.acquisition, r.query_overhead, r.fitting,
                      r.total);
        out += line;
    }
    return out;
}

}  // namespace pfront
