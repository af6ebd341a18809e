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

// Exit codes: 0 success (or on-front), 1 rejected (check only),
// 2 usage/config error, 3 runtime failure.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pfront/csv.hpp"
#include "pfront/errors.hpp"
#include "pfront/eval.hpp"
#include "pfront/learner.hpp"

namespace {

using namespace pfront;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

std::string joined(const std::vector<std::string>& names) {
    std::string out;
    for (const std::string& n : names) {
        if (!out.empty()) out += ", ";
        out += n;
    }
    return out;
}

std::shared_ptr<const Problem> lookup_problem(const std::string& name) {
    const std::vector<std::string> names = problem_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw ConfigError("unknown problem '" + name + "'; available: " + joined(names));
    return make_problem(name);
}

struct EvalBlock {
    std::vector<TrainMethod> methods{TrainMethod::p_agpr, TrainMethod::p_pgpr,
                                     TrainMethod::p_ppr};
    std::vector<std::size_t> n_max_list{10};
    std::size_t repeats = 50;
    std::size_t n_pf = 0;  // 0 = per-problem default
    std::uint64_t base_seed = 1000;
};

struct RunConfig {
    std::string problem;
    std::string output_dir = "out";
    TrainConfig train;
    EvalBlock eval;
};

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) known = known || item.key() == key;
        if (!known) throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
}

SolverConfig parse_solver_block(const json& j) {
    reject_unknown_keys(j, "solver",
                        {"multistarts", "anchor_multistarts", "max_outer", "max_inner",
                         "residual_tol", "fd_step", "armijo", "step_tol", "penalty_init",
                         "penalty_growth", "penalty_cap"});
    SolverConfig s;
    s.multistarts = j.value("multistarts", s.multistarts);
    s.anchor_multistarts = j.value("anchor_multistarts", s.anchor_multistarts);
    s.max_outer = j.value("max_outer", s.max_outer);
    s.max_inner = j.value("max_inner", s.max_inner);
    s.residual_tol = j.value("residual_tol", s.residual_tol);
    s.fd_step = j.value("fd_step", s.fd_step);
    s.armijo = j.value("armijo", s.armijo);
    s.step_tol = j.value("step_tol", s.step_tol);
    s.penalty_init = j.value("penalty_init", s.penalty_init);
    s.penalty_growth = j.value("penalty_growth", s.penalty_growth);
    s.penalty_cap = j.value("penalty_cap", s.penalty_cap);
    return s;
}

TrainConfig parse_train_block(const json& j) {
    reject_unknown_keys(j, "train",
                        {"n_max", "n0", "theta1", "theta2", "jitter", "eq_tol",
                         "theta2_by_level", "query_candidates", "query_refinements",
                         "solver"});
    TrainConfig t;
    t.n_max = j.value("n_max", t.n_max);
    t.n0 = j.value("n0", t.n0);
    t.theta1 = j.value("theta1", t.theta1);
    t.theta2 = j.value("theta2", t.theta2);
    t.jitter = j.value("jitter", t.jitter);
    t.eq_tol = j.value("eq_tol", t.eq_tol);
    t.theta2_by_level = j.value("theta2_by_level", t.theta2_by_level);
    t.query_candidates = j.value("query_candidates", t.query_candidates);
    t.query_refinements = j.value("query_refinements", t.query_refinements);
    if (j.contains("solver")) t.solver = parse_solver_block(j.at("solver"));
    return t;
}

EvalBlock parse_eval_block(const json& j) {
    reject_unknown_keys(j, "eval", {"methods", "n_max_list", "repeats", "n_pf", "base_seed"});
    EvalBlock e;
    if (j.contains("methods")) {
        e.methods.clear();
        for (const auto& name : j.at("methods"))
            e.methods.push_back(parse_method(name.get<std::string>()));
    }
    e.n_max_list = j.value("n_max_list", e.n_max_list);
    e.repeats = j.value("repeats", e.repeats);
    e.n_pf = j.value("n_pf", e.n_pf);
    e.base_seed = j.value("base_seed", e.base_seed);
    return e;
}

RunConfig parse_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    RunConfig rc;
    try {
        const json doc = json::parse(in);
        reject_unknown_keys(doc, "config",
                            {"problem", "method", "seed", "output_dir", "train", "eval"});
        if (!doc.contains("problem"))
            throw ConfigError("config is missing the 'problem' name");
        rc.problem = doc.at("problem").get<std::string>();
        rc.output_dir = doc.value("output_dir", rc.output_dir);
        if (doc.contains("train")) rc.train = parse_train_block(doc.at("train"));
        rc.train.method = parse_method(doc.value("method", "p_agpr"));
        rc.train.seed = doc.value("seed", std::uint64_t{0});
        if (doc.contains("eval")) rc.eval = parse_eval_block(doc.at("eval"));
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return rc;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ModelIoError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw ModelIoError("write to " + path + " failed");
}

ChainedPfModel load_model_arg(const std::string& path) {
    try {
        return ChainedPfModel::load(path);
    } catch (const std::exception& e) {
        // A model path supplied on the command line is user input.
        throw ConfigError("cannot load model '" + path + "': " + e.what());
    }
}

int cmd_train(const std::string& config_path) {
    const RunConfig rc = parse_run_config(config_path);
    const auto p = lookup_problem(rc.problem);

    const auto t0 = std::chrono::steady_clock::now();
    const TrainResult res = train(*p, rc.train);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!res.completed) {
        std::cerr << "training aborted: " << res.failure << "\n";
        return kExitRuntime;
    }

    std::filesystem::create_directories(rc.output_dir);
    const std::string model_path = rc.output_dir + "/model.pf";
    res.model.save(model_path);
    write_file(rc.output_dir + "/trace.csv", res.trace.to_csv());

    std::printf("trained %s on %s: levels=%zu points_per_level=%zu elapsed=%.3fs\n",
                method_name(rc.train.method).c_str(), p->name().c_str(),
                p->metric_dim() - 1, rc.train.n_max, elapsed);
    std::cerr << "model: " << model_path << "\n";
    return kExitOk;
}

int cmd_check(const std::string& model_path, const std::vector<double>& metrics) {
    const ChainedPfModel model = load_model_arg(model_path);
    if (metrics.size() != model.metric_dim()) {
        std::cerr << "expected " << model.metric_dim() << " metric values, got "
                  << metrics.size() << "\n";
        return kExitUsage;
    }
    const MembershipResult r = model.check_membership(MetricVector(metrics));
    if (r.on_front) {
        std::printf("on-front\n");
        return kExitOk;
    }
    std::printf("rejected level=%zu\n", *r.reject_level);
    return kExitRejected;
}

int cmd_generate(const std::string& model_path, std::size_t n, std::uint64_t seed,
                 const std::string& out_path) {
    if (n < 1) throw ConfigError("generate needs n >= 1");
    const ChainedPfModel model = load_model_arg(model_path);
    const MetricSet points = model.generate(n, seed);

    std::vector<std::string> header;
    for (std::size_t i = 1; i <= model.metric_dim(); ++i)
        header.push_back("f" + std::to_string(i));
    std::string csv = csv_line(header) + "\n";
    for (const MetricVector& f : points) {
        std::vector<std::string> cells;
        for (double v : f.values()) cells.push_back(format_double(v));
        csv += csv_line(cells) + "\n";
    }
    write_file(out_path, csv);
    std::cerr << "wrote " << points.size() << " points to " << out_path << "\n";
    return kExitOk;
}

int cmd_benchmark(const std::string& config_path) {
    const RunConfig rc = parse_run_config(config_path);
    const auto p = lookup_problem(rc.problem);

    const BenchmarkSummary summary =
        run_benchmark(*p, rc.eval.methods, rc.eval.n_max_list, rc.eval.repeats,
                      rc.eval.n_pf, rc.eval.base_seed, rc.train);

    std::filesystem::create_directories(rc.output_dir);
    write_file(rc.output_dir + "/summary.csv", summary_csv(summary));
    write_file(rc.output_dir + "/runs.csv", runs_csv(summary.runs));

    std::printf("%-8s %-7s %6s %12s %12s %8s %8s\n", "problem", "method", "n_max",
                "mean_err", "std_err", "repeats", "failed");
    for (const SummaryCell& c : summary.cells)
        std::printf("%-8s %-7s %6zu %12.6f %12s %8zu %8zu\n", c.problem.c_str(),
                    c.method.c_str(), c.n_max, c.mean_err,
                    c.std_err ? format_double(*c.std_err).substr(0, 12).c_str() : "-",
                    c.repeats, c.failures);
    std::printf("\n%s", timing_table(timing_report(summary.runs)).c_str());

    for (const std::string& f : summary.failures) std::cerr << "failed run: " << f << "\n";
    if (summary.failure_flagged) {
        std::cerr << "more than 1% of runs failed (" << summary.failures.size() << ")\n";
        return kExitRuntime;
    }
    return kExitOk;
}

int cmd_oracle(const std::string& problem, std::size_t n, std::uint64_t seed,
               const std::string& out_path) {
    if (n < 1) throw ConfigError("oracle needs n >= 1");
    const auto p = lookup_problem(problem);
    const MetricSet points = p->true_pf_sample(n, seed);

    std::vector<std::string> header;
    for (std::size_t i = 1; i <= p->metric_dim(); ++i)
        header.push_back("f" + std::to_string(i));
    header.push_back("distance");
    std::string csv = csv_line(header) + "\n";
    for (const MetricVector& f : points) {
        std::vector<std::string> cells;
        for (double v : f.values()) cells.push_back(format_double(v));
        cells.push_back(format_double(p->distance_to_true_pf(f)));
        csv += csv_line(cells) + "\n";
    }
    if (out_path.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        write_file(out_path, csv);
        std::cerr << "wrote " << points.size() << " samples to " << out_path << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chained Pareto-front models: train, check, generate, benchmark"};
    app.require_subcommand(1);

    std::string config_path;
    std::string model_path;
    std::string out_path;
    std::string problem;
    std::vector<double> metrics;
    std::size_t n = 0;
    std::uint64_t seed = 0;

    CLI::App* train_cmd =
        app.add_subcommand("train", "Train a chain model from a JSON config");
    train_cmd->add_option("--config", config_path, "run configuration path")->required();

    CLI::App* check_cmd = app.add_subcommand(
        "check", "Test whether a metric vector lies on the modeled front");
    check_cmd->add_option("--model", model_path, "model.pf path")->required();
    check_cmd->add_option("metrics", metrics, "metric vector entries")->required();

    CLI::App* gen_cmd =
        app.add_subcommand("generate", "Sample front points from a trained model");
    gen_cmd->add_option("--model", model_path, "model.pf path")->required();
    gen_cmd->add_option("--n", n, "number of points")->required();
    gen_cmd->add_option("--seed", seed, "generation seed");
    gen_cmd->add_option("--out", out_path, "output CSV path")->required();

    CLI::App* bench_cmd =
        app.add_subcommand("benchmark", "Run the repeated-training benchmark grid");
    bench_cmd->add_option("--config", config_path, "run configuration path")->required();

    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle", "Dump true-front samples with their oracle distances");
    oracle_cmd->add_option("--problem", problem, "problem name")->required();
    oracle_cmd->add_option("--n", n, "number of samples")->required();
    oracle_cmd->add_option("--seed", seed, "sampling seed");
    oracle_cmd->add_option("--out", out_path, "output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (train_cmd->parsed()) return cmd_train(config_path);
        if (check_cmd->parsed()) return cmd_check(model_path, metrics);
        if (gen_cmd->parsed()) return cmd_generate(model_path, n, seed, out_path);
        if (bench_cmd->parsed()) return cmd_benchmark(config_path);
        if (oracle_cmd->parsed()) return cmd_oracle(problem, n, seed, out_path);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
