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

// End-to-end tests of the pfront binary. The executable path comes from the
// build system through PFRONT_CLI_PATH.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "pfront/chain_model.hpp"
#include "pfront/csv.hpp"

namespace {

namespace fs = std::filesystem;

struct CmdResult {
    int code = -1;
    std::string out;
    std::string err;
};

const fs::path& scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "pfront_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(bool(in));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(bool(out));
    out << content;
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

CmdResult run_cli(const std::string& args) {
    static int invocation = 0;
    const fs::path out = scratch_dir() / ("stdout." + std::to_string(invocation));
    const fs::path err = scratch_dir() / ("stderr." + std::to_string(invocation));
    ++invocation;
    const std::string cmd = std::string(PFRONT_CLI_PATH) + " " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    CmdResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

// Model with a membership band wide enough for the on-front probe yet
// narrower than the interior probe's radial gap of ~0.134.
const fs::path& sph_model() {
    static const fs::path path = [] {
        const fs::path dir = scratch_dir() / "sph_run";
        const fs::path config = scratch_dir() / "sph.json";
        write_text(config, R"({"problem": "sph", "method": "p_agpr", "seed": 5,
                               "output_dir": ")" +
                               dir.string() + R"(", "train": {"n_max": 30}})");
        const CmdResult r = run_cli("train --config " + config.string());
        REQUIRE(r.code == 0);
        return dir / "model.pf";
    }();
    return path;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("train").code == 2);
    CHECK(run_cli("generate --model x.pf --n 4").code == 2);  // missing --out
}

TEST_CASE("train writes the model and the acquisition trace") {
    const fs::path model = sph_model();
    const fs::path dir = model.parent_path();
    CHECK(fs::exists(model));
    CHECK(fs::exists(dir / "trace.csv"));

    const std::string trace = slurp(dir / "trace.csv");
    CHECK(trace.rfind("level,iter,branch,sigma2,residual,f_query", 0) == 0);
    // Header plus (n_max - n0) queries for each of the two refined levels.
    CHECK(count_lines(trace) == 1 + (30 - 15) * 2);

    const fs::path config = scratch_dir() / "sph.json";
    const CmdResult r = run_cli("train --config " + config.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("trained p_agpr on sph: levels=2 points_per_level=30") !=
          std::string::npos);
    CHECK(r.err.find("model:") != std::string::npos);
}

TEST_CASE("check separates front members from interior points") {
    const std::string model = sph_model().string();

    const CmdResult member = run_cli(
        "check --model " + model +
        " -- -0.5773502691896258 -0.5773502691896258 -0.5773502691896258");
    CHECK(member.code == 0);
    CHECK(member.out == "on-front\n");

    const CmdResult interior =
        run_cli("check --model " + model + " -- -0.5 -0.5 -0.5");
    CHECK(interior.code == 1);
    CHECK(interior.out == "rejected level=3\n");

    const CmdResult arity = run_cli("check --model " + model + " -- -0.5 -0.5");
    CHECK(arity.code == 2);
    CHECK(arity.err.find("expected 3 metric values") != std::string::npos);

    CHECK(run_cli("check --model " + scratch_dir().string() +
                  "/absent.pf -- 0.0 0.0 0.0")
              .code == 2);
}

TEST_CASE("generate is deterministic per seed") {
    const std::string model = sph_model().string();
    const fs::path a = scratch_dir() / "gen_a.csv";
    const fs::path b = scratch_dir() / "gen_b.csv";
    const fs::path c = scratch_dir() / "gen_c.csv";

    CHECK(run_cli("generate --model " + model + " --n 8 --seed 3 --out " +
                  a.string())
              .code == 0);
    CHECK(run_cli("generate --model " + model + " --n 8 --seed 3 --out " +
                  b.string())
              .code == 0);
    CHECK(run_cli("generate --model " + model + " --n 8 --seed 4 --out " +
                  c.string())
              .code == 0);

    const std::string csv_a = slurp(a);
    CHECK(csv_a == slurp(b));
    CHECK(csv_a != slurp(c));
    CHECK(csv_a.rfind("f1,f2,f3", 0) == 0);
    CHECK(count_lines(csv_a) == 9);

    const CmdResult empty = run_cli("generate --model " + model +
                                    " --n 0 --seed 3 --out " + a.string());
    CHECK(empty.code == 2);
    CHECK(empty.err.find("n >= 1") != std::string::npos);
}

TEST_CASE("config errors exit with code 2") {
    const fs::path dir = scratch_dir();
    CHECK(run_cli("train --config " + dir.string() + "/absent.json").code == 2);

    const fs::path bad = dir / "bad.json";
    write_text(bad, "{problem:");
    CHECK(run_cli("train --config " + bad.string()).code == 2);

    write_text(bad, R"({"method": "p_agpr"})");  // no problem name
    CHECK(run_cli("train --config " + bad.string()).code == 2);

    write_text(bad, R"({"problem": "zzz"})");
    const CmdResult unknown = run_cli("train --config " + bad.string());
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("unknown problem 'zzz'") != std::string::npos);
    CHECK(unknown.err.find("zdt1") != std::string::npos);
    CHECK(unknown.err.find("maf3") != std::string::npos);

    write_text(bad, R"({"problem": "sch", "method": "newton"})");
    CHECK(run_cli("train --config " + bad.string()).code == 2);

    write_text(bad, R"({"problem": "sch", "train": {"n_points": 4}})");
    const CmdResult key = run_cli("train --config " + bad.string());
    CHECK(key.code == 2);
    CHECK(key.err.find("unknown key 'n_points'") != std::string::npos);
}

TEST_CASE("benchmark writes the grid summary and per-run table") {
    const fs::path dir = scratch_dir() / "bench_run";
    const fs::path config = scratch_dir() / "bench.json";
    write_text(config, R"({"problem": "sch", "output_dir": ")" + dir.string() +
                           R"(", "eval": {"methods": ["p_ppr"], "n_max_list": [4, 6],
                                          "repeats": 2, "n_pf": 16, "base_seed": 77}})");

    const CmdResult r = run_cli("benchmark --config " + config.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("p_ppr") != std::string::npos);
    CHECK(r.out.find("query_overhead") != std::string::npos);

    const std::string summary = slurp(dir / "summary.csv");
    CHECK(summary.rfind("method,problem,n_max,mean_err,std_err,repeats", 0) == 0);
    CHECK(count_lines(summary) == 3);

    const std::string runs = slurp(dir / "runs.csv");
    CHECK(count_lines(runs) == 5);
    CHECK(runs.find("p_ppr,sch,4,77,") != std::string::npos);
}

TEST_CASE("eq_tol from the config reaches the saved model") {
    const fs::path dir = scratch_dir() / "eqtol_run";
    const fs::path config = scratch_dir() / "eqtol.json";
    write_text(config, R"({"problem": "sch", "method": "p_ppr", "seed": 1,
                           "output_dir": ")" +
                           dir.string() + R"(", "train": {"n_max": 4, "eq_tol": 0.25}})");
    REQUIRE(run_cli("train --config " + config.string()).code == 0);

    const pfront::ChainedPfModel model =
        pfront::ChainedPfModel::load((dir / "model.pf").string());
    CHECK(model.eq_tol() == 0.25);
}

TEST_CASE("oracle prints distance-annotated true-front samples") {
    const CmdResult r = run_cli("oracle --problem sch --n 5 --seed 3");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("f1,f2,distance", 0) == 0);
    CHECK(count_lines(r.out) == 6);

    const std::vector<std::vector<std::string>> rows = pfront::parse_csv(r.out);
    REQUIRE(rows.size() == 6);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 3);
        CHECK(pfront::parse_double(rows[i][2]) <= 1e-4);
    }

    CHECK(run_cli("oracle --problem nope --n 5").code == 2);
}
