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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "pfront/chain_model.hpp"
#include "pfront/errors.hpp"
#include "pfront/gpr.hpp"
#include "pfront/poly.hpp"
#include "pfront/rng.hpp"
#include "pfront/testbench.hpp"

using namespace pfront;

namespace {

// Chains in this file are fit on analytic front samples so membership and
// generation can be checked against closed forms without running a trainer.

GprModel fit_curve(double lo, double hi, int knots, double (*curve)(double)) {
    std::vector<MetricVector> in;
    std::vector<double> t;
    for (int i = 0; i <= knots; ++i) {
        const double f1 = lo + (hi - lo) * i / knots;
        in.push_back(MetricVector{f1});
        t.push_back(curve(f1));
    }
    GprHyperParams h;
    h.theta2 = 1.0 / median_pairwise_sq_distance(in);
    return GprModel::fit(std::move(in), std::move(t), h);
}

double sch_front(double f1) {
    const double r = std::sqrt(f1) - 2.0;
    return r * r;
}

double zdt1_front(double f1) { return 1.0 - std::sqrt(f1); }

ChainedPfModel make_sch_chain() {
    std::vector<LevelModel> lv;
    lv.emplace_back(fit_curve(0.0, 4.0, 16, sch_front));
    return ChainedPfModel("sch", MetricVector{0.0, 0.0}, MetricVector{4.0, 4.0},
                          std::move(lv));
}

ChainedPfModel make_zdt1_chain() {
    std::vector<LevelModel> lv;
    lv.emplace_back(fit_curve(0.0, 1.0, 32, zdt1_front));
    return ChainedPfModel("zdt1", MetricVector{0.0, 0.0}, MetricVector{1.0, 1.0},
                          std::move(lv));
}

// Shell chain: level 2 learns the arc f2 = -sqrt(1-f1^2), level 3 the shell
// f3 = -sqrt(1-f1^2-f2^2) over the quarter disk. The diagonal shell point
// -1/sqrt(3)*[1,1,1] is a training input so its model error is tiny.
ChainedPfModel make_sph_chain() {
    const double s = 1.0 / std::sqrt(3.0);
    std::vector<MetricVector> in2;
    std::vector<double> t2;
    for (int i = 0; i <= 16; ++i) {
        const double f1 = -1.0 + i / 16.0;
        in2.push_back(MetricVector{f1});
        t2.push_back(-std::sqrt(std::max(0.0, 1.0 - f1 * f1)));
    }
    in2.push_back(MetricVector{-s});
    t2.push_back(-std::sqrt(1.0 - s * s));
    GprHyperParams h2;
    h2.theta2 = 1.0 / median_pairwise_sq_distance(in2);

    std::vector<MetricVector> in3;
    std::vector<double> t3;
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 8; ++j) {
            const double f1 = -1.0 + i / 8.0;
            const double f2 = -1.0 + j / 8.0;
            const double rem = 1.0 - f1 * f1 - f2 * f2;
            if (rem < 0.0) continue;
            in3.push_back(MetricVector{f1, f2});
            t3.push_back(-std::sqrt(rem));
        }
    in3.push_back(MetricVector{-s, -s});
    t3.push_back(-s);
    GprHyperParams h3;
    h3.theta2 = 1.0 / median_pairwise_sq_distance(in3);

    std::vector<LevelModel> lv;
    lv.emplace_back(GprModel::fit(std::move(in2), std::move(t2), h2));
    lv.emplace_back(GprModel::fit(std::move(in3), std::move(t3), h3));
    return ChainedPfModel("sph", MetricVector{-1.0, -1.0, -1.0},
                          MetricVector{0.0, 0.0, 0.0}, std::move(lv));
}

}  // namespace

TEST_CASE("construction validates the chain shape") {
    std::vector<LevelModel> lv;
    lv.emplace_back(fit_curve(0.0, 4.0, 4, sch_front));
    // 3 metrics need 2 levels
    CHECK_THROWS_AS(ChainedPfModel("x", MetricVector{0.0, 0.0, 0.0},
                                   MetricVector{4.0, 4.0, 4.0}, std::move(lv)),
                    DimensionError);

    // level 2 consuming 2 inputs breaks the cascade shape
    std::vector<MetricVector> in{{0.0, 0.0}, {1.0, 1.0}, {0.3, 0.7}};
    std::vector<double> t{0.0, 1.0, 0.5};
    GprHyperParams h;
    std::vector<LevelModel> bad;
    bad.emplace_back(GprModel::fit(in, t, h));
    CHECK_THROWS_AS(ChainedPfModel("x", MetricVector{0.0, 0.0},
                                   MetricVector{4.0, 4.0}, std::move(bad)),
                    DimensionError);
}

TEST_CASE("level accessors expose the stored kind and reject the other") {
    const auto sch = make_sch_chain();
    CHECK(sch.metric_dim() == 2);
    CHECK(sch.l1() == 0.0);
    CHECK(sch.level(2).is_gpr());
    CHECK_NOTHROW(sch.level(2).gpr());
    CHECK_THROWS_AS(sch.level(2).poly(), DomainError);
    CHECK_THROWS_AS(sch.level(1), DimensionError);
    CHECK_THROWS_AS(sch.level(3), DimensionError);

    PolyModel p = PolyModel::fit({{0.0}, {1.0}, {2.0}}, {1.0, 2.0, 5.0});
    LevelModel poly_level(std::move(p));
    CHECK_FALSE(poly_level.is_gpr());
    CHECK_THROWS_AS(poly_level.gpr(), DomainError);
}

TEST_CASE("membership accepts front points and rejects at the first bad level") {
    const auto sch = make_sch_chain();
    // [1,1] lies on the front curve and is a training point
    const auto on = sch.check_membership(MetricVector{1.0, 1.0});
    CHECK(on.on_front);
    CHECK_FALSE(on.reject_level.has_value());
    // final metric 0.5 above the curve violates the terminal equality
    const auto off = sch.check_membership(MetricVector{1.0, 1.5});
    CHECK_FALSE(off.on_front);
    CHECK(off.reject_level == 2);
    // f1 below the constant bound rejects at level 1
    const auto low = sch.check_membership(MetricVector{-0.5, 1.0});
    CHECK_FALSE(low.on_front);
    CHECK(low.reject_level == 1);
    // f1 above the cap also rejects at level 1
    const auto high = sch.check_membership(MetricVector{4.5, 1.0});
    CHECK(high.reject_level == 1);

    const auto sph = make_sph_chain();
    const double s = 1.0 / std::sqrt(3.0);
    // diagonal shell point: on the front within model tolerance
    CHECK(sph.check_membership(MetricVector{-s, -s, -s}).on_front);
    // radially interior point: gap 0.134 to the shell, far beyond eq_tol
    const auto interior = sph.check_membership(MetricVector{-0.5, -0.5, -0.5});
    CHECK_FALSE(interior.on_front);
    CHECK(interior.reject_level == 3);

    CHECK_THROWS_AS(sph.check_membership(MetricVector{-0.5, -0.5}), DimensionError);
}

TEST_CASE("early exit is monotone in shared prefixes") {
    const auto sph = make_sph_chain();
    Rng rng(4242);
    int rejected_early = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> v(3);
        for (auto& x : v) x = rng.uniform(-1.3, 0.3);
        MetricVector f(v);
        const auto res = sph.check_membership(f);
        if (res.on_front || *res.reject_level == 3) continue;
        const std::size_t lvl = *res.reject_level;
        ++rejected_early;
        // mutate every coordinate after the rejection level
        for (std::size_t i = lvl; i < 3; ++i) v[i] = rng.uniform(-1.3, 0.3);
        const auto mutated = sph.check_membership(MetricVector(v));
        REQUIRE_FALSE(mutated.on_front);
        REQUIRE(*mutated.reject_level <= lvl);
    }
    CHECK(rejected_early > 50);
}

TEST_CASE("generation is self-consistent and hugs the analytic front") {
    const auto zdt = make_zdt1_chain();
    const auto zp = make_problem("zdt1");
    const auto gen = zdt.generate(500, 11);
    CHECK(gen.size() == 500);
    double mean_d = 0.0;
    for (const auto& f : gen) {
        CHECK(zdt.check_membership(f).on_front);
        // the m=2 cascade pins f2 to the level-2 mean exactly
        CHECK(f[1] == zdt.level(2).predict(f.head(1)).mean);
        CHECK(std::abs(f[1] - zdt1_front(f[0])) <= 0.05);
        const double d = zp->distance_to_true_pf(f);
        CHECK(d <= 1e-2);
        mean_d += d;
    }
    CHECK(mean_d / 500.0 <= 2e-3);

    const auto sph = make_sph_chain();
    const auto sp = make_problem("sph");
    const auto gen3 = sph.generate(500, 7);
    CHECK(gen3.size() == 500);
    mean_d = 0.0;
    for (const auto& f : gen3) {
        CHECK(sph.check_membership(f).on_front);
        mean_d += sp->distance_to_true_pf(f);
    }
    CHECK(mean_d / 500.0 <= 5e-3);
}

TEST_CASE("generation is deterministic under the seed") {
    const auto sch = make_sch_chain();
    CHECK(sch.generate(64, 123) == sch.generate(64, 123));
    CHECK_FALSE(sch.generate(64, 123) == sch.generate(64, 124));
    CHECK_THROWS_AS(sch.generate(0, 1), DomainError);
}

TEST_CASE("generated f1 values cover the full interval") {
    const auto sch = make_sch_chain();
    const auto gen = sch.generate(10000, 3);
    double lo = 1e300, hi = -1e300;
    for (const auto& f : gen) {
        lo = std::min(lo, f[0]);
        hi = std::max(hi, f[0]);
    }
    const double span = sch.f_max()[0] - sch.l1();
    CHECK(lo <= sch.l1() + 0.01 * span);
    CHECK(hi >= sch.f_max()[0] - 0.01 * span);
}

TEST_CASE("an inconsistent model exhausts generation retries") {
    // level mean ~50 everywhere, far above the cap of 4
    std::vector<MetricVector> in;
    std::vector<double> t;
    for (int i = 0; i <= 4; ++i) {
        in.push_back(MetricVector{static_cast<double>(i)});
        t.push_back(50.0);
    }
    GprHyperParams h;
    std::vector<LevelModel> lv;
    lv.emplace_back(GprModel::fit(std::move(in), std::move(t), h));
    const ChainedPfModel bad("bad", MetricVector{0.0, 0.0}, MetricVector{4.0, 4.0},
                             std::move(lv));
    CHECK_THROWS_AS(bad.generate(1, 5), DomainError);
}

TEST_CASE("eq_tol defaults to the residual-scaled band") {
    // GPR: leave-one-out residuals set the model-error scale (the plain
    // training residuals of an interpolator are round-off)
    const auto sph = make_sph_chain();
    double loo_mse = 0.0;
    for (double r : sph.level(3).gpr().loo_residuals()) loo_mse += r * r;
    loo_mse /= static_cast<double>(sph.level(3).size());
    CHECK(sph.eq_tol() ==
          doctest::Approx(std::max(1e-3, 2.0 * std::sqrt(loo_mse))).epsilon(1e-12));
    CHECK(sph.eq_tol() > 1e-3);
    // well below the 0.134 radial gap of the frozen rejection example
    CHECK(sph.eq_tol() < 0.1);

    // degree-2 polynomial cannot interpolate the SCH curve: residual-driven
    std::vector<MetricVector> in;
    std::vector<double> t;
    for (int i = 0; i <= 16; ++i) {
        const double f1 = 4.0 * i / 16.0;
        in.push_back(MetricVector{f1});
        t.push_back(sch_front(f1));
    }
    PolyModel poly = PolyModel::fit(in, t);
    double mse = 0.0;
    for (std::size_t i = 0; i < in.size(); ++i) {
        const double r = t[i] - poly.predict_mean(in[i]);
        mse += r * r;
    }
    mse /= static_cast<double>(in.size());
    std::vector<LevelModel> lv;
    lv.emplace_back(std::move(poly));
    const ChainedPfModel chain("sch", MetricVector{0.0, 0.0}, MetricVector{4.0, 4.0},
                               std::move(lv));
    CHECK(chain.eq_tol() == doctest::Approx(2.0 * std::sqrt(mse)).epsilon(1e-12));
    CHECK(chain.eq_tol() > 1e-3);

    // an explicit tolerance overrides the default
    std::vector<LevelModel> lv2;
    lv2.emplace_back(fit_curve(0.0, 4.0, 8, sch_front));
    const ChainedPfModel pinned("sch", MetricVector{0.0, 0.0}, MetricVector{4.0, 4.0},
                                std::move(lv2), 0.25);
    CHECK(pinned.eq_tol() == 0.25);
}

TEST_CASE("save/load round-trips predictions and membership") {
    const auto sph = make_sph_chain();
    const std::string path = "chain_roundtrip_sph.pf";
    sph.save(path);
    const auto back = ChainedPfModel::load(path);

    CHECK(back.problem_name() == sph.problem_name());
    CHECK(back.f_min() == sph.f_min());
    CHECK(back.f_max() == sph.f_max());
    CHECK(back.eq_tol() == sph.eq_tol());
    CHECK(back.metric_dim() == 3);

    Rng rng(909);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> v(3);
        for (auto& x : v) x = rng.uniform(-1.2, 0.2);
        const MetricVector f(v);
        const auto a = sph.check_membership(f);
        const auto b = back.check_membership(f);
        REQUIRE(a.on_front == b.on_front);
        REQUIRE(a.reject_level == b.reject_level);
        const MetricVector prefix = f.head(2);
        REQUIRE(std::abs(sph.level(3).predict(prefix).mean -
                         back.level(3).predict(prefix).mean) <= 1e-8);
        REQUIRE(std::abs(sph.level(3).predict(prefix).variance -
                         back.level(3).predict(prefix).variance) <= 1e-8);
    }
    std::remove(path.c_str());
}

TEST_CASE("save/load round-trips polynomial levels") {
    std::vector<MetricVector> in;
    std::vector<double> t;
    for (int i = 0; i <= 8; ++i) {
        const double f1 = i / 8.0;
        in.push_back(MetricVector{f1});
        t.push_back(zdt1_front(f1));
    }
    std::vector<LevelModel> lv;
    lv.emplace_back(PolyModel::fit(std::move(in), std::move(t)));
    const ChainedPfModel chain("zdt1", MetricVector{0.0, 0.0}, MetricVector{1.0, 1.0},
                               std::move(lv));
    const std::string path = "chain_roundtrip_poly.pf";
    chain.save(path);
    const auto back = ChainedPfModel::load(path);
    CHECK_FALSE(back.level(2).is_gpr());
    CHECK(back.level(2).poly().coefficients() == chain.level(2).poly().coefficients());
    for (int i = 0; i <= 50; ++i) {
        const MetricVector q{i / 50.0};
        REQUIRE(std::abs(back.level(2).predict(q).mean -
                         chain.level(2).predict(q).mean) <= 1e-8);
        REQUIRE(back.level(2).predict(q).variance == 0.0);
    }
    std::remove(path.c_str());
}

TEST_CASE("load rejects corrupt and mismatched files") {
    CHECK_THROWS_AS(ChainedPfModel::load("does_not_exist.pf"), ModelIoError);

    const std::string trunc = "chain_truncated.pf";
    {
        std::ofstream out(trunc);
        out << "{\"format\": \"pfront-model/1\", \"problem\"";
    }
    CHECK_THROWS_AS(ChainedPfModel::load(trunc), ModelIoError);
    std::remove(trunc.c_str());

    // rewrite a valid file with a bumped version tag
    const auto sch = make_sch_chain();
    const std::string path = "chain_version.pf";
    sch.save(path);
    std::stringstream buf;
    buf << std::ifstream(path).rdbuf();
    std::string text = buf.str();
    text.replace(text.find("pfront-model/1"), 14, "pfront-model/9");
    {
        std::ofstream out(path);
        out << text;
    }
    CHECK_THROWS_AS(ChainedPfModel::load(path), ModelIoError);
    std::remove(path.c_str());
}

TEST_CASE("a loaded model rejects queries of the wrong dimension") {
    const auto sph = make_sph_chain();
    const std::string path = "chain_dim.pf";
    sph.save(path);
    const auto back = ChainedPfModel::load(path);
    CHECK_THROWS_AS(back.check_membership(MetricVector{-0.5, -0.5}), DimensionError);
    std::remove(path.c_str());
}
