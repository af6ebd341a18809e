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

#include "pfront/chain_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <utility>

#include "json.hpp"
#include "pfront/errors.hpp"
#include "pfront/rng.hpp"

namespace pfront {

namespace {

constexpr const char* kModelFormat = "pfront-model/1";

}  // namespace

LevelModel::LevelModel(GprModel gpr) : body_(std::move(gpr)) {}
LevelModel::LevelModel(PolyModel poly) : body_(std::move(poly)) {}

std::size_t LevelModel::input_dim() const {
    return std::visit([](const auto& m) { return m.input_dim(); }, body_);
}

std::size_t LevelModel::size() const {
    return std::visit([](const auto& m) { return m.size(); }, body_);
}

GprPrediction LevelModel::predict(const MetricVector& f) const {
    if (const auto* g = std::get_if<GprModel>(&body_)) return g->predict(f);
    return GprPrediction{std::get<PolyModel>(body_).predict_mean(f), 0.0};
}

bool LevelModel::is_gpr() const { return std::holds_alternative<GprModel>(body_); }

const GprModel& LevelModel::gpr() const {
    if (!is_gpr()) throw DomainError("level holds a polynomial model, not a GPR");
    return std::get<GprModel>(body_);
}

const PolyModel& LevelModel::poly() const {
    if (is_gpr()) throw DomainError("level holds a GPR model, not a polynomial");
    return std::get<PolyModel>(body_);
}

const std::vector<MetricVector>& LevelModel::inputs() const {
    return std::visit(
        [](const auto& m) -> const std::vector<MetricVector>& { return m.inputs(); }, body_);
}

const std::vector<double>& LevelModel::targets() const {
    return std::visit(
        [](const auto& m) -> const std::vector<double>& { return m.targets(); }, body_);
}

ChainedPfModel::ChainedPfModel(std::string problem_name, MetricVector f_min,
                               MetricVector f_max, std::vector<LevelModel> levels,
                               double eq_tol)
    : problem_name_(std::move(problem_name)),
      f_min_(std::move(f_min)),
      f_max_(std::move(f_max)),
      l1_(f_min_.empty() ? 0.0 : f_min_[0]),
      f_(f_min_, f_max_),
      levels_(std::move(levels)),
      eq_tol_(eq_tol) {
    const std::size_t m = f_min_.size();
    if (levels_.size() + 1 != m)
        throw DimensionError("chain model: " + std::to_string(m) + " metrics require " +
                             std::to_string(m - 1) + " levels, got " +
                             std::to_string(levels_.size()));
    for (std::size_t j = 0; j < levels_.size(); ++j)
        if (levels_[j].input_dim() != j + 1)
            throw DimensionError("chain model: level " + std::to_string(j + 2) +
                                 " must consume " + std::to_string(j + 1) + " inputs, got " +
                                 std::to_string(levels_[j].input_dim()));
    if (eq_tol_ <= 0.0) {
        // Model-error scale of the final level. A noise-free GPR
        // interpolates its targets, so its error estimate comes from the
        // leave-one-out residuals; polynomial fits keep honest plain
        // residuals.
        const LevelModel& last = levels_.back();
        double mse = 0.0;
        if (last.is_gpr()) {
            for (double r : last.gpr().loo_residuals()) mse += r * r;
        } else {
            for (std::size_t i = 0; i < last.size(); ++i) {
                const double r = last.targets()[i] - last.predict(last.inputs()[i]).mean;
                mse += r * r;
            }
        }
        mse /= static_cast<double>(last.size());
        eq_tol_ = std::max(1e-3, 2.0 * std::sqrt(mse));
    }
}

const LevelModel& ChainedPfModel::level(std::size_t k) const {
    if (k < 2 || k > metric_dim())
        throw DimensionError("level index " + std::to_string(k) + " outside 2.." +
                             std::to_string(metric_dim()));
    return levels_[k - 2];
}

MembershipResult ChainedPfModel::check_membership(const MetricVector& f) const {
    const std::size_t m = metric_dim();
    if (f.size() != m)
        throw DimensionError("membership query has " + std::to_string(f.size()) +
                             " metrics, model has " + std::to_string(m));
    if (f[0] < l1_ || f[0] > f_max_[0]) return {false, 1};
    for (std::size_t k = 2; k < m; ++k) {
        const double mu = levels_[k - 2].predict(f.head(k - 1)).mean;
        if (f[k - 1] < mu || f[k - 1] > f_max_[k - 1]) return {false, k};
    }
    const double mu = levels_[m - 2].predict(f.head(m - 1)).mean;
    if (std::abs(mu - f[m - 1]) > eq_tol_ || f[m - 1] > f_max_[m - 1]) return {false, m};
    return {true, std::nullopt};
}

MetricSet ChainedPfModel::generate(std::size_t n, std::uint64_t seed) const {
    if (n < 1) throw DomainError("generate requires n >= 1");
    Rng rng(seed);
    const std::size_t m = metric_dim();

    const auto draw_one = [&]() {
        std::size_t bad_level = 0;
        for (int attempt = 0; attempt < kGenerateRetries; ++attempt) {
            std::vector<double> f;
            f.reserve(m);
            f.push_back(rng.uniform(l1_, f_max_[0]));
            bool ok = true;
            for (std::size_t k = 2; k <= m; ++k) {
                const double mu = levels_[k - 2].predict(MetricVector(f)).mean;
                if (mu > f_max_[k - 1]) {
                    ok = false;
                    bad_level = k;
                    break;
                }
                f.push_back(k < m ? rng.uniform(mu, f_max_[k - 1]) : mu);
            }
            if (ok) return MetricVector(std::move(f));
        }
        throw DomainError("generation interval stayed empty at level " +
                          std::to_string(bad_level) + " after " +
                          std::to_string(kGenerateRetries) +
                          " prefix redraws: level mean exceeds the metric cap "
                          "(inconsistent model)");
    };

    std::vector<MetricVector> raw;
    raw.reserve(n);
    for (std::size_t i = 0; i < n; ++i) raw.push_back(draw_one());
    MetricSet out(raw);
    // Collisions under 1e-12 quantization are vanishingly rare for
    // continuous draws; top up so callers receive exactly n points.
    std::size_t budget = 16 * n + 64;
    while (out.size() < n && budget-- > 0) {
        raw.push_back(draw_one());
        out = MetricSet(raw);
    }
    return out;
}

void ChainedPfModel::save(const std::string& path) const {
    nlohmann::json doc;
    doc["format"] = kModelFormat;
    doc["problem"] = problem_name_;
    doc["f_min"] = f_min_.values();
    doc["f_max"] = f_max_.values();
    doc["eq_tol"] = eq_tol_;
    nlohmann::json levels = nlohmann::json::array();
    for (const LevelModel& lv : levels_) {
        nlohmann::json entry;
        std::vector<std::vector<double>> ins;
        ins.reserve(lv.inputs().size());
        for (const MetricVector& p : lv.inputs()) ins.push_back(p.values());
        entry["inputs"] = ins;
        entry["targets"] = lv.targets();
        if (lv.is_gpr()) {
            const GprHyperParams& h = lv.gpr().hyper();
            entry["kind"] = "gpr";
            entry["theta1"] = h.theta1;
            entry["theta2"] = h.theta2;
            entry["jitter"] = h.jitter;
        } else {
            entry["kind"] = "poly";
            entry["coefficients"] = lv.poly().coefficients();
            entry["ridge_stabilized"] = lv.poly().ridge_stabilized();
        }
        levels.push_back(std::move(entry));
    }
    doc["levels"] = std::move(levels);

    std::ofstream out(path);
    if (!out) throw ModelIoError("cannot open model file for writing: " + path);
    out << doc.dump(2) << '\n';
    out.flush();
    if (!out) throw ModelIoError("write failed for model file: " + path);
}

ChainedPfModel ChainedPfModel::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelIoError("cannot open model file: " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ModelIoError("corrupt model file " + path + ": " + e.what());
    }
    try {
        const auto format = doc.at("format").get<std::string>();
        if (format != kModelFormat)
            throw ModelIoError("model file " + path + " has format '" + format +
                               "', expected '" + kModelFormat + "'");
        MetricVector f_min(doc.at("f_min").get<std::vector<double>>());
        MetricVector f_max(doc.at("f_max").get<std::vector<double>>());
        const double eq_tol = doc.at("eq_tol").get<double>();
        std::vector<LevelModel> levels;
        for (const auto& entry : doc.at("levels")) {
            std::vector<MetricVector> inputs;
            for (const auto& row : entry.at("inputs"))
                inputs.emplace_back(row.get<std::vector<double>>());
            auto targets = entry.at("targets").get<std::vector<double>>();
            const auto kind = entry.at("kind").get<std::string>();
            if (kind == "gpr") {
                GprHyperParams hyper;
                hyper.theta1 = entry.at("theta1").get<double>();
                hyper.theta2 = entry.at("theta2").get<double>();
                hyper.jitter = entry.at("jitter").get<double>();
                levels.emplace_back(
                    GprModel::fit(std::move(inputs), std::move(targets), hyper));
            } else if (kind == "poly") {
                auto coeffs = entry.at("coefficients").get<std::vector<double>>();
                const bool ridge = entry.at("ridge_stabilized").get<bool>();
                levels.emplace_back(PolyModel::from_parts(
                    std::move(inputs), std::move(targets), std::move(coeffs), ridge));
            } else {
                throw ModelIoError("model file " + path + " has unknown level kind '" +
                                   kind + "'");
            }
        }
        return ChainedPfModel(doc.at("problem").get<std::string>(), std::move(f_min),
                              std::move(f_max), std::move(levels), eq_tol);
    } catch (const nlohmann::json::exception& e) {
        throw ModelIoError("malformed model file " + path + ": " + e.what());
    }
}

}  // namespace pfront
