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

#ifndef PFRONT_CHAIN_MODEL_HPP
#define PFRONT_CHAIN_MODEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pfront/gpr.hpp"
#include "pfront/metric.hpp"
#include "pfront/nbi.hpp"
#include "pfront/poly.hpp"

namespace pfront {

/// Retry budget when a generation interval is empty (level mean above the
/// metric cap); exhaustion signals an inconsistent model.
inline constexpr int kGenerateRetries = 20;

/// One conditional level of the chain: metric k regressed on metrics
/// 1..k-1, either by a GPR or by a degree-2 polynomial. Polynomial levels
/// report zero predictive variance.
class LevelModel {
public:
    explicit LevelModel(GprModel gpr);
    explicit LevelModel(PolyModel poly);

    std::size_t input_dim() const;
    std::size_t size() const;
    GprPrediction predict(const MetricVector& f) const;

    bool is_gpr() const;
    /// Throws DomainError when the level holds the other kind.
    const GprModel& gpr() const;
    const PolyModel& poly() const;

    const std::vector<MetricVector>& inputs() const;
    const std::vector<double>& targets() const;

private:
    std::variant<GprModel, PolyModel> body_;
};

struct MembershipResult {
    bool on_front = false;
    /// 1-based first violated level; empty when on_front.
    std::optional<std::size_t> reject_level;
};

/// The learned front representation: a constant lower bound on the first
/// metric plus one conditional regression per remaining metric. Immutable
/// after construction; membership checks and generation are pure.
class ChainedPfModel {
public:
    /// levels[j] must consume j+1 inputs (level k = j+2 regresses on the
    /// first k-1 metrics). Passing eq_tol <= 0 selects the default
    /// max(1e-3, 2*sqrt(mean squared training residual of the final
    /// level)), a model-error-scaled band for the terminal equality.
    ChainedPfModel(std::string problem_name, MetricVector f_min, MetricVector f_max,
                   std::vector<LevelModel> levels, double eq_tol = 0.0);

    std::size_t metric_dim() const { return f_min_.size(); }
    /// Constant lower bound of the first metric (equals f_min[0]).
    double l1() const { return l1_; }
    const MetricVector& f_min() const { return f_min_; }
    const MetricVector& f_max() const { return f_max_; }
    const FMatrix& f_matrix() const { return f_; }
    double eq_tol() const { return eq_tol_; }
    const std::string& problem_name() const { return problem_name_; }
    const std::vector<LevelModel>& levels() const { return levels_; }
    /// Level accessor by metric index k = 2..m.
    const LevelModel& level(std::size_t k) const;

    /// Cascade check: level 1 is the [l1, f_max] interval, levels 2..m-1
    /// are [mean, f_max] intervals, level m is |mean - f_m| <= eq_tol plus
    /// the f_max cap. Stops at the first violated level.
    MembershipResult check_membership(const MetricVector& f) const;

    /// n points built coordinate-by-coordinate: f1 uniform in
    /// [l1, f_max[0]], middle coordinates uniform in [mean, f_max], final
    /// coordinate pinned to the level-m mean. Every output passes
    /// check_membership. Throws DomainError when a level's interval stays
    /// empty after kGenerateRetries prefix redraws.
    MetricSet generate(std::size_t n, std::uint64_t seed) const;

    /// Structured text document, versioned; load rejects unknown versions
    /// and corrupt files with ModelIoError. Round-trip preserves
    /// predictions to 1e-8.
    void save(const std::string& path) const;
    static ChainedPfModel load(const std::string& path);

private:
    std::string problem_name_;
    MetricVector f_min_;
    MetricVector f_max_;
    double l1_ = 0.0;
    FMatrix f_;
    std::vector<LevelModel> levels_;
    double eq_tol_ = 0.0;
};

}  // namespace pfront

#endif
