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

#ifndef PFRONT_TESTBENCH_HPP
#define PFRONT_TESTBENCH_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "pfront/metric.hpp"

namespace pfront {

/// Design-space point; box membership is enforced at evaluate() boundaries.
using DesignVector = std::vector<double>;

/// True-PF discretization density for the distance oracle.
inline constexpr std::size_t kPfOracleGridM2 = 100000;  // points along a 1-d arc
inline constexpr std::size_t kPfOracleGridM3 = 400;     // per axis of a 2-d patch

/// An analytic benchmark problem: objectives over a box design space, a
/// metric spec upper bound, and an analytic true Pareto front.
///
/// The front is exposed two ways: true_pf_sample draws random points that
/// satisfy the implicit front equation exactly, and distance_to_true_pf is
/// the minimum Euclidean distance to a dense front discretization (closed
/// form where one exists). Instances are immutable and reentrant.
class Problem {
public:
    virtual ~Problem() = default;

    const std::string& name() const { return name_; }
    std::size_t design_dim() const { return lower_.size(); }
    std::size_t metric_dim() const { return f_max_.size(); }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }
    const MetricVector& f_max() const { return f_max_; }

    /// Metric values at x. Throws DomainError when x leaves the box and
    /// DimensionError on length mismatch.
    MetricVector evaluate(const DesignVector& x) const;

    /// n random points on the true front, inside the spec box, satisfying
    /// the implicit front equation to 1e-12.
    MetricSet true_pf_sample(std::size_t n, std::uint64_t seed) const;

    /// Minimum Euclidean distance from f to the true front. Backed by a
    /// lazily built discretization (kPfOracleGridM2 arc points for m = 2,
    /// kPfOracleGridM3^2 patch points for m = 3); problems with a closed
    /// form use it where valid.
    double distance_to_true_pf(const MetricVector& f) const;

    /// Signed residual of the implicit front equation; 0 on the front.
    virtual double pf_residual(const MetricVector& f) const = 0;

protected:
    Problem(std::string name, std::vector<double> lower, std::vector<double> upper,
            MetricVector f_max);

    virtual MetricVector body(const DesignVector& x) const = 0;
    /// Front parametrization over [0,1]^p with p = m-1; images must cover
    /// the in-spec front and satisfy pf_residual == 0 up to round-off.
    virtual MetricVector pf_from_params(const std::vector<double>& u) const = 0;
    /// Exact distance when available; negative means "use the grid".
    virtual double closed_form_distance(const MetricVector& f) const;

private:
    const std::vector<double>& oracle_grid() const;

    std::string name_;
    std::vector<double> lower_;
    std::vector<double> upper_;
    MetricVector f_max_;

    mutable std::once_flag grid_once_;
    mutable std::vector<double> grid_;  // row-major, sorted by f_1
};

/// Factory for the named benchmarks: "zdt1", "sch", "sph", "maf3".
/// Throws ConfigError for unknown names.
std::shared_ptr<const Problem> make_problem(const std::string& name);

/// Names accepted by make_problem, in canonical order.
std::vector<std::string> problem_names();

}  // namespace pfront

#endif
