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

#ifndef PFRONT_NBI_HPP
#define PFRONT_NBI_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "pfront/box_solver.hpp"
#include "pfront/metric.hpp"
#include "pfront/testbench.hpp"

namespace pfront {

/// Entry s_i < kWeightNegTol counts as negative; anything above is treated
/// as round-off from the analytic weight recovery.
inline constexpr double kWeightNegTol = -1e-9;

/// The scalarization matrix: in coordinates shifted by f_min the diagonal
/// is 0 and row i carries f_{i,max} - f_{i,min} off the diagonal. Every
/// leading principal sub-matrix must be invertible, which holds exactly
/// when f_max > f_min componentwise.
class FMatrix {
public:
    /// Throws DimensionError on length mismatch or size < 2, DomainError
    /// when f_min > f_max, and ConditioningError when a leading sub-matrix
    /// is singular (degenerate metric range).
    FMatrix(const MetricVector& f_min, const MetricVector& f_max);

    std::size_t dim() const { return static_cast<std::size_t>(shifted_.rows()); }
    const MetricVector& f_min() const { return f_min_; }
    const MetricVector& f_max() const { return f_max_; }
    /// Full m-by-m matrix in shifted coordinates.
    const Eigen::MatrixXd& shifted() const { return shifted_; }
    /// Leading k-by-k block F_{1:k}.
    Eigen::MatrixXd leading(std::size_t k) const;
    /// Spectral condition number of F_{1:k}, 2 <= k <= dim.
    double condition(std::size_t k) const;
    /// Shifts a raw metric prefix into F coordinates.
    Eigen::VectorXd shift(const MetricVector& f) const;

private:
    MetricVector f_min_;
    MetricVector f_max_;
    Eigen::MatrixXd shifted_;
    std::vector<double> condition_;  // [k-2] holds cond(F_{1:k})
};

enum class SolveStatus { converged, max_iter, infeasible };

/// Result of one scalarized acquisition. f_opt holds the first k raw
/// metric values of x_opt; residual is the equality violation max-norm in
/// shifted units.
struct NbiSolution {
    double c_opt = 0.0;
    DesignVector x_opt;
    MetricVector f_opt;
    SolveStatus status = SolveStatus::infeasible;
    double residual = 0.0;
};

struct AnchorResult {
    DesignVector x_opt;
    double f_min = 0.0;
    bool converged = false;
};

/// Minimizes metric i (1-based) alone over the design box.
AnchorResult solve_anchor(const Problem& p, std::size_t i, const SolverConfig& cfg = {});

/// Maximizes c subject to F_{1:k} s + c n = f_{1:k}(x) - f_min_{1:k},
/// x in the design box and c >= 0. s must lie on the k-simplex (within
/// round-off) and n must be nonzero, given in shifted coordinates.
NbiSolution solve_nbi(const Problem& p, const FMatrix& f, std::size_t k,
                      const std::vector<double>& s, const std::vector<double>& n,
                      const SolverConfig& cfg = {});

/// Analytic weight recovery for a target point. s sums to 1 by
/// construction but may carry negative entries; nonnegative reflects
/// kWeightNegTol.
struct WeightSolution {
    double c_star = 0.0;
    std::vector<double> s;
    bool nonnegative = false;
};

/// Weights reaching f_around (raw coordinates) along the vertical
/// direction [0,...,0,-1]. Throws ConditioningError when the direction is
/// degenerate for F_{1:k}.
WeightSolution vertical_weights(const FMatrix& f, std::size_t k, const MetricVector& f_around);

/// Weights reaching f_around along -F_{1:k} e.
WeightSolution diagonal_weights(const FMatrix& f, std::size_t k, const MetricVector& f_around);

enum class AcquireBranch { vertical, diagonal, rectified };

struct AcquireResult {
    NbiSolution solution;
    AcquireBranch branch = AcquireBranch::vertical;
    std::vector<double> weights;
};

/// Full acquisition cascade around f_around: vertical weights first; on a
/// negative entry (or an infeasible solve) fall back to the diagonal
/// direction; as a last resort clamp the diagonal weights' negative
/// entries to zero and renormalize. Throws AcquisitionError when every
/// branch is infeasible.
AcquireResult acquire_pf_point(const Problem& p, const FMatrix& f, std::size_t k,
                               const MetricVector& f_around, const SolverConfig& cfg = {});

}  // namespace pfront

#endif
