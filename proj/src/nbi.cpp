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

#include "pfront/nbi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pfront/errors.hpp"

namespace pfront {

namespace {

// Residuals above this mean the ray misses the attainable set entirely.
constexpr double kInfeasibleResidual = 1e-2;

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

std::vector<double> from_eigen(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

void check_level(const FMatrix& f, std::size_t k) {
    if (k < 2 || k > f.dim()) throw DimensionError("level must be in [2, m]");
}

// Shared analytic core: solves F_{1:k} s + c d = f_shifted with s summing
// to 1, for an arbitrary direction d.
WeightSolution solve_weights(const FMatrix& f, std::size_t k, const MetricVector& f_around,
                             const Eigen::VectorXd& d) {
    check_level(f, k);
    if (f_around.size() != k) throw DimensionError("f_around must have length k");
    const Eigen::MatrixXd fk = f.leading(k);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(fk);
    const Eigen::VectorXd y = lu.solve(f.shift(f_around));
    const Eigen::VectorXd z = lu.solve(d);
    const double denom = z.sum();
    if (std::abs(denom) < 1e-14)
        throw ConditioningError("search direction is degenerate for this scalarization matrix");
    WeightSolution out;
    out.c_star = (y.sum() - 1.0) / denom;
    const Eigen::VectorXd s = y - out.c_star * z;
    out.s = from_eigen(s);
    out.nonnegative = s.minCoeff() >= kWeightNegTol;
    return out;
}

std::vector<double> clamp_to_simplex(const std::vector<double>& s) {
    std::vector<double> out(s.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        out[i] = std::max(s[i], 0.0);
        sum += out[i];
    }
    for (double& v : out) v /= sum;  // sum > 0: the input sums to 1
    return out;
}

}  // namespace

FMatrix::FMatrix(const MetricVector& f_min, const MetricVector& f_max)
    : f_min_(f_min), f_max_(f_max) {
    const std::size_t m = f_min.size();
    if (m != f_max.size()) throw DimensionError("f_min and f_max must share one length");
    if (m < 2) throw DimensionError("scalarization needs at least two metrics");
    for (std::size_t i = 0; i < m; ++i)
        if (f_min[i] > f_max[i]) throw DomainError("f_min exceeds f_max");

    shifted_.setZero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        const double range = f_max[i] - f_min[i];
        if (range < 1e-12)
            throw ConditioningError("degenerate metric range makes the matrix singular");
        for (std::size_t j = 0; j < m; ++j)
            if (i != j)
                shifted_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = range;
    }

    condition_.reserve(m - 1);
    for (std::size_t k = 2; k <= m; ++k) {
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(leading(k));
        const double smin = svd.singularValues().minCoeff();
        if (smin < 1e-12) throw ConditioningError("singular leading sub-matrix");
        condition_.push_back(svd.singularValues().maxCoeff() / smin);
    }
}

Eigen::MatrixXd FMatrix::leading(std::size_t k) const {
    if (k < 2 || k > dim()) throw DimensionError("sub-matrix order must be in [2, m]");
    return shifted_.topLeftCorner(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
}

double FMatrix::condition(std::size_t k) const {
    if (k < 2 || k > dim()) throw DimensionError("sub-matrix order must be in [2, m]");
    return condition_[k - 2];
}

Eigen::VectorXd FMatrix::shift(const MetricVector& f) const {
    if (f.size() > dim()) throw DimensionError("metric vector longer than the matrix order");
    Eigen::VectorXd out(static_cast<Eigen::Index>(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = f[i] - f_min_[i];
    return out;
}

AnchorResult solve_anchor(const Problem& p, std::size_t i, const SolverConfig& cfg) {
    if (i < 1 || i > p.metric_dim()) throw DimensionError("anchor index must be in [1, m]");
    const ScalarFn fn = [&](const std::vector<double>& x) { return p.evaluate(x)[i - 1]; };
    const BoxMinimum res = minimize_box(fn, p.lower(), p.upper(), cfg.anchor_multistarts, cfg);
    return AnchorResult{res.x, res.value, res.converged};
}

NbiSolution solve_nbi(const Problem& p, const FMatrix& f, std::size_t k,
                      const std::vector<double>& s, const std::vector<double>& n,
                      const SolverConfig& cfg) {
    check_level(f, k);
    if (s.size() != k || n.size() != k)
        throw DimensionError("weights and direction must have length k");
    double sum = 0.0, n_inf = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        if (s[i] < kWeightNegTol) throw DomainError("weights must be nonnegative");
        sum += s[i];
        n_inf = std::max(n_inf, std::abs(n[i]));
    }
    if (std::abs(sum - 1.0) > 1e-9) throw DomainError("weights must sum to 1");
    if (n_inf == 0.0) throw DomainError("search direction must be nonzero");

    const Eigen::VectorXd sv = to_eigen(s);
    const Eigen::VectorXd nv = to_eigen(n);
    const Eigen::VectorXd w0 = f.leading(k) * sv;

    // The shifted attainable set lies above 0, so components moving down
    // bound the ray; tiny slack absorbs anchor round-off.
    double c_hi = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
        if (nv(static_cast<Eigen::Index>(j)) >= 0.0) continue;
        const double span = f.f_max()[j] - f.f_min()[j];
        const double room = w0(static_cast<Eigen::Index>(j)) + 1e-6 * std::max(1.0, span);
        c_hi = std::min(c_hi, room / -nv(static_cast<Eigen::Index>(j)));
    }
    if (!std::isfinite(c_hi)) throw DomainError("direction never meets the attainable set");
    c_hi = std::max(c_hi, 1e-12);

    const std::size_t d = p.design_dim();
    std::vector<double> lo = p.lower();
    std::vector<double> hi = p.upper();
    lo.push_back(0.0);
    hi.push_back(c_hi);

    const ScalarFn obj = [d](const std::vector<double>& z) { return -z[d]; };
    const VectorFn constraint = [&, d](const std::vector<double>& z) {
        const DesignVector x(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(d));
        const MetricVector fx = p.evaluate(x);
        std::vector<double> h(k);
        for (std::size_t j = 0; j < k; ++j)
            h[j] = w0(static_cast<Eigen::Index>(j)) +
                   z[d] * nv(static_cast<Eigen::Index>(j)) - (fx[j] - f.f_min()[j]);
        return h;
    };

    // The merit function is exactly quadratic along the offset coordinate, so
    // the solver can take exact steps along it.
    const ConstrainedMinimum res =
        minimize_constrained(obj, constraint, lo, hi, cfg.multistarts, cfg, d);

    NbiSolution out;
    out.c_opt = res.x[d];
    out.x_opt.assign(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(d));
    std::vector<double> fk(k);
    const MetricVector fx = p.evaluate(out.x_opt);
    for (std::size_t j = 0; j < k; ++j) fk[j] = fx[j];
    out.f_opt = MetricVector(fk);
    out.residual = res.residual;
    if (res.converged && res.residual <= cfg.residual_tol)
        out.status = SolveStatus::converged;
    else if (res.residual > kInfeasibleResidual)
        out.status = SolveStatus::infeasible;
    else
        out.status = SolveStatus::max_iter;
    return out;
}

WeightSolution vertical_weights(const FMatrix& f, std::size_t k, const MetricVector& f_around) {
    check_level(f, k);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
    v(static_cast<Eigen::Index>(k - 1)) = -1.0;
    return solve_weights(f, k, f_around, v);
}

WeightSolution diagonal_weights(const FMatrix& f, std::size_t k, const MetricVector& f_around) {
    check_level(f, k);
    const Eigen::VectorXd d =
        -(f.leading(k) * Eigen::VectorXd::Ones(static_cast<Eigen::Index>(k)));
    return solve_weights(f, k, f_around, d);
}

AcquireResult acquire_pf_point(const Problem& p, const FMatrix& f, std::size_t k,
                               const MetricVector& f_around, const SolverConfig& cfg) {
    check_level(f, k);
    if (f_around.size() != k) throw DimensionError("f_around must have length k");

    std::vector<double> vertical(k, 0.0);
    vertical[k - 1] = -1.0;
    const std::vector<double> diagonal =
        from_eigen(-(f.leading(k) * Eigen::VectorXd::Ones(static_cast<Eigen::Index>(k))));

    std::ostringstream diag;
    const WeightSolution wv = vertical_weights(f, k, f_around);
    if (wv.nonnegative) {
        AcquireResult out{solve_nbi(p, f, k, clamp_to_simplex(wv.s), vertical, cfg),
                          AcquireBranch::vertical, wv.s};
        if (out.solution.status != SolveStatus::infeasible) return out;
        diag << "vertical residual " << out.solution.residual << "; ";
    } else {
        diag << "vertical weights negative; ";
    }

    const WeightSolution wd = diagonal_weights(f, k, f_around);
    if (wd.nonnegative) {
        AcquireResult out{solve_nbi(p, f, k, clamp_to_simplex(wd.s), diagonal, cfg),
                          AcquireBranch::diagonal, wd.s};
        if (out.solution.status != SolveStatus::infeasible) return out;
        diag << "diagonal residual " << out.solution.residual << "; ";
    } else {
        diag << "diagonal weights negative; ";
    }

    const std::vector<double> rectified = clamp_to_simplex(wd.s);
    AcquireResult out{solve_nbi(p, f, k, rectified, diagonal, cfg), AcquireBranch::rectified,
                      rectified};
    if (out.solution.status != SolveStatus::infeasible) return out;
    diag << "rectified residual " << out.solution.residual;
    throw AcquisitionError("all acquisition branches infeasible at level " +
                           std::to_string(k) + ": " + diag.str());
}

}  // namespace pfront
