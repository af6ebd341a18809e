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

#include "pfront/box_solver.hpp"

#include <algorithm>
#include <cmath>

#include "pfront/errors.hpp"
#include "pfront/rng.hpp"

namespace pfront {

namespace {

// The solver works in the unit cube; z maps a unit-box iterate onto [lo, hi].
struct UnitBox {
    const std::vector<double>& lo;
    const std::vector<double>& hi;

    std::vector<double> to_z(const std::vector<double>& u) const {
        std::vector<double> z(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) z[i] = lo[i] + u[i] * (hi[i] - lo[i]);
        return z;
    }
};

void clamp_unit(std::vector<double>& u) {
    for (double& v : u) v = std::clamp(v, 0.0, 1.0);
}

std::vector<double> fd_gradient(const ScalarFn& merit, const std::vector<double>& u, double h) {
    std::vector<double> g(u.size());
    std::vector<double> probe = u;
    for (std::size_t i = 0; i < u.size(); ++i) {
        // One-sided steps at the walls keep probes inside the unit box.
        const double up = std::min(u[i] + h, 1.0);
        const double dn = std::max(u[i] - h, 0.0);
        if (up == dn) {
            g[i] = 0.0;
            continue;
        }
        probe[i] = up;
        const double fu = merit(probe);
        probe[i] = dn;
        const double fd = merit(probe);
        probe[i] = u[i];
        g[i] = (fu - fd) / (up - dn);
    }
    return g;
}

struct InnerResult {
    double value = 0.0;
    bool stationary = false;
};

// Closed-form step along a coordinate where the merit is an exact
// parabola: fit through three box-feasible points and jump to the vertex.
// Returns true when the jump lowered the merit.
bool parabola_step(const ScalarFn& merit, std::vector<double>& u, std::size_t i,
                   double& value) {
    const double x2 = u[i];
    const double x1 = std::max(x2 - 0.25, 0.0);
    const double x3 = std::min(x2 + 0.25, 1.0);
    if (x3 - x1 < 1e-9) return false;
    std::vector<double> probe = u;
    probe[i] = x1;
    const double y1 = merit(probe);
    probe[i] = x3;
    const double y3 = merit(probe);
    const double y2 = value;

    const double denom = x1 * (y2 - y3) + x2 * (y3 - y1) + x3 * (y1 - y2);
    double target;
    if (denom > 1e-300) {
        const double num =
            x1 * x1 * (y2 - y3) + x2 * x2 * (y3 - y1) + x3 * x3 * (y1 - y2);
        target = std::clamp(num / (2.0 * denom), 0.0, 1.0);
    } else {
        // Flat or concave along this coordinate: take the better wall.
        probe[i] = 0.0;
        const double at_lo = merit(probe);
        probe[i] = 1.0;
        const double at_hi = merit(probe);
        target = at_lo < at_hi ? 0.0 : 1.0;
    }
    if (std::abs(target - x2) < 1e-15) return false;
    probe[i] = target;
    const double y = merit(probe);
    if (y >= value) return false;
    u[i] = target;
    value = y;
    return true;
}

// Projected gradient descent with Armijo backtracking on the merit,
// optionally interleaved with exact steps along one affine coordinate.
InnerResult inner_minimize(const ScalarFn& merit, std::vector<double>& u,
                           const SolverConfig& cfg, std::optional<std::size_t> affine) {
    InnerResult res;
    double value = merit(u);
    double alpha = 0.25;
    for (int it = 0; it < cfg.max_inner; ++it) {
        bool moved = false;
        if (affine) moved = parabola_step(merit, u, *affine, value);
        const std::vector<double> g = fd_gradient(merit, u, cfg.fd_step);
        while (alpha > 1e-14) {
            std::vector<double> trial(u.size());
            double decrease = 0.0;
            double step_inf = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) {
                trial[i] = std::clamp(u[i] - alpha * g[i], 0.0, 1.0);
                decrease += g[i] * (u[i] - trial[i]);
                step_inf = std::max(step_inf, std::abs(trial[i] - u[i]));
            }
            if (step_inf <= cfg.step_tol) break;
            const double trial_value = merit(trial);
            if (trial_value <= value - cfg.armijo * decrease) {
                u = std::move(trial);
                value = trial_value;
                moved = true;
                alpha = std::min(alpha * 2.0, 1.0);
                break;
            }
            alpha *= 0.5;
        }
        if (!moved) {
            res.stationary = true;
            break;
        }
    }
    res.value = value;
    return res;
}

std::vector<double> halton_start(HaltonSequence& seq) { return seq.next(); }

}  // namespace

BoxMinimum minimize_box(const ScalarFn& fn, const std::vector<double>& lo,
                        const std::vector<double>& hi, int starts, const SolverConfig& cfg) {
    if (lo.size() != hi.size() || lo.empty())
        throw DimensionError("box bounds must be nonempty and equal-length");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] <= hi[i])) throw DomainError("box lower bound exceeds upper bound");
    if (starts < 1) throw DomainError("at least one start is required");

    const UnitBox box{lo, hi};
    const ScalarFn merit = [&](const std::vector<double>& u) { return fn(box.to_z(u)); };

    BoxMinimum best;
    HaltonSequence seq(lo.size());
    for (int s = 0; s < starts; ++s) {
        std::vector<double> u =
            s == 0 ? std::vector<double>(lo.size(), 0.5) : halton_start(seq);
        clamp_unit(u);
        InnerResult inner{};
        // A handful of restarts of the inner loop approximates convergence
        // to a stationary point even when max_inner is hit repeatedly.
        for (int pass = 0; pass < 8; ++pass) {
            inner = inner_minimize(merit, u, cfg, {});
            if (inner.stationary) break;
        }
        if (inner.value < best.value) {
            best.value = inner.value;
            best.x = box.to_z(u);
            best.converged = inner.stationary;
        }
    }
    return best;
}

ConstrainedMinimum minimize_constrained(const ScalarFn& obj, const VectorFn& h,
                                        const std::vector<double>& lo,
                                        const std::vector<double>& hi, int starts,
                                        const SolverConfig& cfg,
                                        std::optional<std::size_t> affine_coordinate) {
    if (lo.size() != hi.size() || lo.empty())
        throw DimensionError("box bounds must be nonempty and equal-length");
    if (starts < 1) throw DomainError("at least one start is required");

    const UnitBox box{lo, hi};
    ConstrainedMinimum best;

    HaltonSequence seq(lo.size());
    for (int s = 0; s < starts; ++s) {
        std::vector<double> u =
            s == 0 ? std::vector<double>(lo.size(), 0.5) : halton_start(seq);
        clamp_unit(u);

        std::vector<double> lambda(h(box.to_z(u)).size(), 0.0);
        double rho = cfg.penalty_init;
        double prev_violation = std::numeric_limits<double>::infinity();
        bool converged = false;

        const auto merit = [&](const std::vector<double>& uu) {
            const std::vector<double> z = box.to_z(uu);
            double m = obj(z);
            const std::vector<double> c = h(z);
            for (std::size_t i = 0; i < c.size(); ++i)
                m += lambda[i] * c[i] + 0.5 * rho * c[i] * c[i];
            return m;
        };

        for (int outer = 0; outer < cfg.max_outer; ++outer) {
            const InnerResult inner = inner_minimize(merit, u, cfg, affine_coordinate);
            const std::vector<double> c = h(box.to_z(u));
            double violation = 0.0;
            for (double ci : c) violation = std::max(violation, std::abs(ci));
            if (violation <= cfg.residual_tol && inner.stationary) {
                converged = true;
                break;
            }
            for (std::size_t i = 0; i < c.size(); ++i) lambda[i] += rho * c[i];
            if (violation > 0.25 * prev_violation)
                rho = std::min(rho * cfg.penalty_growth, cfg.penalty_cap);
            prev_violation = violation;
        }

        const std::vector<double> z = box.to_z(u);
        const std::vector<double> c = h(z);
        double violation = 0.0;
        for (double ci : c) violation = std::max(violation, std::abs(ci));
        const double objective = obj(z);

        const bool best_feasible = best.residual <= cfg.residual_tol;
        const bool this_feasible = violation <= cfg.residual_tol;
        bool better = false;
        if (this_feasible && !best_feasible)
            better = true;
        else if (this_feasible && best_feasible)
            better = objective < best.objective;
        else if (!this_feasible && !best_feasible)
            better = violation < best.residual;
        if (better) {
            best.x = z;
            best.objective = objective;
            best.residual = violation;
            best.converged = converged;
        }
    }
    return best;
}

}  // namespace pfront
