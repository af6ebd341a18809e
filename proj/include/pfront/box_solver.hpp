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

#ifndef PFRONT_BOX_SOLVER_HPP
#define PFRONT_BOX_SOLVER_HPP

#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace pfront {

/// Shared parameters of the scalarized-subproblem solver. One config is
/// used for every acquisition in a run so all modeling methods face
/// identical solver behavior.
struct SolverConfig {
    int multistarts = 8;         // low-discrepancy restarts per subproblem
    int anchor_multistarts = 16; // restarts for single-metric anchor solves
    int max_outer = 500;         // multiplier updates per start
    int max_inner = 40;          // projected-gradient steps per outer pass
    double residual_tol = 1e-6;  // equality violation, shifted metric units
    double fd_step = 1e-6;       // finite-difference step in unit-box space
    double armijo = 1e-4;        // sufficient-decrease fraction
    double step_tol = 1e-11;     // unit-box step below which inner stalls
    double penalty_init = 10.0;
    double penalty_growth = 10.0;
    double penalty_cap = 1e10;
};

using ScalarFn = std::function<double(const std::vector<double>&)>;
using VectorFn = std::function<std::vector<double>(const std::vector<double>&)>;

struct BoxMinimum {
    std::vector<double> x;
    double value = std::numeric_limits<double>::infinity();
    bool converged = false;
};

/// Multi-start projected-gradient minimization of fn over the box
/// [lo, hi]. Gradients come from central finite differences; starts come
/// from a Halton sequence, so results are deterministic.
BoxMinimum minimize_box(const ScalarFn& fn, const std::vector<double>& lo,
                        const std::vector<double>& hi, int starts, const SolverConfig& cfg);

struct ConstrainedMinimum {
    std::vector<double> x;
    double objective = std::numeric_limits<double>::infinity();
    double residual = std::numeric_limits<double>::infinity();  // max-norm of h
    bool converged = false;
};

/// Multi-start augmented-Lagrangian minimization of obj subject to
/// h(x) = 0 over the box. Each start runs projected-gradient passes on the
/// merit function with multiplier and penalty updates in between; a start
/// converges when the equality violation drops below cfg.residual_tol at a
/// stationary iterate. Feasible starts are ranked by objective, infeasible
/// ones by violation.
///
/// When obj and h are affine in one coordinate (the scalarized subproblems
/// are affine in their ray parameter), pass its index as affine_coordinate:
/// the merit is then an exact parabola along it and the inner loop
/// interleaves closed-form steps on that coordinate, which removes the
/// slow crawl of pure gradient descent along the constraint manifold.
ConstrainedMinimum minimize_constrained(const ScalarFn& obj, const VectorFn& h,
                                        const std::vector<double>& lo,
                                        const std::vector<double>& hi, int starts,
                                        const SolverConfig& cfg,
                                        std::optional<std::size_t> affine_coordinate = {});

}  // namespace pfront

#endif
