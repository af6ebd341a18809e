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

#include "pfront/testbench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "pfront/errors.hpp"
#include "pfront/rng.hpp"

namespace pfront {
namespace {

constexpr double kPi = 3.14159265358979323846;

double sq(double v) { return v * v; }

}  // namespace

Problem::Problem(std::string name, std::vector<double> lower, std::vector<double> upper,
                 MetricVector f_max)
    : name_(std::move(name)),
      lower_(std::move(lower)),
      upper_(std::move(upper)),
      f_max_(std::move(f_max)) {}

MetricVector Problem::evaluate(const DesignVector& x) const {
    if (x.size() != design_dim())
        throw DimensionError("design vector length mismatch for " + name_);
    DesignVector clamped = x;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double slack = 1e-12 * std::max({1.0, std::abs(lower_[j]), std::abs(upper_[j])});
        if (x[j] < lower_[j] - slack || x[j] > upper_[j] + slack)
            throw DomainError("design vector outside the box for " + name_);
        clamped[j] = std::clamp(x[j], lower_[j], upper_[j]);
    }
    return body(clamped);
}

MetricSet Problem::true_pf_sample(std::size_t n, std::uint64_t seed) const {
    if (n == 0) throw DomainError("sample count must be positive");
    Rng rng(seed);
    const std::size_t pdim = metric_dim() - 1;
    std::vector<MetricVector> pts;
    pts.reserve(n);
    auto draw = [&] {
        std::vector<double> u(pdim);
        for (double& ui : u) ui = rng.uniform();
        pts.push_back(pf_from_params(u));
    };
    for (std::size_t i = 0; i < n; ++i) draw();
    MetricSet set(pts);
    // Continuous draws collide with probability ~0; the cap guards degeneracy.
    for (std::size_t attempt = 0; set.size() < n && attempt < 16 * n + 64; ++attempt) {
        draw();
        set = MetricSet(pts);
    }
    if (set.size() < n) throw DomainError("true-PF sampler failed to produce distinct points");
    return set;
}

double Problem::closed_form_distance(const MetricVector&) const { return -1.0; }

const std::vector<double>& Problem::oracle_grid() const {
    std::call_once(grid_once_, [this] {
        const std::size_t m = metric_dim();
        std::vector<MetricVector> pts;
        if (m == 2) {
            pts.reserve(kPfOracleGridM2);
            for (std::size_t i = 0; i < kPfOracleGridM2; ++i) {
                const double u = static_cast<double>(i) / (kPfOracleGridM2 - 1);
                pts.push_back(pf_from_params({u}));
            }
        } else {
            pts.reserve(kPfOracleGridM3 * kPfOracleGridM3);
            for (std::size_t i = 0; i < kPfOracleGridM3; ++i) {
                const double u1 = static_cast<double>(i) / (kPfOracleGridM3 - 1);
                for (std::size_t j = 0; j < kPfOracleGridM3; ++j) {
                    const double u2 = static_cast<double>(j) / (kPfOracleGridM3 - 1);
                    pts.push_back(pf_from_params({u1, u2}));
                }
            }
        }
        std::sort(pts.begin(), pts.end(), [](const MetricVector& a, const MetricVector& b) {
            return a[0] < b[0];
        });
        grid_.resize(pts.size() * m);
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t k = 0; k < m; ++k) grid_[i * m + k] = pts[i][k];
    });
    return grid_;
}

double Problem::distance_to_true_pf(const MetricVector& f) const {
    const std::size_t m = metric_dim();
    if (f.size() != m) throw DimensionError("metric vector length mismatch for " + name_);
    const double closed = closed_form_distance(f);
    if (closed >= 0.0) return closed;

    const std::vector<double>& g = oracle_grid();
    const std::size_t n = g.size() / m;
    // Exact nearest neighbor: grid is sorted by f_1, so the scan widens from
    // the f_1 insertion point and stops once the f_1 gap alone exceeds best.
    std::size_t lo = 0, hi = n;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (g[mid * m] < f[0])
            lo = mid + 1;
        else
            hi = mid;
    }
    double best = std::numeric_limits<double>::infinity();
    auto visit = [&](std::size_t i) {
        double d2 = 0.0;
        for (std::size_t k = 0; k < m; ++k) d2 += sq(g[i * m + k] - f[k]);
        best = std::min(best, d2);
    };
    std::ptrdiff_t left = static_cast<std::ptrdiff_t>(lo) - 1;
    std::size_t right = lo;
    while (true) {
        const bool can_left = left >= 0 && sq(g[static_cast<std::size_t>(left) * m] - f[0]) < best;
        const bool can_right = right < n && sq(g[right * m] - f[0]) < best;
        if (!can_left && !can_right) break;
        if (can_left) visit(static_cast<std::size_t>(left--));
        if (can_right) visit(right++);
    }
    return std::sqrt(best);
}

namespace {

// f_1 = x_1; f_2 = g(1 - sqrt(f_1/g)) with g = 1 + 9*mean(x_2..x_d).
// Front at g = 1: f_2 = 1 - sqrt(f_1).
class Zdt1 final : public Problem {
public:
    Zdt1()
        : Problem("zdt1", std::vector<double>(6, 0.0), std::vector<double>(6, 1.0),
                  MetricVector{1.0, 1.0}) {}

    double pf_residual(const MetricVector& f) const override {
        return std::sqrt(std::max(f[0], 0.0)) + f[1] - 1.0;
    }

protected:
    MetricVector body(const DesignVector& x) const override {
        double tail = 0.0;
        for (std::size_t j = 1; j < x.size(); ++j) tail += x[j];
        const double g = 1.0 + 9.0 * tail / static_cast<double>(x.size() - 1);
        const double f1 = x[0];
        return MetricVector{f1, g - std::sqrt(f1 * g)};
    }

    MetricVector pf_from_params(const std::vector<double>& u) const override {
        // Parametrized by sqrt(f_1) so the steep low-f_1 end stays dense.
        return MetricVector{sq(u[0]), 1.0 - u[0]};
    }
};

// f = [x^2, (x-2)^2]. Front at x in [0,2]: (sqrt(f_1) - 2)^2 = f_2.
class Sch final : public Problem {
public:
    Sch() : Problem("sch", {-4.0}, {8.0}, MetricVector{4.0, 4.0}) {}

    double pf_residual(const MetricVector& f) const override {
        return sq(std::sqrt(std::max(f[0], 0.0)) - 2.0) - f[1];
    }

protected:
    MetricVector body(const DesignVector& x) const override {
        return MetricVector{sq(x[0]), sq(x[0] - 2.0)};
    }

    MetricVector pf_from_params(const std::vector<double>& u) const override {
        const double t = 2.0 * u[0];
        return MetricVector{sq(t), sq(t - 2.0)};
    }
};

// Negated sphere problem: f = -unit(phi, lambda) / (1 + g), g = (x_3 - 0.5)^2.
// Front at g = 0 is the radius-1 shell in the negative octant.
class Sph final : public Problem {
public:
    Sph()
        : Problem("sph", std::vector<double>(3, 0.0), std::vector<double>(3, 1.0),
                  MetricVector{0.0, 0.0, 0.0}) {}

    double pf_residual(const MetricVector& f) const override {
        return sq(f[0]) + sq(f[1]) + sq(f[2]) - 1.0;
    }

protected:
    MetricVector body(const DesignVector& x) const override {
        const double phi = 0.5 * kPi * x[0];
        const double lam = 0.5 * kPi * x[1];
        const double scale = -1.0 / (1.0 + sq(x[2] - 0.5));
        return MetricVector{scale * std::cos(phi) * std::cos(lam),
                            scale * std::cos(phi) * std::sin(lam), scale * std::sin(phi)};
    }

    MetricVector pf_from_params(const std::vector<double>& u) const override {
        const double phi = 0.5 * kPi * u[0];
        const double lam = 0.5 * kPi * u[1];
        return MetricVector{-std::cos(phi) * std::cos(lam), -std::cos(phi) * std::sin(lam),
                            -std::sin(phi)};
    }

    // Radial projection of a negative-octant point stays in the octant, so
    // the shell distance |1 - ||f||| is exact there.
    double closed_form_distance(const MetricVector& f) const override {
        if (f[0] > 0.0 || f[1] > 0.0 || f[2] > 0.0) return -1.0;
        const double r = std::sqrt(sq(f[0]) + sq(f[1]) + sq(f[2]));
        return std::abs(1.0 - r);
    }
};

// Convex three-metric problem: with a = cos t1 cos t2, b = cos t1 sin t2,
// c = sin t1 and benign g = sum (x_i - 0.5)^2 over x_3, x_4:
//   f = [((1+g)a)^4, ((1+g)b)^4, ((1+g)c)^2].
// Front at g = 0: sqrt(f_1) + sqrt(f_2) + f_3 = 1; the spec box keeps the
// patch with sqrt(f_1), sqrt(f_2) <= 0.5.
class Maf3 final : public Problem {
public:
    Maf3()
        : Problem("maf3", std::vector<double>(4, 0.0), std::vector<double>(4, 1.0),
                  MetricVector{0.25, 0.25, 1.0}) {}

    double pf_residual(const MetricVector& f) const override {
        return std::sqrt(std::max(f[0], 0.0)) + std::sqrt(std::max(f[1], 0.0)) + f[2] - 1.0;
    }

protected:
    MetricVector body(const DesignVector& x) const override {
        const double t1 = 0.5 * kPi * x[0];
        const double t2 = 0.5 * kPi * x[1];
        const double g = sq(x[2] - 0.5) + sq(x[3] - 0.5);
        const double s = 1.0 + g;
        const double a = s * std::cos(t1) * std::cos(t2);
        const double b = s * std::cos(t1) * std::sin(t2);
        const double c = s * std::sin(t1);
        return MetricVector{sq(sq(a)), sq(sq(b)), sq(c)};
    }

    MetricVector pf_from_params(const std::vector<double>& u) const override {
        // Simplex weights s with s_1, s_2 in [0, 0.5] stay inside the spec box.
        const double s1 = 0.5 * u[0];
        const double s2 = 0.5 * u[1];
        return MetricVector{sq(s1), sq(s2), 1.0 - s1 - s2};
    }
};

}  // namespace

std::shared_ptr<const Problem> make_problem(const std::string& name) {
    if (name == "zdt1") return std::make_shared<Zdt1>();
    if (name == "sch") return std::make_shared<Sch>();
    if (name == "sph") return std::make_shared<Sph>();
    if (name == "maf3") return std::make_shared<Maf3>();
    throw ConfigError("unknown problem: " + name);
}

std::vector<std::string> problem_names() { return {"zdt1", "sch", "sph", "maf3"}; }

}  // namespace pfront
