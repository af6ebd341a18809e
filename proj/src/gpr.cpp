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

#include "pfront/gpr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pfront/errors.hpp"

namespace pfront {

namespace {

double sq_distance(const MetricVector& p, const MetricVector& q) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) d2 += (p[i] - q[i]) * (p[i] - q[i]);
    return d2;
}

}  // namespace

double kernel(const GprHyperParams& hyper, const MetricVector& p, const MetricVector& q) {
    if (p.size() != q.size()) throw DimensionError("kernel arguments must share one length");
    return hyper.theta1 * std::exp(-0.5 * hyper.theta2 * sq_distance(p, q));
}

double median_pairwise_sq_distance(const std::vector<MetricVector>& points) {
    std::vector<double> d2;
    d2.reserve(points.size() * (points.size() - 1) / 2);
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const double d = sq_distance(points[i], points[j]);
            if (d > 0.0) d2.push_back(d);
        }
    if (d2.empty()) return 1.0;
    std::nth_element(d2.begin(), d2.begin() + static_cast<std::ptrdiff_t>(d2.size() / 2),
                     d2.end());
    return d2[d2.size() / 2];
}

GprModel GprModel::fit(std::vector<MetricVector> inputs, std::vector<double> targets,
                       GprHyperParams hyper) {
    if (inputs.empty()) throw DimensionError("gpr fit needs at least one point");
    if (inputs.size() != targets.size())
        throw DimensionError("gpr fit needs one target per input");
    for (const MetricVector& p : inputs)
        if (p.size() != inputs.front().size() || p.empty())
            throw DimensionError("gpr inputs must share one nonzero length");
    for (double t : targets)
        if (!std::isfinite(t)) throw DomainError("gpr targets must be finite");
    if (!(hyper.theta1 > 0.0) || !(hyper.theta2 > 0.0) || hyper.jitter < 0.0)
        throw DomainError("gpr hyperparameters out of range");

    const auto n = static_cast<Eigen::Index>(inputs.size());
    Eigen::MatrixXd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j)
            k(i, j) = k(j, i) = kernel(hyper, inputs[static_cast<std::size_t>(i)],
                                       inputs[static_cast<std::size_t>(j)]);

    const double jitter_cap = 1e-4 * hyper.theta1;
    double jitter = hyper.jitter > 0.0 ? hyper.jitter : 1e-10 * hyper.theta1;
    GprModel model;
    while (true) {
        Eigen::MatrixXd reg = k;
        reg.diagonal().array() += jitter;
        model.llt_.compute(reg);
        if (model.llt_.info() == Eigen::Success) break;
        if (jitter * 10.0 > jitter_cap * (1.0 + 1e-12)) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
            std::ostringstream msg;
            msg << "kernel matrix not positive definite after jitter escalation"
                << " (eigenvalue range [" << es.eigenvalues().minCoeff() << ", "
                << es.eigenvalues().maxCoeff() << "])";
            throw ConditioningError(msg.str());
        }
        jitter *= 10.0;
    }

    Eigen::VectorXd t(n);
    for (Eigen::Index i = 0; i < n; ++i) t(i) = targets[static_cast<std::size_t>(i)];
    model.alpha_ = model.llt_.solve(t);
    model.inputs_ = std::move(inputs);
    model.targets_ = std::move(targets);
    model.hyper_ = hyper;
    model.hyper_.jitter = jitter;
    return model;
}

std::vector<double> GprModel::loo_residuals() const {
    const auto n = static_cast<Eigen::Index>(inputs_.size());
    const Eigen::MatrixXd kinv = llt_.solve(Eigen::MatrixXd::Identity(n, n));
    std::vector<double> out(inputs_.size());
    for (Eigen::Index i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = alpha_(i) / kinv(i, i);
    return out;
}

GprPrediction GprModel::predict(const MetricVector& f) const {
    if (f.size() != input_dim()) throw DimensionError("gpr query length mismatch");
    const auto n = static_cast<Eigen::Index>(inputs_.size());
    Eigen::VectorXd kappa(n);
    for (Eigen::Index i = 0; i < n; ++i)
        kappa(i) = kernel(hyper_, inputs_[static_cast<std::size_t>(i)], f);

    GprPrediction out;
    out.mean = kappa.dot(alpha_);
    const Eigen::VectorXd v = llt_.matrixL().solve(kappa);
    out.variance = std::max(0.0, hyper_.theta1 - v.squaredNorm());
    return out;
}

}  // namespace pfront
