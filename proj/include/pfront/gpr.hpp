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

#ifndef PFRONT_GPR_HPP
#define PFRONT_GPR_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "pfront/metric.hpp"

namespace pfront {

/// Squared-exponential kernel parameters. theta2 acts as an inverse squared
/// lengthscale; jitter regularizes the kernel matrix diagonal (0 = pick the
/// default ladder at fit time).
struct GprHyperParams {
    double theta1 = 1.0;
    double theta2 = 1.0;
    double jitter = 0.0;
};

/// k(p, q) = theta1 * exp(-theta2/2 * ||p - q||^2).
double kernel(const GprHyperParams& hyper, const MetricVector& p, const MetricVector& q);

/// Median pairwise squared distance of a point set; 1.0 when fewer than two
/// distinct points exist. 1/this is the scale-adaptive theta2 default.
double median_pairwise_sq_distance(const std::vector<MetricVector>& points);

struct GprPrediction {
    double mean = 0.0;
    double variance = 0.0;
};

/// Noise-free zero-mean Gaussian process regressor. Immutable after fit;
/// predict is pure. The factorized kernel matrix is kept private; inputs,
/// targets and hyperparameters round-trip through accessors so a model can
/// be rebuilt from its serialized form (predictions match to 1e-8).
class GprModel {
public:
    /// Factorizes K + jitter*I by Cholesky. When hyper.jitter is 0 the
    /// ladder starts at 1e-10*theta1 and escalates tenfold up to
    /// 1e-4*theta1 on failure; exhaustion raises ConditioningError carrying
    /// a condition estimate.
    static GprModel fit(std::vector<MetricVector> inputs, std::vector<double> targets,
                        GprHyperParams hyper);

    /// Posterior mean and variance at f; variance is clamped to [0, inf).
    GprPrediction predict(const MetricVector& f) const;

    /// Leave-one-out prediction errors y_i - mu_{-i}(x_i) via the closed
    /// form alpha_i / (K^-1)_ii. Unlike the plain training residuals, which
    /// vanish for a noise-free interpolator, these measure model error from
    /// the training set alone.
    std::vector<double> loo_residuals() const;

    std::size_t size() const { return inputs_.size(); }
    std::size_t input_dim() const { return inputs_.front().size(); }
    const std::vector<MetricVector>& inputs() const { return inputs_; }
    const std::vector<double>& targets() const { return targets_; }
    /// Hyperparameters with the jitter actually used by the factorization.
    const GprHyperParams& hyper() const { return hyper_; }

private:
    GprModel() = default;

    std::vector<MetricVector> inputs_;
    std::vector<double> targets_;
    GprHyperParams hyper_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::VectorXd alpha_;
};

}  // namespace pfront

#endif
