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

#ifndef PFRONT_POLY_HPP
#define PFRONT_POLY_HPP

#include <cstddef>
#include <vector>

#include "pfront/metric.hpp"

namespace pfront {

/// Full degree-2 basis of x: [1, x_1..x_n, x_i*x_j for i<j, x_1^2..x_n^2].
/// For n=2 this is [1, x1, x2, x1*x2, x1^2, x2^2].
std::vector<double> poly2_basis(const std::vector<double>& x);

/// Number of degree-2 basis terms for n inputs: 1 + n + n(n-1)/2 + n.
std::size_t poly2_basis_size(std::size_t n);

/// Degree-2 polynomial regression level. Deterministic least squares;
/// rank-deficient systems fall back to a ridge-stabilized solve and set
/// a flag (callers may warn). Predictions carry no variance.
class PolyModel {
public:
    /// Least-squares fit over the full degree-2 basis. Throws
    /// DimensionError on empty or ragged data.
    static PolyModel fit(std::vector<MetricVector> inputs, std::vector<double> targets);

    /// Rebuilds a fitted model from its serialized parts without refitting.
    static PolyModel from_parts(std::vector<MetricVector> inputs, std::vector<double> targets,
                                std::vector<double> coefficients, bool ridge_stabilized);

    double predict_mean(const MetricVector& f) const;

    std::size_t size() const { return inputs_.size(); }
    std::size_t input_dim() const { return inputs_.front().size(); }
    const std::vector<MetricVector>& inputs() const { return inputs_; }
    const std::vector<double>& targets() const { return targets_; }
    const std::vector<double>& coefficients() const { return coefficients_; }
    bool ridge_stabilized() const { return ridge_stabilized_; }

private:
    PolyModel() = default;

    std::vector<MetricVector> inputs_;
    std::vector<double> targets_;
    std::vector<double> coefficients_;
    bool ridge_stabilized_ = false;
};

}  // namespace pfront

#endif
