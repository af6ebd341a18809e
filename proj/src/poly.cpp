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

#include "pfront/poly.hpp"

#include <Eigen/Dense>
#include <utility>

#include "pfront/errors.hpp"

namespace pfront {

std::vector<double> poly2_basis(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> b;
    b.reserve(poly2_basis_size(n));
    b.push_back(1.0);
    for (std::size_t i = 0; i < n; ++i) b.push_back(x[i]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) b.push_back(x[i] * x[j]);
    for (std::size_t i = 0; i < n; ++i) b.push_back(x[i] * x[i]);
    return b;
}

std::size_t poly2_basis_size(std::size_t n) { return 1 + 2 * n + n * (n - 1) / 2; }

PolyModel PolyModel::fit(std::vector<MetricVector> inputs, std::vector<double> targets) {
    if (inputs.empty()) throw DimensionError("polynomial fit requires at least one point");
    if (inputs.size() != targets.size())
        throw DimensionError("polynomial fit: input/target count mismatch");
    const std::size_t n = inputs.front().size();
    for (const auto& p : inputs)
        if (p.size() != n) throw DimensionError("polynomial fit: ragged input dimensions");

    const std::size_t rows = inputs.size();
    const std::size_t cols = poly2_basis_size(n);
    Eigen::MatrixXd phi(rows, cols);
    Eigen::VectorXd t(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::vector<double> b = poly2_basis(inputs[r].values());
        for (std::size_t c = 0; c < cols; ++c)
            phi(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = b[c];
        t(static_cast<Eigen::Index>(r)) = targets[r];
    }

    PolyModel model;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(phi);
    Eigen::VectorXd coef;
    if (qr.rank() < static_cast<Eigen::Index>(cols)) {
        // Normal equations with a small ridge keep the solve well posed when
        // the basis is not identifiable from the data.
        const Eigen::MatrixXd gram = phi.transpose() * phi;
        const double scale = gram.trace() / static_cast<double>(cols);
        const double ridge = 1e-8 * (scale > 0.0 ? scale : 1.0);
        Eigen::MatrixXd reg = gram;
        reg.diagonal().array() += ridge;
        coef = reg.llt().solve(phi.transpose() * t);
        model.ridge_stabilized_ = true;
    } else {
        coef = qr.solve(t);
    }

    model.inputs_ = std::move(inputs);
    model.targets_ = std::move(targets);
    model.coefficients_.assign(coef.data(), coef.data() + coef.size());
    return model;
}

PolyModel PolyModel::from_parts(std::vector<MetricVector> inputs, std::vector<double> targets,
                                std::vector<double> coefficients, bool ridge_stabilized) {
    if (inputs.empty()) throw DimensionError("polynomial model requires at least one point");
    if (coefficients.size() != poly2_basis_size(inputs.front().size()))
        throw DimensionError("polynomial model: coefficient count does not match basis");
    PolyModel model;
    model.inputs_ = std::move(inputs);
    model.targets_ = std::move(targets);
    model.coefficients_ = std::move(coefficients);
    model.ridge_stabilized_ = ridge_stabilized;
    return model;
}

double PolyModel::predict_mean(const MetricVector& f) const {
    if (f.size() != input_dim())
        throw DimensionError("polynomial predict: query dimension mismatch");
    const std::vector<double> b = poly2_basis(f.values());
    double mean = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) mean += coefficients_[i] * b[i];
    return mean;
}

}  // namespace pfront
