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

#include "pfront/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "pfront/errors.hpp"

namespace pfront {

MetricVector::MetricVector(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
        if (!std::isfinite(v)) throw DomainError("metric vector entries must be finite");
    }
}

MetricVector::MetricVector(std::initializer_list<double> values)
    : MetricVector(std::vector<double>(values)) {}

MetricVector MetricVector::head(std::size_t count) const {
    if (count == 0 || count > values_.size())
        throw DimensionError("head count must be in [1, size]");
    return MetricVector(std::vector<double>(values_.begin(),
                                            values_.begin() + static_cast<std::ptrdiff_t>(count)));
}

MetricVector quantize(const MetricVector& v, double grid) {
    if (!(grid > 0.0)) throw DomainError("quantization grid must be positive");
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        // +0.0 normalizes -0.0 so quantized vectors compare bitwise-stable.
        out[i] = std::round(v[i] / grid) * grid + 0.0;
    }
    return MetricVector(std::move(out));
}

MetricSet::MetricSet(const std::vector<MetricVector>& members) {
    const std::size_t n = members.size();
    for (const MetricVector& m : members)
        if (m.size() != members.front().size())
            throw DimensionError("metric set members must share one length");
    if (n == 0) return;

    // Lexicographic sort groups exact duplicates; stability makes the first
    // element of each run the earliest insertion, which is the one kept.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return members[i].values() < members[j].values();
    });
    std::vector<bool> keep(n, false);
    for (std::size_t i = 0; i < n; ++i)
        if (i == 0 || !(members[order[i]] == members[order[i - 1]])) keep[order[i]] = true;

    members_.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        if (keep[i]) members_.push_back(members[i]);
}

std::size_t MetricSet::dim() const { return members_.empty() ? 0 : members_.front().size(); }

bool MetricSet::contains(const MetricVector& v) const {
    for (const MetricVector& m : members_)
        if (m == v) return true;
    return false;
}

}  // namespace pfront
