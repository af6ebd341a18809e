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

#ifndef PFRONT_METRIC_HPP
#define PFRONT_METRIC_HPP

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace pfront {

/// A point in metric space: an immutable vector of finite reals.
class MetricVector {
public:
    MetricVector() = default;
    /// Throws DomainError on NaN/Inf entries.
    explicit MetricVector(std::vector<double> values);
    MetricVector(std::initializer_list<double> values);

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

    /// First `count` entries as a new vector; throws DimensionError when
    /// count is 0 or exceeds size().
    MetricVector head(std::size_t count) const;

    bool operator==(const MetricVector& other) const = default;

private:
    std::vector<double> values_;
};

/// Entrywise rounding to the nearest multiple of `grid`. Set operations use
/// exact equality; callers quantize first when inputs carry round-off noise.
MetricVector quantize(const MetricVector& v, double grid = 1e-12);

/// A finite, deduplicated collection of equal-length metric vectors.
/// Iteration order is first-insertion order and is deterministic.
class MetricSet {
public:
    MetricSet() = default;
    explicit MetricSet(const std::vector<MetricVector>& members);

    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    /// Common member length; 0 for the empty set.
    std::size_t dim() const;
    bool contains(const MetricVector& v) const;

    const std::vector<MetricVector>& members() const { return members_; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    bool operator==(const MetricSet& other) const = default;

private:
    std::vector<MetricVector> members_;
};

}  // namespace pfront

#endif
