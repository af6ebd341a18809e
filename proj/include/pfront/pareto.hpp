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

#ifndef PFRONT_PARETO_HPP
#define PFRONT_PARETO_HPP

#include <cstddef>

#include "pfront/metric.hpp"

namespace pfront {

/// Pareto dominance under minimization: a <= b in every coordinate and
/// a != b. Throws DimensionError on length mismatch.
bool dominates(const MetricVector& a, const MetricVector& b);

/// Keeps the first `level` coordinates of f.
MetricVector project(const MetricVector& f, std::size_t level);

/// Elementwise projection; projections that collide collapse to one member.
MetricSet project_set(const MetricSet& a, std::size_t level);

/// Exact pairwise non-dominated filtering. O(n^2); intended as an oracle and
/// for modest set sizes, not as a fast sorter.
MetricSet extract_front(const MetricSet& a);

}  // namespace pfront

#endif
