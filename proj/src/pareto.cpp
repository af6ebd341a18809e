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

#include "pfront/pareto.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "pfront/errors.hpp"

namespace pfront {

bool dominates(const MetricVector& a, const MetricVector& b) {
    if (a.size() != b.size()) throw DimensionError("dominance needs equal-length vectors");
    bool any_strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) any_strict = true;
    }
    return any_strict;
}

MetricVector project(const MetricVector& f, std::size_t level) { return f.head(level); }

MetricSet project_set(const MetricSet& a, std::size_t level) {
    std::vector<MetricVector> out;
    out.reserve(a.size());
    for (const MetricVector& m : a) out.push_back(project(m, level));
    return MetricSet(out);
}

MetricSet extract_front(const MetricSet& a) {
    const std::vector<MetricVector>& pts = a.members();
    const std::size_t n = pts.size();
    if (n <= 1) return a;

    // Dominance implies a strictly smaller coordinate sum, so scanning in
    // ascending-sum order lets each point be tested against survivors only.
    std::vector<double> sums(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        sums[i] = std::accumulate(pts[i].values().begin(), pts[i].values().end(), 0.0);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return sums[i] < sums[j]; });

    std::vector<bool> keep(n, false);
    std::vector<std::size_t> survivors;
    for (std::size_t idx : order) {
        bool dominated = false;
        for (std::size_t s : survivors) {
            if (dominates(pts[s], pts[idx])) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            keep[idx] = true;
            survivors.push_back(idx);
        }
    }

    std::vector<MetricVector> out;
    out.reserve(survivors.size());
    for (std::size_t i = 0; i < n; ++i)
        if (keep[i]) out.push_back(pts[i]);
    return MetricSet(out);
}

}  // namespace pfront
