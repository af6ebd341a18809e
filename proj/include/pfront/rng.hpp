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

#ifndef PFRONT_RNG_HPP
#define PFRONT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace pfront {

/// Seeded generator with portable reproducibility: uniform variates are
/// derived from raw engine words instead of std:: distributions, so a given
/// seed yields the same stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t next_word() { return engine_(); }

    /// Uniform weight vector on the k-simplex via normalized exponentials.
    std::vector<double> simplex_weights(std::size_t k) {
        std::vector<double> w(k);
        double sum = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            double u = uniform();
            // -log(1-u) is Exp(1); u < 1 by construction
            w[i] = -std::log1p(-u);
            sum += w[i];
        }
        if (sum <= 0.0) {  // astronomically unlikely: all draws hit u == 0
            for (auto& x : w) x = 1.0 / static_cast<double>(k);
            return w;
        }
        for (auto& x : w) x /= sum;
        return w;
    }

    /// Deterministic sub-stream seed; stream ids give independent generators.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        // splitmix64 finalizer over the combined word
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

/// Low-discrepancy points for deterministic multi-starts.
class HaltonSequence {
public:
    explicit HaltonSequence(std::size_t dim) : dim_(dim), index_(1) {}

    /// Next point in [0,1)^dim.
    std::vector<double> next() {
        static constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                          23, 29, 31, 37, 41, 43, 47, 53};
        std::vector<double> p(dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            const int base = kPrimes[j % (sizeof(kPrimes) / sizeof(int))];
            double f = 1.0, r = 0.0;
            for (std::size_t i = index_; i > 0; i /= base) {
                f /= base;
                r += f * static_cast<double>(i % base);
            }
            p[j] = r;
        }
        ++index_;
        return p;
    }

private:
    std::size_t dim_;
    std::size_t index_;
};

}  // namespace pfront

#endif
