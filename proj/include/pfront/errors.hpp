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

#ifndef PFRONT_ERRORS_HPP
#define PFRONT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pfront {

/// Vector length / index mismatch between operands.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Argument outside its mathematical domain (box violation, empty set, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Matrix factorization failed even after regularization.
struct ConditioningError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The rectified acquisition cascade exhausted all branches.
struct AcquisitionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Model (de)serialization failure: corrupt file, version mismatch.
struct ModelIoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Run configuration is missing or inconsistent.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pfront

#endif
