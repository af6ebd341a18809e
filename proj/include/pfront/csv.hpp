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

#ifndef PFRONT_CSV_HPP
#define PFRONT_CSV_HPP

#include <string>
#include <vector>

namespace pfront {

/// Decimal form of v that parses back to the identical double (%.17g).
/// Deterministic, so repeated runs produce byte-identical files.
std::string format_double(double v);

/// Joins cells with commas. Cells must not contain commas or newlines;
/// every writer in this project emits plain identifiers and numbers.
std::string csv_line(const std::vector<std::string>& cells);

/// Splits a CSV document into rows of cells. Blank trailing lines are
/// dropped; no quoting rules (mirrors csv_line).
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

/// strtod round-trip of format_double output; throws DomainError on
/// malformed numbers.
double parse_double(const std::string& cell);

}  // namespace pfront

#endif
