/*
 * Copyright 2026 The rankcurve Authors
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
 */

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rankcurve/curves.hpp"
#include "rankcurve/rational.hpp"

namespace rankcurve {

struct TheoremRow {
  uint64_t q = 0;
  uint32_t t = 0, k = 0;
  std::string subcase;
  // Upper bound on the singular contribution, and (2/9)(q^k + q^{2t} - (q^2 + q + 1))^2.
  Rational bound;
  Rational threshold;
  // The bound is below the threshold.
  bool direct = false;
  // The chain of estimates used by the case analysis closes.
  bool passes = false;
};

struct TheoremTable {
  GCase gcase = GCase::TwoT;
  std::vector<TheoremRow> rows;
  // (t, q) pairs failing for at least one k.
  std::set<std::pair<uint32_t, uint64_t>> failing;
};

// Prime powers in [lo, hi].
std::vector<uint64_t> prime_powers_in(uint64_t lo, uint64_t hi);

TheoremRow theorem_row(GCase gcase, uint64_t q, uint32_t t, uint32_t k);
// Rows for every q in qs, 1 <= t <= t_max (even t only for t/2), 2t < k <= k_max.
TheoremTable theorem_table(GCase gcase, const std::vector<uint64_t>& qs, uint32_t t_max, uint32_t k_max);

// Least prime power exceeding 2 (dim + 1) deg^2.
uint64_t cafure_matera_threshold(uint64_t dim, uint64_t deg);

}  // namespace rankcurve
