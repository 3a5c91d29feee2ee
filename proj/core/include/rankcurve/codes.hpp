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

#include <climits>
#include <optional>
#include <vector>

#include "rankcurve/linpoly.hpp"

namespace rankcurve {

struct Budget {
  uint64_t codewords = 10'000'000;
  uint64_t tuples = 10'000'000;
  uint64_t field_size = uint64_t{1} << 20;

  // RANKCURVE_BUDGET overrides the codeword and tuple budgets.
  static Budget from_env();
};

struct NormalFormFlags {
  bool first_is_monomial = false;
  bool distinct_max_degrees = false;
  bool distinct_min_degrees = false;
  bool monic = false;
  bool monomial_degrees = false;
  bool all() const {
    return first_is_monomial && distinct_max_degrees && distinct_min_degrees && monic && monomial_degrees;
  }
};

class RankCode {
 public:
  static RankCode create(std::vector<LinPoly> gens, std::optional<int> t = std::nullopt);

  const FieldPtr& ctx() const { return ctx_; }
  const std::vector<LinPoly>& gens() const { return gens_; }
  uint64_t q() const { return ctx_->q(); }
  int n() const { return static_cast<int>(ctx_->N()); }
  int r() const { return static_cast<int>(gens_.size()); }
  std::optional<int> t() const { return t_; }
  NormalFormFlags normal_form() const;

 private:
  RankCode() = default;
  FieldPtr ctx_;
  std::vector<LinPoly> gens_;
  std::optional<int> t_;
};

// Number of codewords up to F_{q^n}-scalars: (Q^r - 1)/(Q - 1).
uint64_t projective_count(const RankCode& code);
// Coefficient vector of the index-th projective representative; the first
// nonzero entry is 1.
std::vector<Felt> projective_point(const RankCode& code, uint64_t index);
LinPoly codeword(const RankCode& code, const std::vector<Felt>& coeffs);

struct SpectrumPartial {
  uint64_t examined = 0;
  int min_rank = INT_MAX;
  uint64_t witness_index = UINT64_MAX;
  std::vector<uint64_t> histogram;
  void merge(const SpectrumPartial& o);
};

SpectrumPartial scan_spectrum(const RankCode& code, uint64_t begin, uint64_t end, unsigned width = 0);

struct MrdVerdict {
  int d = 0;
  bool is_mrd = false;
  uint64_t examined = 0;
  std::vector<Felt> witness_coeffs;
  std::vector<uint64_t> histogram;
};

MrdVerdict finalize_spectrum(const RankCode& code, const SpectrumPartial& part);
MrdVerdict min_distance(const RankCode& code, const Budget& budget = {}, unsigned width = 0);

struct ScatteredVerdict {
  bool scattered = true;
  std::optional<Felt> witness;
  int witness_kernel_dim = 0;
  uint64_t examined = 0;
};

ScatteredVerdict is_scattered(const LinPoly& f, int t, unsigned width = 0);

uint64_t moore_tuple_count(const RankCode& code);
std::vector<Felt> moore_tuple(const RankCode& code, uint64_t index);

struct MoorePartial {
  uint64_t examined = 0;
  uint64_t vanishing = 0;
  uint64_t violation_index = UINT64_MAX;
  void merge(const MoorePartial& o);
};

MoorePartial scan_moore(const RankCode& code, uint64_t begin, uint64_t end, unsigned width = 0);

struct MooreVerdict {
  bool is_moore = true;
  uint64_t examined = 0;
  uint64_t vanishing = 0;
  std::vector<Felt> witness;
};

MooreVerdict finalize_moore(const RankCode& code, const MoorePartial& part);
MooreVerdict is_moore_set(const RankCode& code, const Budget& budget = {}, unsigned width = 0);

struct ProbeEntry {
  uint32_t m = 1;
  bool verdict = false;
  std::optional<Felt> witness;
  int min_distance = 0;
};

LinPoly embed_linpoly(const LinPoly& f, const Embedding& emb);
std::vector<ProbeEntry> probe_exceptional(const LinPoly& f, int t, const std::vector<uint32_t>& ms,
                                          const Budget& budget = {}, unsigned width = 0);
std::vector<ProbeEntry> probe_exceptional(const RankCode& code, const std::vector<uint32_t>& ms,
                                          const Budget& budget = {}, unsigned width = 0);

RankCode make_gabidulin(FieldPtr ctx, int r, int s);
RankCode make_twisted(FieldPtr ctx, int r, int s, Felt delta);
LinPoly make_lp(FieldPtr ctx, int t, Felt delta);

}  // namespace rankcurve
