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

#include <string>
#include <utility>
#include <vector>

#include "rankcurve/gf.hpp"

namespace rankcurve {

using FqMatrix = std::vector<std::vector<Felt>>;

// sum_{i<N} a_i X^{q^i} over F_{q^N}, reduced modulo X^{q^N} - X.
class LinPoly {
 public:
  explicit LinPoly(FieldPtr ctx);
  LinPoly(FieldPtr ctx, std::vector<Felt> coeffs);

  static LinPoly monomial(FieldPtr ctx, int64_t i, Felt c);
  static LinPoly monomial(FieldPtr ctx, int64_t i);
  static LinPoly from_terms(FieldPtr ctx, const std::vector<std::pair<int64_t, Felt>>& terms);
  static LinPoly parse(FieldPtr ctx, const std::string& literal);

  const FieldPtr& ctx() const { return ctx_; }
  const std::vector<Felt>& coeffs() const { return a_; }
  Felt coeff(std::size_t i) const { return a_[i]; }
  std::size_t size() const { return a_.size(); }
  bool is_zero() const;

  Felt operator()(Felt x) const;
  int qdeg() const;
  int min_qdeg() const;

  LinPoly operator+(const LinPoly& o) const;
  LinPoly operator-(const LinPoly& o) const;
  LinPoly scaled(Felt c) const;
  bool operator==(const LinPoly& o) const { return ctx_ == o.ctx_ && a_ == o.a_; }

  // Images of the F_q-basis 1, b, ..., b^{N-1}.
  std::vector<Felt> basis_images() const;
  // Column j holds the F_q-coordinates of L(b^j).
  FqMatrix matrix() const;
  int rank() const;
  int kernel_dim() const;

  std::vector<std::pair<int, uint32_t>> terms() const;
  std::string to_string() const;

 private:
  FieldPtr ctx_;
  std::vector<Felt> a_;
};

LinPoly lp_compose(const LinPoly& L, const LinPoly& M);

// F_q-basis of F_{q^N} used by lp_matrix: powers of the modulus root.
std::vector<Felt> fq_basis(const FieldCtx& ctx);
// Rank over F_q of the F_q-linear map whose basis images are given.
int rank_of_images(const FieldCtx& ctx, const std::vector<Felt>& images);

}  // namespace rankcurve
