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

#include <array>
#include <map>
#include <string>
#include <vector>

#include "rankcurve/gf.hpp"

namespace rankcurve {

enum Var : int { X = 0, Y = 1, Z = 2 };

// Exponents are packed 21 bits per variable.
constexpr uint32_t kMaxExponent = (1u << 21) - 1;

inline uint64_t pack_exponents(uint64_t x, uint64_t y, uint64_t z) {
  if (x > kMaxExponent || y > kMaxExponent || z > kMaxExponent)
    raise(ErrorCode::ExponentOverflow, "exponent exceeds 2^21 - 1");
  return (x << 42) | (y << 21) | z;
}
inline uint32_t exponent_of(uint64_t key, int var) {
  return static_cast<uint32_t>((key >> (21 * (2 - var))) & kMaxExponent);
}
inline uint32_t key_degree(uint64_t key) {
  return exponent_of(key, X) + exponent_of(key, Y) + exponent_of(key, Z);
}

class MPoly {
 public:
  struct Term {
    uint64_t key;
    Felt c;
  };

  explicit MPoly(FieldPtr ctx) : ctx_(std::move(ctx)) {}
  static MPoly constant(FieldPtr ctx, Felt c);
  static MPoly monomial(FieldPtr ctx, Felt c, uint32_t ex, uint32_t ey, uint32_t ez = 0);
  static MPoly variable(FieldPtr ctx, Var v);
  // Sorts, merges equal exponents and drops zeros.
  static MPoly from_terms(FieldPtr ctx, std::vector<Term> terms);

  const FieldPtr& ctx() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  int min_degree() const;
  uint32_t degree_in(Var v) const;

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator-() const;
  MPoly scaled(Felt c) const;
  bool operator==(const MPoly& o) const;
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  Felt coeff(uint32_t ex, uint32_t ey, uint32_t ez = 0) const;
  Felt eval(Felt x, Felt y, Felt z) const;
  Felt eval(Felt x, Felt y) const { return eval(x, y, ctx_->zero()); }
  MPoly specialize(Var v, Felt value) const;
  MPoly swap_vars(Var a, Var b) const;
  MPoly derivative(Var v) const;
  // P^{p^j}: coefficients raised to p^j and exponents multiplied by p^j.
  MPoly frobenius_power(uint32_t j) const;
  MPoly homogeneous_part(uint32_t d) const;
  std::map<uint32_t, MPoly> homogeneous_parts() const;
  MPoly truncated(uint32_t max_degree) const;
  // Homogenizes a polynomial in X, Y with Z up to the given degree.
  MPoly homogenized(uint32_t degree) const;

  std::string to_string() const;

 private:
  FieldPtr ctx_;
  std::vector<Term> terms_;
};

// binom(n, k) mod p via Lucas's theorem.
uint32_t binomial_mod_p(uint64_t n, uint64_t k, uint32_t p);
// Calls fn(i, c) for every i with binom(n, i) = c != 0 mod p.
template <class Fn>
void for_each_lucas(uint64_t n, uint32_t p, Fn fn);

// P(X + u, Y + v), with Z left unchanged.
MPoly translate(const MPoly& P, Felt u, Felt v);
// P(X + a Y, Y).
MPoly shear(const MPoly& P, Felt a);

template <class Fn>
void for_each_lucas(uint64_t n, uint32_t p, Fn fn) {
  std::vector<uint32_t> digits;
  for (uint64_t m = n; m; m /= p) digits.push_back(static_cast<uint32_t>(m % p));
  std::vector<uint32_t> cur(digits.size(), 0);
  std::vector<uint64_t> place(digits.size(), 1);
  for (std::size_t i = 1; i < digits.size(); ++i) place[i] = place[i - 1] * p;
  while (true) {
    uint64_t i = 0;
    for (std::size_t d = 0; d < cur.size(); ++d) i += cur[d] * place[d];
    fn(i, binomial_mod_p(n, i, p));
    std::size_t d = 0;
    while (d < cur.size() && cur[d] == digits[d]) cur[d++] = 0;
    if (d == cur.size()) break;
    ++cur[d];
  }
}

}  // namespace rankcurve
