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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rankcurve/errors.hpp"

namespace rankcurve {

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

// Element of F_{q^N}. The index is the polynomial-basis coefficient vector
// read as a base-p integer, so 0 and 1 are the field's zero and one.
class Felt {
 public:
  Felt() = default;
  Felt(const FieldCtx* ctx, uint32_t index) : ctx_(ctx), v_(index) {}

  uint32_t index() const { return v_; }
  const FieldCtx* ctx() const { return ctx_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Felt operator+(Felt o) const;
  Felt operator-(Felt o) const;
  Felt operator*(Felt o) const;
  Felt operator/(Felt o) const;
  Felt operator-() const;
  Felt& operator+=(Felt o) { return *this = *this + o; }
  Felt& operator-=(Felt o) { return *this = *this - o; }
  Felt& operator*=(Felt o) { return *this = *this * o; }

  Felt inv() const;
  Felt pow(uint64_t k) const;
  Felt frob(int64_t i) const;

  bool operator==(const Felt& o) const { return v_ == o.v_ && ctx_ == o.ctx_; }
  bool operator!=(const Felt& o) const { return !(*this == o); }
  bool operator<(const Felt& o) const { return v_ < o.v_; }

 private:
  const FieldCtx* ctx_ = nullptr;
  uint32_t v_ = 0;
};

using FpMatrix = std::vector<std::vector<uint32_t>>;

class FieldCtx {
 public:
  static constexpr uint64_t kMaxSize = uint64_t{1} << 22;

  static FieldPtr create(uint32_t p, uint32_t e, uint32_t N,
                         std::optional<std::vector<uint32_t>> modulus = std::nullopt);

  uint32_t p() const { return p_; }
  uint32_t e() const { return e_; }
  uint32_t N() const { return N_; }
  uint32_t degree() const { return D_; }
  uint64_t q() const { return q_; }
  uint64_t size() const { return size_; }
  uint64_t order() const { return order_; }
  const std::vector<uint32_t>& modulus() const { return modulus_; }
  std::string spec() const;

  Felt zero() const { return Felt(this, 0); }
  Felt one() const { return Felt(this, 1); }
  Felt element(uint64_t index) const;
  Felt generator() const { return Felt(this, exp_[order_ > 1 ? 1 : 0]); }
  Felt gen_pow(int64_t k) const;
  Felt from_int(int64_t k) const;
  Felt basis(uint32_t i) const;

  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
  uint32_t mul(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    uint64_t s = uint64_t{log_[a]} + log_[b];
    if (s >= order_) s -= order_;
    return exp_[s];
  }
  uint32_t inv(uint32_t a) const;
  uint32_t pow(uint32_t a, uint64_t k) const;
  uint32_t frob(uint32_t a, int64_t i) const;
  uint32_t log(uint32_t a) const;

  Felt frobenius(Felt x, int64_t i) const { return Felt(this, frob(x.index(), i)); }
  Felt norm_rel(Felt x, uint32_t d) const;
  bool in_subfield(Felt x, uint32_t d) const;
  std::vector<Felt> subfield(uint32_t d) const;

  std::vector<uint32_t> digits(Felt x) const;
  Felt from_digits(const std::vector<uint32_t>& digits) const;
  std::vector<Felt> fq_coords(Felt x) const;
  const FpMatrix& frobenius_matrix(int64_t i) const;
  Felt apply_fp_matrix(const FpMatrix& m, Felt x) const;

  std::string format(Felt x) const;
  Felt parse(const std::string& literal) const;

 private:
  FieldCtx() = default;
  void build(std::optional<std::vector<uint32_t>> modulus);

  uint32_t p_ = 0, e_ = 0, N_ = 0, D_ = 0;
  uint64_t q_ = 0, size_ = 0, order_ = 0;
  std::vector<uint32_t> modulus_;
  std::vector<uint32_t> exp_, log_, zech_;
  std::vector<uint64_t> qpow_;
  std::vector<uint64_t> pow_p_;
  std::vector<FpMatrix> frob_mats_;
  FpMatrix coord_inv_;
  std::vector<uint32_t> omega_pows_;
};

void check_same(const FieldCtx* a, const FieldCtx* b);

inline uint32_t FieldCtx::add(uint32_t a, uint32_t b) const {
  if (a == 0) return b;
  if (b == 0) return a;
  if (p_ == 2) return a ^ b;
  uint64_t la = log_[a], lb = log_[b];
  uint64_t d = lb >= la ? lb - la : lb + order_ - la;
  uint32_t z = zech_[d];
  if (z == UINT32_MAX) return 0;
  uint64_t s = la + z;
  if (s >= order_) s -= order_;
  return exp_[s];
}

inline uint32_t FieldCtx::neg(uint32_t a) const {
  if (a == 0 || p_ == 2) return a;
  uint64_t s = uint64_t{log_[a]} + order_ / 2;
  if (s >= order_) s -= order_;
  return exp_[s];
}

inline Felt Felt::operator+(Felt o) const {
  check_same(ctx_, o.ctx_);
  return Felt(ctx_, ctx_->add(v_, o.v_));
}
inline Felt Felt::operator-(Felt o) const {
  check_same(ctx_, o.ctx_);
  return Felt(ctx_, ctx_->sub(v_, o.v_));
}
inline Felt Felt::operator*(Felt o) const {
  check_same(ctx_, o.ctx_);
  return Felt(ctx_, ctx_->mul(v_, o.v_));
}
inline Felt Felt::operator/(Felt o) const {
  check_same(ctx_, o.ctx_);
  return Felt(ctx_, ctx_->mul(v_, ctx_->inv(o.v_)));
}
inline Felt Felt::operator-() const { return Felt(ctx_, ctx_->neg(v_)); }
inline Felt Felt::inv() const { return Felt(ctx_, ctx_->inv(v_)); }
inline Felt Felt::pow(uint64_t k) const { return Felt(ctx_, ctx_->pow(v_, k)); }
inline Felt Felt::frob(int64_t i) const { return Felt(ctx_, ctx_->frob(v_, i)); }

// Roots in F_{q^N} of sum coeffs[i] X^i, by enumeration, sorted by index.
std::vector<Felt> poly_roots(const FieldCtx& ctx, const std::vector<Felt>& coeffs);

// Rank of a matrix with entries in the field, by Gaussian elimination.
std::size_t matrix_rank(std::vector<std::vector<Felt>> rows);

// Field embedding F_{p^a} -> F_{p^b}, a | b, sending the small field's
// modulus root to the first root of the modulus in the big field.
class Embedding {
 public:
  Embedding(FieldPtr small, FieldPtr big);
  Felt operator()(Felt x) const;
  const FieldPtr& small() const { return small_; }
  const FieldPtr& big() const { return big_; }
  Felt image_of_root() const { return powers_.size() > 1 ? powers_[1] : big_->one(); }

 private:
  FieldPtr small_, big_;
  std::vector<Felt> powers_;
};

bool is_prime(uint64_t n);
// Returns the prime p when n = p^k with k >= 1, otherwise 0.
uint64_t prime_power_base(uint64_t n);
std::vector<uint64_t> prime_factors(uint64_t n);

}  // namespace rankcurve
