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

#include "rankcurve/mpoly.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace rankcurve {

namespace {

uint64_t small_binomial(uint64_t a, uint64_t b, uint32_t p) {
  if (b > a) return 0;
  uint64_t num = 1, den = 1;
  for (uint64_t i = 0; i < b; ++i) {
    num = num * ((a - i) % p) % p;
    den = den * ((i + 1) % p) % p;
  }
  uint64_t inv = 1, base = den, e = p - 2;
  while (e) {
    if (e & 1) inv = inv * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return num * inv % p;
}

// Accumulates raw coefficient indices keyed by packed exponents.
class Accumulator {
 public:
  explicit Accumulator(const FieldCtx* ctx) : ctx_(ctx) {}
  void add(uint64_t key, uint32_t c) {
    if (c == 0) return;
    auto [it, inserted] = map_.try_emplace(key, c);
    if (!inserted) it->second = ctx_->add(it->second, c);
  }
  std::vector<MPoly::Term> take() {
    std::vector<MPoly::Term> out;
    out.reserve(map_.size());
    for (auto& [k, c] : map_)
      if (c) out.push_back({k, Felt(ctx_, c)});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
    return out;
  }

 private:
  const FieldCtx* ctx_;
  std::unordered_map<uint64_t, uint32_t> map_;
};

}  // namespace

uint32_t binomial_mod_p(uint64_t n, uint64_t k, uint32_t p) {
  uint64_t r = 1;
  while (n || k) {
    uint64_t a = n % p, b = k % p;
    if (b > a) return 0;
    r = r * small_binomial(a, b, p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<uint32_t>(r);
}

MPoly MPoly::constant(FieldPtr ctx, Felt c) { return monomial(std::move(ctx), c, 0, 0, 0); }

MPoly MPoly::monomial(FieldPtr ctx, Felt c, uint32_t ex, uint32_t ey, uint32_t ez) {
  check_same(ctx.get(), c.ctx());
  MPoly out(std::move(ctx));
  if (!c.is_zero()) out.terms_.push_back({pack_exponents(ex, ey, ez), c});
  return out;
}

MPoly MPoly::variable(FieldPtr ctx, Var v) {
  Felt one = ctx->one();
  return monomial(std::move(ctx), one, v == X, v == Y, v == Z);
}

MPoly MPoly::from_terms(FieldPtr ctx, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.key < b.key; });
  MPoly out(std::move(ctx));
  for (const auto& t : terms) {
    check_same(out.ctx_.get(), t.c.ctx());
    if (!out.terms_.empty() && out.terms_.back().key == t.key) {
      out.terms_.back().c += t.c;
      if (out.terms_.back().c.is_zero()) out.terms_.pop_back();
    } else if (!t.c.is_zero()) {
      out.terms_.push_back(t);
    }
  }
  return out;
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max<int>(d, key_degree(t.key));
  return d;
}

int MPoly::min_degree() const {
  int d = -1;
  for (const auto& t : terms_) {
    int k = static_cast<int>(key_degree(t.key));
    if (d < 0 || k < d) d = k;
  }
  return d;
}

uint32_t MPoly::degree_in(Var v) const {
  uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, exponent_of(t.key, v));
  return d;
}

MPoly MPoly::operator+(const MPoly& o) const {
  if (ctx_ != o.ctx_) raise(ErrorCode::ContextMismatch, "polynomials over different fields");
  MPoly out(ctx_);
  out.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].key < o.terms_[j].key)) {
      out.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].key < terms_[i].key) {
      out.terms_.push_back(o.terms_[j++]);
    } else {
      Felt c = terms_[i].c + o.terms_[j].c;
      if (!c.is_zero()) out.terms_.push_back({terms_[i].key, c});
      ++i;
      ++j;
    }
  }
  return out;
}

MPoly MPoly::operator-() const {
  MPoly out(*this);
  for (auto& t : out.terms_) t.c = -t.c;
  return out;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
  if (ctx_ != o.ctx_) raise(ErrorCode::ContextMismatch, "polynomials over different fields");
  const FieldCtx& f = *ctx_;
  Accumulator acc(&f);
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      uint64_t key = pack_exponents(uint64_t{exponent_of(a.key, X)} + exponent_of(b.key, X),
                                    uint64_t{exponent_of(a.key, Y)} + exponent_of(b.key, Y),
                                    uint64_t{exponent_of(a.key, Z)} + exponent_of(b.key, Z));
      acc.add(key, f.mul(a.c.index(), b.c.index()));
    }
  MPoly out(ctx_);
  out.terms_ = acc.take();
  return out;
}

MPoly MPoly::scaled(Felt c) const {
  MPoly out(ctx_);
  if (c.is_zero()) return out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.c = c * t.c;
  return out;
}

bool MPoly::operator==(const MPoly& o) const {
  if (ctx_ != o.ctx_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].key != o.terms_[i].key || terms_[i].c != o.terms_[i].c) return false;
  return true;
}

Felt MPoly::coeff(uint32_t ex, uint32_t ey, uint32_t ez) const {
  uint64_t key = pack_exponents(ex, ey, ez);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const Term& t, uint64_t k) { return t.key < k; });
  if (it != terms_.end() && it->key == key) return it->c;
  return ctx_->zero();
}

Felt MPoly::eval(Felt x, Felt y, Felt z) const {
  Felt acc = ctx_->zero();
  for (const auto& t : terms_)
    acc += t.c * x.pow(exponent_of(t.key, X)) * y.pow(exponent_of(t.key, Y)) * z.pow(exponent_of(t.key, Z));
  return acc;
}

MPoly MPoly::specialize(Var v, Felt value) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    uint32_t e[3] = {exponent_of(t.key, X), exponent_of(t.key, Y), exponent_of(t.key, Z)};
    Felt c = t.c * value.pow(e[v]);
    e[v] = 0;
    out.push_back({pack_exponents(e[0], e[1], e[2]), c});
  }
  return from_terms(ctx_, std::move(out));
}

MPoly MPoly::swap_vars(Var a, Var b) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    uint32_t e[3] = {exponent_of(t.key, X), exponent_of(t.key, Y), exponent_of(t.key, Z)};
    std::swap(e[a], e[b]);
    out.push_back({pack_exponents(e[0], e[1], e[2]), t.c});
  }
  return from_terms(ctx_, std::move(out));
}

MPoly MPoly::derivative(Var v) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    uint32_t e[3] = {exponent_of(t.key, X), exponent_of(t.key, Y), exponent_of(t.key, Z)};
    if (e[v] % ctx_->p() == 0) continue;
    Felt c = t.c * ctx_->from_int(e[v]);
    --e[v];
    out.push_back({pack_exponents(e[0], e[1], e[2]), c});
  }
  return from_terms(ctx_, std::move(out));
}

MPoly MPoly::frobenius_power(uint32_t j) const {
  uint64_t pj = 1;
  for (uint32_t i = 0; i < j; ++i) pj *= ctx_->p();
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_)
    out.push_back({pack_exponents(exponent_of(t.key, X) * pj, exponent_of(t.key, Y) * pj, exponent_of(t.key, Z) * pj),
                   t.c.pow(pj)});
  return from_terms(ctx_, std::move(out));
}

MPoly MPoly::homogeneous_part(uint32_t d) const {
  MPoly out(ctx_);
  for (const auto& t : terms_)
    if (key_degree(t.key) == d) out.terms_.push_back(t);
  return out;
}

std::map<uint32_t, MPoly> MPoly::homogeneous_parts() const {
  std::map<uint32_t, MPoly> out;
  for (const auto& t : terms_) {
    auto it = out.try_emplace(key_degree(t.key), ctx_).first;
    it->second.terms_.push_back(t);
  }
  return out;
}

MPoly MPoly::truncated(uint32_t max_degree) const {
  MPoly out(ctx_);
  for (const auto& t : terms_)
    if (key_degree(t.key) <= max_degree) out.terms_.push_back(t);
  return out;
}

MPoly MPoly::homogenized(uint32_t degree) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    uint32_t ex = exponent_of(t.key, X), ey = exponent_of(t.key, Y);
    if (exponent_of(t.key, Z) != 0 || ex + ey > degree)
      raise(ErrorCode::InvalidArgument, "homogenization needs a polynomial in X, Y of bounded degree");
    out.push_back({pack_exponents(ex, ey, degree - ex - ey), t.c});
  }
  return from_terms(ctx_, std::move(out));
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    os << (first ? "" : " + ") << it->c.index();
    const char* names = "XYZ";
    for (int v = 0; v < 3; ++v) {
      uint32_t e = exponent_of(it->key, v);
      if (e == 1) os << '*' << names[v];
      if (e > 1) os << '*' << names[v] << '^' << e;
    }
    first = false;
  }
  return os.str();
}

MPoly translate(const MPoly& P, Felt u, Felt v) {
  const FieldCtx& f = *P.ctx();
  const uint32_t p = f.p();
  Accumulator acc(&f);
  for (const auto& t : P.terms()) {
    uint32_t a = exponent_of(t.key, X), b = exponent_of(t.key, Y), z = exponent_of(t.key, Z);
    std::vector<std::pair<uint32_t, uint32_t>> xs, ys;
    for_each_lucas(a, p, [&](uint64_t i, uint32_t c) {
      uint32_t val = f.mul(c, f.pow(u.index(), a - i));
      if (val) xs.emplace_back(static_cast<uint32_t>(i), val);
    });
    for_each_lucas(b, p, [&](uint64_t j, uint32_t c) {
      uint32_t val = f.mul(c, f.pow(v.index(), b - j));
      if (val) ys.emplace_back(static_cast<uint32_t>(j), val);
    });
    for (auto [i, cx] : xs)
      for (auto [j, cy] : ys) acc.add(pack_exponents(i, j, z), f.mul(t.c.index(), f.mul(cx, cy)));
  }
  return MPoly::from_terms(P.ctx(), acc.take());
}

MPoly shear(const MPoly& P, Felt a) {
  const FieldCtx& f = *P.ctx();
  const uint32_t p = f.p();
  Accumulator acc(&f);
  for (const auto& t : P.terms()) {
    uint32_t i = exponent_of(t.key, X), j = exponent_of(t.key, Y), z = exponent_of(t.key, Z);
    // (X + aY)^i Y^j
    for_each_lucas(i, p, [&](uint64_t l, uint32_t c) {
      uint32_t val = f.mul(c, f.pow(a.index(), i - l));
      if (val) acc.add(pack_exponents(l, j + (i - l), z), f.mul(t.c.index(), val));
    });
  }
  return MPoly::from_terms(P.ctx(), acc.take());
}

}  // namespace rankcurve
