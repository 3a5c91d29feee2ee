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

#include "rankcurve/gf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

namespace rankcurve {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::DegreeNotDividing: return "DegreeNotDividing";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DependentGenerators: return "DependentGenerators";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::GcdViolation: return "GcdViolation";
    case ErrorCode::NormConditionViolation: return "NormConditionViolation";
    case ErrorCode::InstanceInvalid: return "InstanceInvalid";
    case ErrorCode::NoLambdaFound: return "NoLambdaFound";
    case ErrorCode::NonExactDivision: return "NonExactDivision";
    case ErrorCode::ClosedFormMismatch: return "ClosedFormMismatch";
    case ErrorCode::PointNotOnCurve: return "PointNotOnCurve";
    case ErrorCode::UnclassifiedCone: return "UnclassifiedCone";
    case ErrorCode::AxisIsTangent: return "AxisIsTangent";
    case ErrorCode::ChainBudgetExceeded: return "ChainBudgetExceeded";
    case ErrorCode::UnresolvedSingularity: return "UnresolvedSingularity";
    case ErrorCode::ExponentOverflow: return "ExponentOverflow";
    case ErrorCode::SpecParse: return "SpecParse";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::Interrupted: return "Interrupted";
  }
  return "Unknown";
}

void check_same(const FieldCtx* a, const FieldCtx* b) {
  if (a != b || a == nullptr) raise(ErrorCode::ContextMismatch, "elements from different fields");
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

uint64_t prime_power_base(uint64_t n) {
  if (n < 2) return 0;
  auto f = prime_factors(n);
  return f.size() == 1 ? f[0] : 0;
}

namespace {

// Dense polynomials over F_p, lowest coefficient first.
using Fp = std::vector<uint32_t>;

void trim(Fp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

uint32_t inv_mod(uint32_t a, uint32_t p) {
  uint64_t r = 1, b = a, k = p - 2;
  while (k) {
    if (k & 1) r = r * b % p;
    b = b * b % p;
    k >>= 1;
  }
  return static_cast<uint32_t>(r);
}

// a mod f for monic f.
void reduce(Fp& a, const Fp& f, uint32_t p) {
  trim(a);
  const std::size_t d = f.size() - 1;
  while (a.size() > d) {
    uint64_t c = a.back();
    std::size_t shift = a.size() - 1 - d;
    for (std::size_t i = 0; i < d; ++i)
      a[shift + i] = static_cast<uint32_t>((a[shift + i] + (p - c) * f[i]) % p);
    a.pop_back();
    trim(a);
  }
}

Fp mulmod(const Fp& a, const Fp& b, const Fp& f, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Fp r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<uint32_t>((r[i + j] + uint64_t{a[i]} * b[j]) % p);
  }
  reduce(r, f, p);
  return r;
}

Fp powmod(Fp a, uint64_t k, const Fp& f, uint32_t p) {
  Fp r{1};
  reduce(a, f, p);
  while (k) {
    if (k & 1) r = mulmod(r, a, f, p);
    a = mulmod(a, a, f, p);
    k >>= 1;
  }
  return r;
}

Fp gcd(Fp a, Fp b, uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    uint32_t li = inv_mod(b.back(), p);
    for (auto& c : b) c = static_cast<uint32_t>(uint64_t{c} * li % p);
    reduce(a, b, p);
    std::swap(a, b);
  }
  return a;
}

bool irreducible(const Fp& f, uint32_t p) {
  const uint32_t d = static_cast<uint32_t>(f.size() - 1);
  if (d == 1) return true;
  if (f[0] == 0) return false;
  // x^{p^j} mod f for j = 0..d
  std::vector<Fp> xp(d + 1);
  xp[0] = Fp{0, 1};
  reduce(xp[0], f, p);
  for (uint32_t j = 1; j <= d; ++j) xp[j] = powmod(xp[j - 1], p, f, p);
  Fp x{0, 1};
  reduce(x, f, p);
  if (xp[d] != x) return false;
  for (uint64_t r : prime_factors(d)) {
    Fp h = xp[d / r];
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    Fp g = gcd(f, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

Fp from_index(uint64_t v, uint32_t p, uint32_t D) {
  Fp out(D, 0);
  for (uint32_t i = 0; i < D; ++i) {
    out[i] = static_cast<uint32_t>(v % p);
    v /= p;
  }
  trim(out);
  return out;
}

FpMatrix mat_mul(const FpMatrix& a, const FpMatrix& b, uint32_t p) {
  const std::size_t n = a.size();
  FpMatrix c(n, std::vector<uint32_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (!a[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j)
        c[i][j] = static_cast<uint32_t>((c[i][j] + uint64_t{a[i][k]} * b[k][j]) % p);
    }
  return c;
}

FpMatrix mat_inverse(FpMatrix a, uint32_t p) {
  const std::size_t n = a.size();
  FpMatrix inv(n, std::vector<uint32_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) raise(ErrorCode::InvalidArgument, "singular basis change");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    uint64_t li = inv_mod(a[col][col], p);
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] = static_cast<uint32_t>(a[col][j] * li % p);
      inv[col][j] = static_cast<uint32_t>(inv[col][j] * li % p);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      uint64_t f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] = static_cast<uint32_t>((a[r][j] + (p - f) * a[col][j]) % p);
        inv[r][j] = static_cast<uint32_t>((inv[r][j] + (p - f) * inv[col][j]) % p);
      }
    }
  }
  return inv;
}

}  // namespace

FieldPtr FieldCtx::create(uint32_t p, uint32_t e, uint32_t N,
                          std::optional<std::vector<uint32_t>> modulus) {
  if (!is_prime(p)) raise(ErrorCode::NotPrime, "characteristic " + std::to_string(p) + " is not prime");
  if (e == 0 || N == 0) raise(ErrorCode::DegreeMismatch, "extension degrees must be positive");
  uint64_t size = 1;
  for (uint64_t i = 0; i < uint64_t{e} * N; ++i) {
    size *= p;
    if (size > kMaxSize)
      raise(ErrorCode::BudgetExceeded, "field of order p^" + std::to_string(uint64_t{e} * N) +
                                           " exceeds the supported size");
  }
  std::shared_ptr<FieldCtx> ctx(new FieldCtx());
  ctx->p_ = p;
  ctx->e_ = e;
  ctx->N_ = N;
  ctx->D_ = e * N;
  ctx->size_ = size;
  ctx->order_ = size - 1;
  ctx->q_ = 1;
  for (uint32_t i = 0; i < e; ++i) ctx->q_ *= p;
  ctx->build(std::move(modulus));
  return ctx;
}

void FieldCtx::build(std::optional<std::vector<uint32_t>> modulus) {
  const uint32_t p = p_, D = D_;
  pow_p_.assign(D + 1, 1);
  for (uint32_t i = 1; i <= D; ++i) pow_p_[i] = pow_p_[i - 1] * p;

  if (modulus) {
    if (modulus->size() != D + 1 || modulus->back() != 1)
      raise(ErrorCode::DegreeMismatch, "modulus must be monic of degree " + std::to_string(D));
    for (uint32_t c : *modulus)
      if (c >= p) raise(ErrorCode::DegreeMismatch, "modulus coefficient out of range");
    if (!irreducible(*modulus, p)) raise(ErrorCode::ReducibleModulus, "modulus is reducible over F_p");
    modulus_ = *modulus;
  } else {
    for (uint64_t v = 0; v < pow_p_[D]; ++v) {
      Fp f(D + 1, 0);
      uint64_t w = v;
      for (uint32_t i = 0; i < D; ++i) {
        f[i] = static_cast<uint32_t>(w % p);
        w /= p;
      }
      f[D] = 1;
      if (f[0] != 0 && irreducible(f, p)) {
        modulus_ = f;
        break;
      }
    }
  }
  const Fp& f = modulus_;

  // Smallest index of multiplicative order q^N - 1.
  uint64_t gen = 1;
  if (order_ > 1) {
    auto primes = prime_factors(order_);
    for (gen = 2; gen < size_; ++gen) {
      Fp g = from_index(gen, p, D);
      bool ok = true;
      for (uint64_t r : primes) {
        Fp h = powmod(g, order_ / r, f, p);
        if (h.size() == 1 && h[0] == 1) {
          ok = false;
          break;
        }
      }
      if (ok) break;
    }
  }

  exp_.assign(order_, 0);
  log_.assign(size_, 0);
  {
    Fp g = from_index(gen, p, D);
    std::vector<uint32_t> cur(D, 0), next(2 * D + 1, 0);
    cur[0] = 1;
    std::vector<std::pair<uint32_t, uint32_t>> gterms;
    for (uint32_t i = 0; i < g.size(); ++i)
      if (g[i]) gterms.emplace_back(i, g[i]);
    for (uint64_t k = 0; k < order_; ++k) {
      uint64_t idx = 0;
      for (uint32_t i = D; i-- > 0;) idx = idx * p + cur[i];
      exp_[k] = static_cast<uint32_t>(idx);
      log_[idx] = static_cast<uint32_t>(k);
      std::fill(next.begin(), next.end(), 0);
      for (uint32_t i = 0; i < D; ++i) {
        if (!cur[i]) continue;
        for (auto [j, c] : gterms) next[i + j] = static_cast<uint32_t>((next[i + j] + uint64_t{cur[i]} * c) % p);
      }
      for (uint32_t top = 2 * D; top >= D; --top) {
        uint64_t c = next[top];
        if (c) {
          for (uint32_t i = 0; i < D; ++i)
            next[top - D + i] = static_cast<uint32_t>((next[top - D + i] + (p - c) * f[i]) % p);
          next[top] = 0;
        }
        if (top == D) break;
      }
      std::copy(next.begin(), next.begin() + D, cur.begin());
    }
  }

  if (p != 2) {
    zech_.assign(order_, UINT32_MAX);
    for (uint64_t k = 0; k < order_; ++k) {
      uint32_t idx = exp_[k];
      uint32_t plus_one = (idx % p == p - 1) ? idx - (p - 1) : idx + 1;
      if (plus_one != 0) zech_[k] = log_[plus_one];
    }
  }

  qpow_.assign(N_, 1);
  for (uint32_t i = 1; i < N_; ++i) qpow_[i] = order_ ? (qpow_[i - 1] * q_) % order_ : 0;
  if (order_ == 1) std::fill(qpow_.begin(), qpow_.end(), 0);

  // Frobenius x -> x^q as a D x D matrix over F_p, computed from polynomial
  // powering so that it stays independent of the log tables.
  FpMatrix one(D, std::vector<uint32_t>(D, 0));
  for (uint32_t i = 0; i < D; ++i) one[i][i] = 1;
  FpMatrix frob1(D, std::vector<uint32_t>(D, 0));
  for (uint32_t j = 0; j < D; ++j) {
    Fp b(j + 1, 0);
    b[j] = 1;
    Fp img = powmod(b, q_, f, p);
    for (uint32_t i = 0; i < img.size(); ++i) frob1[i][j] = img[i];
  }
  frob_mats_.clear();
  frob_mats_.push_back(one);
  for (uint32_t i = 1; i < N_; ++i) frob_mats_.push_back(mat_mul(frob1, frob_mats_.back(), p));

  if (e_ > 1) {
    uint32_t omega = exp_[order_ / (q_ - 1)];
    omega_pows_.assign(e_, 1);
    for (uint32_t j = 1; j < e_; ++j) omega_pows_[j] = mul(omega_pows_[j - 1], omega);
    FpMatrix m(D, std::vector<uint32_t>(D, 0));
    for (uint32_t i = 0; i < N_; ++i)
      for (uint32_t j = 0; j < e_; ++j) {
        uint32_t el = mul(omega_pows_[j], static_cast<uint32_t>(pow_p_[i]));
        auto dg = digits(Felt(this, el));
        for (uint32_t r = 0; r < D; ++r) m[r][i * e_ + j] = dg[r];
      }
    coord_inv_ = mat_inverse(m, p);
  }
}

std::string FieldCtx::spec() const {
  std::ostringstream os;
  os << p_ << '^' << e_ << '^' << N_ << ":modulus=";
  for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
  return os.str();
}

Felt FieldCtx::element(uint64_t index) const {
  if (index >= size_) raise(ErrorCode::InvalidArgument, "element index out of range");
  return Felt(this, static_cast<uint32_t>(index));
}

Felt FieldCtx::gen_pow(int64_t k) const {
  int64_t o = static_cast<int64_t>(order_);
  int64_t r = ((k % o) + o) % o;
  return Felt(this, exp_[r]);
}

Felt FieldCtx::from_int(int64_t k) const {
  int64_t r = ((k % int64_t{p_}) + p_) % p_;
  return Felt(this, static_cast<uint32_t>(r));
}

Felt FieldCtx::basis(uint32_t i) const {
  if (i >= D_) raise(ErrorCode::InvalidArgument, "basis index out of range");
  return Felt(this, static_cast<uint32_t>(pow_p_[i]));
}

uint32_t FieldCtx::inv(uint32_t a) const {
  if (a == 0) raise(ErrorCode::InvalidArgument, "division by zero");
  uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : order_ - l];
}

uint32_t FieldCtx::pow(uint32_t a, uint64_t k) const {
  if (k == 0) return 1;
  if (a == 0) return 0;
  unsigned __int128 s = static_cast<unsigned __int128>(log_[a]) * (k % order_);
  return exp_[static_cast<uint64_t>(s % order_)];
}

uint32_t FieldCtx::frob(uint32_t a, int64_t i) const {
  if (a == 0) return 0;
  int64_t r = ((i % int64_t{N_}) + N_) % N_;
  return exp_[(uint64_t{log_[a]} * qpow_[r]) % order_];
}

uint32_t FieldCtx::log(uint32_t a) const {
  if (a == 0) raise(ErrorCode::InvalidArgument, "logarithm of zero");
  return log_[a];
}

Felt FieldCtx::norm_rel(Felt x, uint32_t d) const {
  if (d == 0 || N_ % d != 0)
    raise(ErrorCode::DegreeNotDividing, std::to_string(d) + " does not divide " + std::to_string(N_));
  check_same(this, x.ctx());
  uint64_t qd = 1;
  for (uint32_t i = 0; i < d; ++i) qd *= q_;
  return x.pow(order_ / (qd - 1));
}

bool FieldCtx::in_subfield(Felt x, uint32_t d) const {
  if (d == 0) raise(ErrorCode::InvalidArgument, "subfield degree must be positive");
  check_same(this, x.ctx());
  uint32_t g = std::gcd(d, N_);
  return frob(x.index(), g) == x.index();
}

std::vector<Felt> FieldCtx::subfield(uint32_t d) const {
  if (d == 0) raise(ErrorCode::InvalidArgument, "subfield degree must be positive");
  uint32_t g = std::gcd(d, N_);
  uint64_t qg = 1;
  for (uint32_t i = 0; i < g; ++i) qg *= q_;
  std::vector<Felt> out{zero()};
  uint64_t step = order_ / (qg - 1);
  for (uint64_t k = 0; k < qg - 1; ++k) out.emplace_back(this, exp_[k * step]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint32_t> FieldCtx::digits(Felt x) const {
  std::vector<uint32_t> out(D_, 0);
  uint64_t v = x.index();
  for (uint32_t i = 0; i < D_; ++i) {
    out[i] = static_cast<uint32_t>(v % p_);
    v /= p_;
  }
  return out;
}

Felt FieldCtx::from_digits(const std::vector<uint32_t>& dg) const {
  uint64_t v = 0;
  for (std::size_t i = dg.size(); i-- > 0;) v = v * p_ + (dg[i] % p_);
  return element(v);
}

std::vector<Felt> FieldCtx::fq_coords(Felt x) const {
  auto dg = digits(x);
  std::vector<Felt> out;
  out.reserve(N_);
  if (e_ == 1) {
    for (uint32_t i = 0; i < N_; ++i) out.emplace_back(this, dg[i]);
    return out;
  }
  std::vector<uint32_t> c(D_, 0);
  for (uint32_t r = 0; r < D_; ++r) {
    uint64_t s = 0;
    for (uint32_t j = 0; j < D_; ++j) s += uint64_t{coord_inv_[r][j]} * dg[j];
    c[r] = static_cast<uint32_t>(s % p_);
  }
  for (uint32_t i = 0; i < N_; ++i) {
    uint32_t v = 0;
    for (uint32_t j = 0; j < e_; ++j) v = add(v, mul(c[i * e_ + j], omega_pows_[j]));
    out.emplace_back(this, v);
  }
  return out;
}

const FpMatrix& FieldCtx::frobenius_matrix(int64_t i) const {
  int64_t r = ((i % int64_t{N_}) + N_) % N_;
  return frob_mats_[r];
}

Felt FieldCtx::apply_fp_matrix(const FpMatrix& m, Felt x) const {
  auto dg = digits(x);
  std::vector<uint32_t> out(D_, 0);
  for (uint32_t r = 0; r < D_; ++r) {
    uint64_t s = 0;
    for (uint32_t j = 0; j < D_; ++j) s += uint64_t{m[r][j]} * dg[j];
    out[r] = static_cast<uint32_t>(s % p_);
  }
  return from_digits(out);
}

std::string FieldCtx::format(Felt x) const { return std::to_string(x.index()); }

Felt FieldCtx::parse(const std::string& literal) const {
  std::string s;
  for (char c : literal)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  auto parse_uint = [&](std::string_view v) -> uint64_t {
    uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size())
      raise(ErrorCode::SpecParse, "bad element literal '" + literal + "'");
    return out;
  };
  if (s == "g") return generator();
  if (s.size() > 2 && s[0] == 'g' && s[1] == '^') return gen_pow(static_cast<int64_t>(parse_uint(std::string_view(s).substr(2)) % order_));
  uint64_t v = parse_uint(s);
  if (v >= size_) raise(ErrorCode::SpecParse, "element index " + s + " out of range");
  return Felt(this, static_cast<uint32_t>(v));
}

std::vector<Felt> poly_roots(const FieldCtx& ctx, const std::vector<Felt>& coeffs) {
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1].is_zero()) --deg;
  if (deg == 0) raise(ErrorCode::ZeroPolynomial, "poly_roots of the zero polynomial");
  for (std::size_t i = 0; i < deg; ++i) check_same(&ctx, coeffs[i].ctx());
  std::vector<Felt> out;
  if (deg == 1) return out;
  for (uint64_t v = 0; v < ctx.size(); ++v) {
    uint32_t x = static_cast<uint32_t>(v), acc = 0;
    for (std::size_t i = deg; i-- > 0;) acc = ctx.add(ctx.mul(acc, x), coeffs[i].index());
    if (acc == 0) out.emplace_back(&ctx, x);
  }
  return out;
}

std::size_t matrix_rank(std::vector<std::vector<Felt>> m) {
  std::size_t rank = 0;
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    Felt li = m[rank][c].inv();
    for (std::size_t j = c; j < cols; ++j) m[rank][j] *= li;
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c].is_zero()) continue;
      Felt f = m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

Embedding::Embedding(FieldPtr small, FieldPtr big) : small_(std::move(small)), big_(std::move(big)) {
  if (small_->p() != big_->p() || big_->degree() % small_->degree() != 0)
    raise(ErrorCode::DegreeNotDividing, "no embedding between these fields");
  const auto& mod = small_->modulus();
  std::optional<Felt> root;
  for (uint64_t v = 0; v < big_->size() && !root; ++v) {
    Felt x = big_->element(v);
    Felt acc = big_->zero();
    for (std::size_t i = mod.size(); i-- > 0;) acc = acc * x + big_->from_int(mod[i]);
    if (acc.is_zero()) root = x;
  }
  if (!root) raise(ErrorCode::InvalidArgument, "modulus has no root in the larger field");
  powers_.assign(small_->degree(), big_->one());
  for (std::size_t i = 1; i < powers_.size(); ++i) powers_[i] = powers_[i - 1] * *root;
}

Felt Embedding::operator()(Felt x) const {
  check_same(small_.get(), x.ctx());
  auto dg = small_->digits(x);
  Felt acc = big_->zero();
  for (std::size_t i = 0; i < dg.size(); ++i)
    if (dg[i]) acc += big_->from_int(dg[i]) * powers_[i];
  return acc;
}

}  // namespace rankcurve
