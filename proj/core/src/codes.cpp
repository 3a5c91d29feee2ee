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

#include "rankcurve/codes.hpp"

#include <charconv>
#include <cstdlib>
#include <numeric>
#include <set>
#include <string>

#include "rankcurve/parallel.hpp"

namespace rankcurve {

Budget Budget::from_env() {
  Budget b;
  if (const char* env = std::getenv("RANKCURVE_BUDGET")) {
    std::string_view v(env);
    uint64_t x = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || x == 0)
      raise(ErrorCode::SpecParse, "RANKCURVE_BUDGET must be a positive integer");
    b.codewords = x;
    b.tuples = x;
  }
  return b;
}

namespace {

uint64_t checked_pow(uint64_t base, uint64_t exp, uint64_t cap) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < exp; ++i) {
    if (r > cap / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

Felt determinant(std::vector<std::vector<Felt>> m) {
  const std::size_t n = m.size();
  Felt det = m[0][0].ctx()->one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return det.ctx()->zero();
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Felt li = m[c][c].inv();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      Felt f = m[r][c] * li;
      for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return det;
}

}  // namespace

RankCode RankCode::create(std::vector<LinPoly> gens, std::optional<int> t) {
  if (gens.empty()) raise(ErrorCode::InvalidArgument, "a code needs at least one generator");
  FieldPtr ctx = gens[0].ctx();
  for (const auto& g : gens)
    if (g.ctx() != ctx) raise(ErrorCode::ContextMismatch, "generators over different fields");
  const std::size_t n = ctx->N();
  if (gens.size() > n + 1) raise(ErrorCode::RankTooLarge, "r exceeds n + 1");
  std::vector<std::vector<Felt>> rows;
  for (const auto& g : gens) rows.push_back(g.coeffs());
  if (matrix_rank(rows) != gens.size())
    raise(ErrorCode::DependentGenerators, "generators are linearly dependent over F_{q^n}");
  if (t) {
    auto terms = gens[0].terms();
    if (terms.size() != 1 || terms[0].first != *t || terms[0].second != 1)
      raise(ErrorCode::InvalidArgument, "declared index t requires f_1 = x^{q^t}");
  }
  RankCode code;
  code.ctx_ = ctx;
  code.gens_ = std::move(gens);
  code.t_ = t;
  return code;
}

NormalFormFlags RankCode::normal_form() const {
  NormalFormFlags f;
  auto t0 = gens_[0].terms();
  f.first_is_monomial = t0.size() == 1 && t0[0].second == 1;
  int t = f.first_is_monomial ? t0[0].first : 0;
  std::set<int> maxd, mind;
  bool zero_min = false;
  f.monic = true;
  f.monomial_degrees = true;
  for (const auto& g : gens_) {
    int M = g.qdeg(), m = g.min_qdeg();
    maxd.insert(M);
    mind.insert(m);
    zero_min = zero_min || m == 0;
    if (!g.coeff(M).is_one()) f.monic = false;
    if (g.terms().size() == 1 && M < t) f.monomial_degrees = false;
  }
  f.distinct_max_degrees = maxd.size() == gens_.size();
  f.distinct_min_degrees = mind.size() == gens_.size() && zero_min;
  return f;
}

uint64_t projective_count(const RankCode& code) {
  const uint64_t Q = code.ctx()->size();
  uint64_t total = 0, term = 1;
  for (int i = 0; i < code.r(); ++i) {
    total += term;
    if (i + 1 < code.r()) {
      if (term > UINT64_MAX / Q) return UINT64_MAX;
      term *= Q;
    }
  }
  return total;
}

std::vector<Felt> projective_point(const RankCode& code, uint64_t index) {
  const FieldCtx& f = *code.ctx();
  const uint64_t Q = f.size();
  const int r = code.r();
  std::vector<Felt> c(r, f.zero());
  for (int lead = 0; lead < r; ++lead) {
    uint64_t block = checked_pow(Q, r - 1 - lead, UINT64_MAX);
    if (index < block) {
      c[lead] = f.one();
      for (int j = r - 1; j > lead; --j) {
        c[j] = f.element(index % Q);
        index /= Q;
      }
      return c;
    }
    index -= block;
  }
  raise(ErrorCode::InvalidArgument, "projective index out of range");
}

LinPoly codeword(const RankCode& code, const std::vector<Felt>& coeffs) {
  LinPoly out(code.ctx());
  for (int i = 0; i < code.r(); ++i)
    if (!coeffs[i].is_zero()) out = out + code.gens()[i].scaled(coeffs[i]);
  return out;
}

void SpectrumPartial::merge(const SpectrumPartial& o) {
  examined += o.examined;
  if (o.min_rank < min_rank || (o.min_rank == min_rank && o.witness_index < witness_index)) {
    min_rank = o.min_rank;
    witness_index = o.witness_index;
  }
  if (histogram.size() < o.histogram.size()) histogram.resize(o.histogram.size(), 0);
  for (std::size_t i = 0; i < o.histogram.size(); ++i) histogram[i] += o.histogram[i];
}

SpectrumPartial scan_spectrum(const RankCode& code, uint64_t begin, uint64_t end, unsigned width) {
  const FieldCtx& f = *code.ctx();
  const int n = code.n(), r = code.r();
  // vals[i][j] = f_i(b^j)
  std::vector<std::vector<Felt>> vals;
  for (const auto& g : code.gens()) vals.push_back(g.basis_images());
  end = std::min(end, projective_count(code));
  return parallel_fold<SpectrumPartial>(begin, end, width, [&](uint64_t b, uint64_t e) {
    SpectrumPartial part;
    part.histogram.assign(n + 1, 0);
    std::vector<Felt> images(n, f.zero());
    for (uint64_t idx = b; idx < e; ++idx) {
      auto c = projective_point(code, idx);
      for (int j = 0; j < n; ++j) {
        Felt acc = f.zero();
        for (int i = 0; i < r; ++i)
          if (!c[i].is_zero()) acc += c[i] * vals[i][j];
        images[j] = acc;
      }
      int rk = rank_of_images(f, images);
      ++part.examined;
      ++part.histogram[rk];
      if (rk < part.min_rank) {
        part.min_rank = rk;
        part.witness_index = idx;
      }
    }
    return part;
  });
}

MrdVerdict finalize_spectrum(const RankCode& code, const SpectrumPartial& part) {
  MrdVerdict v;
  v.examined = part.examined;
  v.histogram = part.histogram;
  v.d = part.min_rank == INT_MAX ? 0 : part.min_rank;
  v.is_mrd = v.d == code.n() - code.r() + 1;
  if (part.witness_index != UINT64_MAX) v.witness_coeffs = projective_point(code, part.witness_index);
  return v;
}

MrdVerdict min_distance(const RankCode& code, const Budget& budget, unsigned width) {
  uint64_t total = projective_count(code);
  if (total > budget.codewords)
    raise(ErrorCode::BudgetExceeded, std::to_string(total) + " projective codewords exceed the budget of " +
                                         std::to_string(budget.codewords));
  return finalize_spectrum(code, scan_spectrum(code, 0, total, width));
}

namespace {

struct ScatterPartial {
  uint64_t examined = 0;
  uint64_t witness = UINT64_MAX;
  int kernel = 0;
  void merge(const ScatterPartial& o) {
    examined += o.examined;
    if (o.witness < witness) {
      witness = o.witness;
      kernel = o.kernel;
    }
  }
};

}  // namespace

ScatteredVerdict is_scattered(const LinPoly& f, int t, unsigned width) {
  const FieldCtx& F = *f.ctx();
  const int n = static_cast<int>(F.N());
  auto terms = f.terms();
  int tt = ((t % n) + n) % n;
  if (terms.empty() || (terms.size() == 1 && terms[0].first == tt))
    raise(ErrorCode::InvalidArgument, "f is a scalar multiple of x^{q^t}");
  auto fb = f.basis_images();
  std::vector<Felt> mono;
  for (const Felt& b : fq_basis(F)) mono.push_back(b.frob(t));
  auto part = parallel_fold<ScatterPartial>(0, F.size(), width, [&](uint64_t b, uint64_t e) {
    ScatterPartial p;
    std::vector<Felt> images(n, F.zero());
    for (uint64_t v = b; v < e; ++v) {
      Felt m = F.element(v);
      for (int j = 0; j < n; ++j) images[j] = fb[j] - m * mono[j];
      int ker = n - rank_of_images(F, images);
      ++p.examined;
      if (ker > 1 && p.witness == UINT64_MAX) {
        p.witness = v;
        p.kernel = ker;
      }
    }
    return p;
  });
  ScatteredVerdict out;
  out.examined = part.examined;
  if (part.witness != UINT64_MAX) {
    out.scattered = false;
    out.witness = F.element(part.witness);
    out.witness_kernel_dim = part.kernel;
  }
  return out;
}

uint64_t moore_tuple_count(const RankCode& code) {
  return checked_pow(code.ctx()->size(), code.r(), UINT64_MAX);
}

std::vector<Felt> moore_tuple(const RankCode& code, uint64_t index) {
  const FieldCtx& f = *code.ctx();
  std::vector<Felt> a(code.r(), f.zero());
  for (int i = code.r() - 1; i >= 0; --i) {
    a[i] = f.element(index % f.size());
    index /= f.size();
  }
  return a;
}

void MoorePartial::merge(const MoorePartial& o) {
  examined += o.examined;
  vanishing += o.vanishing;
  violation_index = std::min(violation_index, o.violation_index);
}

MoorePartial scan_moore(const RankCode& code, uint64_t begin, uint64_t end, unsigned width) {
  const FieldCtx& f = *code.ctx();
  const int r = code.r();
  const uint64_t Q = f.size();
  std::vector<std::vector<Felt>> table(r);
  for (int j = 0; j < r; ++j) {
    table[j].reserve(Q);
    for (uint64_t v = 0; v < Q; ++v) table[j].push_back(code.gens()[j](f.element(v)));
  }
  end = std::min(end, moore_tuple_count(code));
  return parallel_fold<MoorePartial>(begin, end, width, [&](uint64_t b, uint64_t e) {
    MoorePartial p;
    std::vector<std::vector<Felt>> m(r, std::vector<Felt>(r, f.zero()));
    for (uint64_t idx = b; idx < e; ++idx) {
      auto alpha = moore_tuple(code, idx);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m[i][j] = table[j][alpha[i].index()];
      ++p.examined;
      if (!determinant(m).is_zero()) continue;
      ++p.vanishing;
      if (p.violation_index == UINT64_MAX && rank_of_images(f, alpha) == r) p.violation_index = idx;
    }
    return p;
  });
}

MooreVerdict finalize_moore(const RankCode& code, const MoorePartial& part) {
  MooreVerdict v;
  v.examined = part.examined;
  v.vanishing = part.vanishing;
  if (part.violation_index != UINT64_MAX) {
    v.is_moore = false;
    v.witness = moore_tuple(code, part.violation_index);
  }
  return v;
}

MooreVerdict is_moore_set(const RankCode& code, const Budget& budget, unsigned width) {
  uint64_t total = moore_tuple_count(code);
  if (total > budget.tuples)
    raise(ErrorCode::BudgetExceeded,
          std::to_string(total) + " tuples exceed the budget of " + std::to_string(budget.tuples));
  return finalize_moore(code, scan_moore(code, 0, total, width));
}

LinPoly embed_linpoly(const LinPoly& f, const Embedding& emb) {
  std::vector<std::pair<int64_t, Felt>> terms;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!f.coeff(i).is_zero()) terms.emplace_back(static_cast<int64_t>(i), emb(f.coeff(i)));
  return LinPoly::from_terms(emb.big(), terms);
}

namespace {

FieldPtr extension_of(const FieldCtx& base, uint32_t m, const Budget& budget) {
  uint64_t size = checked_pow(base.size(), m, UINT64_MAX);
  if (size > budget.field_size || size > FieldCtx::kMaxSize)
    raise(ErrorCode::BudgetExceeded, "extension of degree " + std::to_string(m) + " exceeds the field-size budget");
  return FieldCtx::create(base.p(), base.e(), base.N() * m);
}

}  // namespace

std::vector<ProbeEntry> probe_exceptional(const LinPoly& f, int t, const std::vector<uint32_t>& ms,
                                          const Budget& budget, unsigned width) {
  std::vector<ProbeEntry> out;
  for (uint32_t m : ms) {
    if (m == 0) raise(ErrorCode::InvalidArgument, "extension index must be positive");
    FieldPtr big = extension_of(*f.ctx(), m, budget);
    Embedding emb(f.ctx(), big);
    auto v = is_scattered(embed_linpoly(f, emb), t, width);
    ProbeEntry e;
    e.m = m;
    e.verdict = v.scattered;
    e.witness = v.witness;
    out.push_back(e);
  }
  return out;
}

std::vector<ProbeEntry> probe_exceptional(const RankCode& code, const std::vector<uint32_t>& ms,
                                          const Budget& budget, unsigned width) {
  std::vector<ProbeEntry> out;
  for (uint32_t m : ms) {
    if (m == 0) raise(ErrorCode::InvalidArgument, "extension index must be positive");
    FieldPtr big = extension_of(*code.ctx(), m, budget);
    Embedding emb(code.ctx(), big);
    std::vector<LinPoly> gens;
    for (const auto& g : code.gens()) gens.push_back(embed_linpoly(g, emb));
    auto v = min_distance(RankCode::create(std::move(gens), code.t()), budget, width);
    ProbeEntry e;
    e.m = m;
    e.verdict = v.is_mrd;
    e.min_distance = v.d;
    out.push_back(e);
  }
  return out;
}

RankCode make_gabidulin(FieldPtr ctx, int r, int s) {
  const int n = static_cast<int>(ctx->N());
  if (r < 1 || s < 1) raise(ErrorCode::InvalidArgument, "r and s must be positive");
  if (std::gcd(s, n) != 1) raise(ErrorCode::GcdViolation, "gcd(s, n) must be 1");
  std::vector<LinPoly> gens;
  for (int i = 0; i < r; ++i) gens.push_back(LinPoly::monomial(ctx, int64_t{s} * i));
  return RankCode::create(std::move(gens), 0);
}

RankCode make_twisted(FieldPtr ctx, int r, int s, Felt delta) {
  const int n = static_cast<int>(ctx->N());
  if (r < 2 || s < 1) raise(ErrorCode::InvalidArgument, "twisted codes need r >= 2 and s >= 1");
  if (std::gcd(s, n) != 1) raise(ErrorCode::GcdViolation, "gcd(s, n) must be 1");
  Felt sign = ctx->from_int((int64_t{n} * r) % 2 == 0 ? 1 : -1);
  if (ctx->norm_rel(delta, 1) == sign)
    raise(ErrorCode::NormConditionViolation, "N(delta) equals (-1)^{nr}");
  std::vector<LinPoly> gens;
  for (int i = 1; i < r; ++i) gens.push_back(LinPoly::monomial(ctx, int64_t{s} * i));
  gens.push_back(LinPoly::monomial(ctx, 0) + LinPoly::monomial(ctx, int64_t{s} * r, delta));
  return RankCode::create(std::move(gens), s % n);
}

LinPoly make_lp(FieldPtr ctx, int t, Felt delta) {
  const int n = static_cast<int>(ctx->N());
  if (t < 1) raise(ErrorCode::InvalidArgument, "t must be positive");
  if (std::gcd(t, n) != 1) raise(ErrorCode::GcdViolation, "gcd(t, n) must be 1");
  if (ctx->norm_rel(delta, 1).is_one()) raise(ErrorCode::NormConditionViolation, "N(delta) equals 1");
  return LinPoly::monomial(ctx, 0) + LinPoly::monomial(ctx, 2 * int64_t{t}, delta);
}

}  // namespace rankcurve
