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

#include "rankcurve/local.hpp"

#include <algorithm>

namespace rankcurve {

namespace {

using UPoly = std::vector<Felt>;

void trim(UPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

// Remainder of a modulo b (b nonzero).
UPoly mod(UPoly a, const UPoly& b) {
  trim(a);
  Felt li = b.back().inv();
  while (a.size() >= b.size()) {
    Felt c = a.back() * li;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  return a;
}

UPoly mulmod(const UPoly& a, const UPoly& b, const UPoly& m, const FieldCtx& f) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return mod(std::move(r), m);
}

UPoly gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = mod(std::move(a), b);
    std::swap(a, b);
  }
  if (!a.empty()) {
    Felt li = a.back().inv();
    for (auto& c : a) c *= li;
  }
  return a;
}

UPoly derivative(const UPoly& a, const FieldCtx& f) {
  UPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * f.from_int(static_cast<int64_t>(i)));
  trim(d);
  return d;
}

// Divides by (x - r) when r is a root; returns false otherwise.
bool divide_root(UPoly& a, Felt r) {
  if (a.empty()) return true;
  UPoly q(a.size() - 1, r.ctx()->zero());
  Felt acc = r.ctx()->zero();
  for (std::size_t i = a.size(); i-- > 0;) {
    acc = acc * r + a[i];
    if (i > 0) q[i - 1] = acc;
  }
  if (!acc.is_zero()) return false;
  a = std::move(q);
  return true;
}

// F(x, 1) for a binary form F in X, Y.
UPoly dehomogenize(const MPoly& form) {
  const FieldCtx& f = *form.ctx();
  UPoly out;
  for (const auto& t : form.terms()) {
    uint32_t i = exponent_of(t.key, X);
    if (out.size() <= i) out.resize(i + 1, f.zero());
    out[i] += t.c;
  }
  trim(out);
  return out;
}

std::vector<Felt> distinct_roots(const UPoly& a, const FieldCtx& f) {
  if (a.size() <= 1) return {};
  // gcd(a, x^Q - x) collects the rational roots without repetition.
  UPoly xq{f.zero(), f.one()};
  UPoly base = mod(xq, a), r{f.one()};
  for (uint64_t k = f.size(); k; k >>= 1) {
    if (k & 1) r = mulmod(r, base, a, f);
    base = mulmod(base, base, a, f);
  }
  if (r.size() < 2) r.resize(2, f.zero());
  r[1] -= f.one();
  trim(r);
  UPoly g = r.empty() ? a : gcd(a, r);
  if (g.size() <= 1) return {};
  if (g.size() == 2) return {-g[0] / g[1]};
  return poly_roots(f, g);
}

MPoly raw_transform(const MPoly& P, Axis divided, uint32_t r) {
  std::vector<MPoly::Term> out;
  out.reserve(P.size());
  for (const auto& t : P.terms()) {
    uint32_t i = exponent_of(t.key, X), j = exponent_of(t.key, Y), z = exponent_of(t.key, Z);
    if (i + j < r) raise(ErrorCode::NonExactDivision, "term below the multiplicity in a quadratic transform");
    if (divided == Axis::X)
      out.push_back({pack_exponents(i + j - r, j, z), t.c});
    else
      out.push_back({pack_exponents(i, i + j - r, z), t.c});
  }
  return MPoly::from_terms(P.ctx(), std::move(out));
}

}  // namespace

HomogeneousParts shift_expand(const MPoly& P, Felt u, Felt v) { return translate(P, u, v).homogeneous_parts(); }

uint32_t multiplicity(const MPoly& P, Felt u, Felt v) {
  MPoly s = translate(P, u, v);
  if (s.is_zero()) raise(ErrorCode::InvalidArgument, "multiplicity of the zero polynomial");
  int m = s.min_degree();
  if (m == 0) raise(ErrorCode::PointNotOnCurve, "point is not on the curve");
  return static_cast<uint32_t>(m);
}

MPoly tangent_cone(const MPoly& P, Felt u, Felt v) {
  MPoly s = translate(P, u, v);
  if (s.is_zero()) raise(ErrorCode::InvalidArgument, "tangent cone of the zero polynomial");
  int m = s.min_degree();
  if (m == 0) raise(ErrorCode::PointNotOnCurve, "point is not on the curve");
  return s.homogeneous_part(static_cast<uint32_t>(m));
}

MPoly quadratic_transform(const MPoly& P, Axis divided) {
  if (P.is_zero()) raise(ErrorCode::InvalidArgument, "quadratic transform of the zero polynomial");
  int r = P.min_degree();
  if (r == 0) raise(ErrorCode::PointNotOnCurve, "origin is not on the curve");
  uint32_t m = static_cast<uint32_t>(r);
  // The chart misses the divided-out axis, so it must not be a tangent.
  Felt lead = divided == Axis::X ? P.coeff(0, m) : P.coeff(m, 0);
  if (lead.is_zero()) raise(ErrorCode::AxisIsTangent, "the divided-out axis is tangent at the origin");
  return raw_transform(P, divided, m);
}

ConeFactorization factor_binary_form(const MPoly& form) {
  if (form.is_zero()) raise(ErrorCode::ZeroPolynomial, "factoring the zero form");
  const FieldCtx& f = *form.ctx();
  const uint32_t m = static_cast<uint32_t>(form.total_degree());
  UPoly a = dehomogenize(form);
  const uint32_t d = static_cast<uint32_t>(a.size() - 1);
  ConeFactorization out;
  uint32_t found = 0;
  for (Felt r : distinct_roots(a, f)) {
    LinearFactor L;
    L.a = r;
    while (divide_root(a, r)) ++L.multiplicity;
    found += L.multiplicity;
    out.factors.push_back(L);
  }
  if (m > d) {
    LinearFactor L;
    L.vertical = true;
    L.a = f.zero();
    L.multiplicity = m - d;
    out.factors.push_back(L);
  }
  out.unsplit_degree = d - found;
  return out;
}

bool is_squarefree_form(const MPoly& form) {
  const FieldCtx& f = *form.ctx();
  const uint32_t m = static_cast<uint32_t>(form.total_degree());
  UPoly a = dehomogenize(form);
  const uint32_t d = static_cast<uint32_t>(a.size() - 1);
  if (m - d >= 2) return false;
  if (d <= 1) return true;
  UPoly da = derivative(a, f);
  // A vanishing derivative makes the form a p-th power.
  if (da.empty()) return false;
  return gcd(a, da).size() == 1;
}

bool divides_form(const LinearFactor& L, uint32_t power, const MPoly& form) {
  if (form.is_zero()) return true;
  if (L.vertical) {
    for (const auto& t : form.terms())
      if (exponent_of(t.key, Y) < power) return false;
    return true;
  }
  UPoly a = dehomogenize(form);
  for (uint32_t i = 0; i < power; ++i)
    if (!divide_root(a, L.a)) return false;
  return true;
}

const char* cone_class_name(ConeClass c) {
  switch (c) {
    case ConeClass::Separable: return "separable";
    case ConeClass::PowerLinearNotDividing: return "power_of_linear_L_not_dividing_next";
    case ConeClass::PowerLinearSquareNotDividing: return "power_of_linear_L2_not_dividing_next";
    case ConeClass::Other: return "other";
  }
  return "other";
}

ConeClass classify_cone(const MPoly& cone, const MPoly& next) {
  if (is_squarefree_form(cone)) return ConeClass::Separable;
  auto fac = factor_binary_form(cone);
  if (fac.factors.size() != 1 || fac.unsplit_degree != 0) return ConeClass::Other;
  const LinearFactor& L = fac.factors[0];
  if (!divides_form(L, 1, next)) return ConeClass::PowerLinearNotDividing;
  if (!divides_form(L, 2, next)) return ConeClass::PowerLinearSquareNotDividing;
  return ConeClass::Other;
}

Rational lemma_bound(ConeClass c, uint32_t m) {
  switch (c) {
    case ConeClass::Separable: return Rational((uint64_t{m} * m) / 2);
    case ConeClass::PowerLinearNotDividing: return Rational(0);
    case ConeClass::PowerLinearSquareNotDividing: return Rational(m);
    case ConeClass::Other: break;
  }
  raise(ErrorCode::UnclassifiedCone, "tangent cone fits no case of the I_max lemma");
}

namespace {

struct BranchRun {
  int max_steps;
  bool record;
  BranchAnalysis* out;
  int steps = 0;

  uint64_t run(const MPoly& g, bool on_path) {
    if (g.is_zero()) raise(ErrorCode::UnresolvedSingularity, "germ vanished identically");
    int md = g.min_degree();
    if (md == 0) raise(ErrorCode::PointNotOnCurve, "center is not on the curve");
    uint32_t m = static_cast<uint32_t>(md);
    if (m == 1) return 1;
    MPoly cone = g.homogeneous_part(m);
    auto fac = factor_binary_form(cone);
    if (fac.unsplit_degree != 0)
      raise(ErrorCode::UnresolvedSingularity, "tangent cone does not split over the working field");
    if (on_path && fac.factors.size() > 1) out->single_path = false;
    bool follow = on_path && fac.factors.size() == 1;
    uint64_t total = 0;
    for (const auto& L : fac.factors) {
      if (L.multiplicity == 1) {
        ++total;
        continue;
      }
      if (steps >= max_steps) raise(ErrorCode::ChainBudgetExceeded, "blowup chain exceeded its step budget");
      ++steps;
      const uint32_t e = L.multiplicity;
      const uint32_t keep = static_cast<uint32_t>(max_steps - steps + 1) * e + 1;
      MPoly h = g.truncated(keep + m);
      if (L.vertical) {
        h = raw_transform(h, Axis::X, m);
      } else {
        if (!L.a.is_zero()) h = shear(h, L.a);
        h = raw_transform(h, Axis::Y, m);
      }
      h = h.truncated(keep);
      if (follow) {
        if (!L.vertical && !L.a.is_zero()) out->shifts.push_back(L.a);
        if (record) out->chain.push_back({m, cone, L, h});
      }
      total += run(h, follow);
    }
    return total;
  }
};

}  // namespace

BranchAnalysis count_branches(const MPoly& germ, int max_steps, bool record_chain) {
  BranchAnalysis out;
  if (!germ.is_zero() && germ.min_degree() >= 1) {
    uint32_t m = static_cast<uint32_t>(germ.min_degree());
    out.initial_class = classify_cone(germ.homogeneous_part(m), germ.homogeneous_part(m + 1));
  }
  BranchRun run{max_steps, record_chain, &out};
  out.branches = run.run(germ, true);
  out.steps = run.steps;
  return out;
}

}  // namespace rankcurve
