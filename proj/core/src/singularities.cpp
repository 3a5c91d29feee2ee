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

#include <algorithm>
#include <numeric>

#include "rankcurve/curves.hpp"
#include "rankcurve/parallel.hpp"

namespace rankcurve {

namespace {

struct ReportList {
  std::vector<SingularityReport> v;
  void merge(ReportList& o) {
    for (auto& r : o.v) v.push_back(std::move(r));
  }
};

void trim(std::vector<Felt>& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

// a mod b on the right: a = Q o b + R with deg_q R < deg_q b.
std::vector<Felt> skew_rmod(std::vector<Felt> a, const std::vector<Felt>& b) {
  trim(a);
  while (a.size() >= b.size()) {
    const std::size_t d = a.size() - b.size();
    Felt c = a.back() / b.back().frob(static_cast<int64_t>(d));
    for (std::size_t j = 0; j < b.size(); ++j) a[j + d] -= c * b[j].frob(static_cast<int64_t>(d));
    trim(a);
  }
  return a;
}

uint64_t upow(uint64_t b, uint32_t e) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < e; ++i) r *= b;
  return r;
}

std::vector<Felt> linpoly_roots(const LinPoly& L, unsigned width) {
  const FieldCtx& f = *L.ctx();
  struct Roots {
    std::vector<Felt> v;
    void merge(Roots& o) { v.insert(v.end(), o.v.begin(), o.v.end()); }
  };
  return parallel_fold<Roots>(0, f.size(), width, [&](uint64_t b, uint64_t e) {
           Roots r;
           for (uint64_t i = b; i < e; ++i) {
             Felt x = f.element(i);
             if (L(x).is_zero()) r.v.push_back(x);
           }
           return r;
         }).v;
}

}  // namespace

std::string point_label(const SingularityReport& r, const FieldCtx& f) {
  switch (r.kind) {
    case PointKind::Affine: return "(" + f.format(r.x) + "," + f.format(r.y) + ")";
    case PointKind::Slope: return "(1:" + f.format(r.x) + ":0)";
    case PointKind::Vertical: return "(0:1:0)";
  }
  return "";
}

LinPoly singular_minor(const CurveInstance& inst) {
  return inst.T.scaled(inst.G(inst.lambda)) - inst.G.scaled(inst.lambda.frob(inst.t));
}

LinPoly g_poly(const CurveInstance& inst) {
  LinPoly m = singular_minor(inst);
  const int s = m.min_qdeg();
  std::vector<Felt> c(m.size(), inst.work->zero());
  for (std::size_t i = static_cast<std::size_t>(s); i < m.size(); ++i) c[i - s] = m.coeff(i).frob(-s);
  return LinPoly(inst.work, std::move(c));
}

LinPoly sigma_poly(const CurveInstance& inst) {
  const FieldPtr& f = inst.work;
  Felt l = inst.lambda, lt = l.frob(inst.t);
  return LinPoly::monomial(f, 2 * inst.t, inst.delta * lt) -
         LinPoly::monomial(f, inst.t, l + inst.delta * l.frob(2 * inst.t)) + LinPoly::monomial(f, 0, lt);
}

std::vector<Felt> skew_gcrd(std::vector<Felt> a, std::vector<Felt> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = skew_rmod(std::move(a), b);
    std::swap(a, b);
  }
  if (!a.empty()) {
    Felt li = a.back().inv();
    for (auto& c : a) c *= li;
  }
  return a;
}

AffineCounts affine_counts(const CurveInstance& inst) {
  AffineCounts out;
  LinPoly g = g_poly(inst), phi = sigma_poly(inst);
  if (g.coeff(0).is_zero()) raise(ErrorCode::InstanceInvalid, "g is not separable");
  auto h = skew_gcrd(g.coeffs(), phi.coeffs());
  out.g_qdeg = static_cast<uint32_t>(g.qdeg());
  out.gcrd_qdeg = static_cast<uint32_t>(h.size() - 1);
  const BigInt q = inst.q;
  out.theta_closure = ipow(q, 2 * out.g_qdeg);
  out.sigma_closure = ipow(q, 2 * out.gcrd_qdeg);
  const uint32_t t = inst.t, k = inst.k;
  if (inst.gcase == GCase::TwoT) {
    out.theta_bound = ipow(q, 2 * (k - t));
    out.sigma_bound = ipow(q, std::min(std::max(2 * (k - 2 * t), 2 * t), 4 * t));
  } else {
    out.theta_bound = ipow(q, 2 * k - t);
    out.sigma_bound = ipow(q, std::min(std::max(2 * (k - t), 3 * t), 4 * t));
  }
  out.g_roots_rational = upow(inst.q, static_cast<uint32_t>(g.kernel_dim()));
  LinPoly hl(inst.work, h);
  out.sigma_roots_rational = upow(inst.q, static_cast<uint32_t>(hl.kernel_dim()));
  return out;
}

std::pair<MPoly, MPoly> affine_closed_forms(const CurveInstance& inst, Felt x, Felt y) {
  const FieldPtr& f = inst.work;
  const Felt l = inst.lambda, lt = l.frob(inst.t);
  const uint32_t s = static_cast<uint32_t>(upow(inst.q, inst.cone_exponent()));
  auto mono = [&](Felt c, uint32_t a, uint32_t b) { return MPoly::monomial(f, c, a, b); };
  if (inst.gcase == GCase::TwoT) {
    const Felt Fl = inst.F(l), Gl = inst.G(l);
    auto M = [&](Felt z) { return inst.F(z) * Gl - inst.G(z) * Fl; };
    return {mono(M(y), s, 0) - mono(M(x), 0, s), mono(Gl, s, 1) - mono(Gl, 1, s)};
  }
  const Felt Fl = inst.F(l);
  auto M = [&](Felt z) { return z.frob(inst.t) * Fl - inst.F(z) * lt; };
  return {mono(M(y), s, 0) - mono(M(x), 0, s), mono(lt, 1, s) - mono(lt, s, 1)};
}

int default_max_steps(const CurveInstance& inst) { return static_cast<int>(4 * upow(inst.q, inst.t) + 4); }

std::string ipmax_rule(const CurveInstance& inst, const SingularityReport& r) {
  (void)inst;
  switch (r.kind) {
    case PointKind::Affine: return r.in_sigma ? "affine_sigma" : "affine_theta";
    case PointKind::Vertical: return "pi";
    case PointKind::Slope:
      if (r.in_pi) return "pi";
      if (r.branches && *r.branches == 1) return "single_branch";
      return "lemma";
  }
  return "lemma";
}

Rational ipmax_bound(const CurveInstance& inst, const SingularityReport& r) {
  const std::string rule = ipmax_rule(inst, r);
  const Rational qs = Rational(upow(inst.q, inst.cone_exponent()));
  if (rule == "affine_sigma") return (qs + 1) * (qs + 1) / 4;
  if (rule == "affine_theta") return qs;
  if (rule == "pi") return Rational(upow(inst.q, 4 * inst.t)) / 4;
  if (rule == "single_branch") return Rational(0);
  return lemma_bound(r.cone_class, r.multiplicity);
}

AffineResult affine_singularities(const CurveInstance& inst, const AffineOptions& opt) {
  AffineResult out;
  const auto roots = linpoly_roots(g_poly(inst), opt.width);
  const LinPoly phi = sigma_poly(inst);
  std::vector<bool> in_sigma(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) in_sigma[i] = phi(roots[i]).is_zero();
  out.rational_pairs = uint64_t{roots.size()} * roots.size();
  if (out.rational_pairs > opt.detail_limit) return out;
  out.detailed = true;
  const uint64_t R = roots.size();
  const uint32_t s = static_cast<uint32_t>(upow(inst.q, inst.cone_exponent()));
  out.points = parallel_fold<ReportList>(0, out.rational_pairs, opt.width, [&](uint64_t b, uint64_t e) {
                 ReportList list;
                 for (uint64_t idx = b; idx < e; ++idx) {
                   SingularityReport r;
                   r.kind = PointKind::Affine;
                   r.x = roots[idx / R];
                   r.y = roots[idx % R];
                   r.in_theta = true;
                   r.in_sigma = in_sigma[idx / R] && in_sigma[idx % R];
                   MPoly P = shift_det(inst, r.x, r.y);
                   if (P.is_zero() || P.min_degree() == 0)
                     raise(ErrorCode::PointNotOnCurve, "root pair of the minor is not on the curve");
                   r.multiplicity = static_cast<uint32_t>(P.min_degree());
                   r.cone_class = classify_cone(P.homogeneous_part(r.multiplicity),
                                                P.homogeneous_part(r.multiplicity + 1));
                   r.cone_computed = true;
                   auto [h1, h2] = affine_closed_forms(inst, r.x, r.y);
                   r.closed_form_match = P.homogeneous_part(s) == h1 && P.homogeneous_part(s + 1) == h2;
                   r.ipmax = ipmax_bound(inst, r);
                   r.ipmax_rule = ipmax_rule(inst, r);
                   list.v.push_back(std::move(r));
                 }
                 return list;
               }).v;
  return out;
}

BetaCheck beta_check(const CurveInstance& inst, Felt xi, const std::vector<Felt>& shifts) {
  BetaCheck out;
  if (shifts.size() < 2) return out;
  out.available = true;
  out.beta1 = shifts[0];
  out.beta2 = shifts[1];
  const uint32_t t = inst.t, k = inst.k;
  const Felt l = inst.lambda, d = inst.delta, Fl = inst.F(l);
  const Felt lt = l.frob(t), l2t = l.frob(2 * t);
  const Felt a = xi.frob(k - t) - xi, b = xi.frob(k) - xi;
  const uint64_t qt = upow(inst.q, t);
  const Felt b1 = out.beta1;
  out.beta1_matches = b1.frob(t) == -(Fl * a.frob(t)) / (lt * d);
  const Felt lhs = out.beta2.frob(2 * t);
  const Felt first = b1.frob(t).pow(qt - 1) * (lt * b + Fl * b1).frob(t) / (l2t * d.frob(t));
  out.beta2_matches = lhs == first;
  const Felt at = a.frob(t);
  const Felt second = Fl.pow(qt - 1) * at.pow(qt - 1) *
                      (lt.pow(qt + 1) * d * b.frob(t) - Fl.pow(qt + 1) * at) /
                      (l2t * l2t * d.frob(t) * d.frob(t));
  out.beta2_second_form_matches = lhs == second;
  return out;
}

std::vector<SingularityReport> infinity_singularities(const CurveInstance& inst, const MPoly& H,
                                                      const InfinityOptions& opt) {
  const int steps = opt.max_steps > 0 ? opt.max_steps : default_max_steps(inst);
  const auto slopes = inst.work->subfield(inst.k - 2 * inst.t);
  const uint32_t s = std::gcd(inst.k, inst.t);
  const uint64_t total = slopes.size() + 1;
  return parallel_fold<ReportList>(0, total, opt.width, [&](uint64_t b, uint64_t e) {
           ReportList list;
           for (uint64_t i = b; i < e; ++i) {
             SingularityReport r;
             r.in_omega = true;
             MPoly germ(inst.work);
             if (i < slopes.size()) {
               r.kind = PointKind::Slope;
               r.x = slopes[i];
               r.in_pi = inst.work->in_subfield(r.x, s);
               germ = germ_at_slope(H, r.x);
             } else {
               r.kind = PointKind::Vertical;
               r.in_pi = true;
               germ = germ_at_vertical(H);
             }
             if (germ.is_zero() || germ.min_degree() == 0)
               raise(ErrorCode::PointNotOnCurve, "point at infinity is not on the curve");
             r.multiplicity = static_cast<uint32_t>(germ.min_degree());
             r.cone_class =
                 classify_cone(germ.homogeneous_part(r.multiplicity), germ.homogeneous_part(r.multiplicity + 1));
             r.cone_computed = true;
             if (!r.in_pi && opt.branches) {
               auto ba = count_branches(germ, steps);
               r.branches = ba.branches;
               r.shifts = ba.shifts;
             }
             r.ipmax = ipmax_bound(inst, r);
             r.ipmax_rule = ipmax_rule(inst, r);
             list.v.push_back(std::move(r));
           }
           return list;
         }).v;
}

CriterionVerdict criterion_check(const CurveInstance& inst, const std::vector<SingularityReport>& infinity,
                                 const AffineCounts& counts) {
  CriterionVerdict v;
  const BigInt q = inst.q;
  const uint32_t t = inst.t, k = inst.k;
  const uint32_t s = std::gcd(k, t);
  v.count_pi = ipow(q, s) + 1;
  v.count_omega_minus_pi = ipow(q, k - 2 * t) - ipow(q, s);
  v.count_sigma = counts.sigma_closure;
  v.count_theta_minus_sigma = counts.theta_closure - counts.sigma_closure;
  v.omega_minus_pi = 0;
  v.pi = 0;
  uint64_t seen_pi = 0, seen_rest = 0;
  for (const auto& r : infinity) {
    if (r.kind == PointKind::Affine) continue;
    if (r.in_pi) {
      v.pi += r.ipmax;
      ++seen_pi;
    } else {
      v.omega_minus_pi += r.ipmax;
      ++seen_rest;
    }
  }
  if (BigInt(seen_pi) != v.count_pi || BigInt(seen_rest) != v.count_omega_minus_pi)
    raise(ErrorCode::InvalidArgument, "infinity reports do not cover the points at infinity");
  const Rational qs = Rational(upow(inst.q, inst.cone_exponent()));
  v.theta_minus_sigma = Rational(v.count_theta_minus_sigma) * qs;
  v.sigma = Rational(v.count_sigma) * (qs + 1) * (qs + 1) / 4;
  v.total = v.omega_minus_pi + v.pi + v.theta_minus_sigma + v.sigma;
  const uint64_t qq = inst.q;
  const uint64_t top = upow(qq, k) + upow(qq, 2 * t);
  v.degree_A = top - qq * qq - qq;
  v.degree_A_nominal = top - (qq * qq + qq + 1);
  v.threshold = Rational(2, 9) * Rational(v.degree_A) * Rational(v.degree_A);
  v.threshold_nominal = Rational(2, 9) * Rational(v.degree_A_nominal) * Rational(v.degree_A_nominal);
  v.holds = v.total < v.threshold;
  return v;
}

}  // namespace rankcurve
