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

#include <array>

#include "rankcurve/curves.hpp"

namespace rankcurve {

namespace {

using Row = std::array<MPoly, 3>;

uint64_t qpow_exp(const FieldCtx& f, uint32_t i) {
  uint64_t r = 1;
  for (uint32_t j = 0; j < i; ++j) {
    r *= f.q();
    if (r > kMaxExponent) raise(ErrorCode::ExponentOverflow, "q-power exponent exceeds 2^21 - 1");
  }
  return r;
}

MPoly det3(const Row& a, const Row& b, const Row& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

Row var_row(const CurveInstance& inst, Var v) {
  return {linpoly_in(inst.T, v), linpoly_in(inst.F, v), linpoly_in(inst.G, v)};
}

Row const_row(const CurveInstance& inst, Felt a) {
  const FieldPtr& f = inst.work;
  return {MPoly::constant(f, inst.T(a)), MPoly::constant(f, inst.F(a)), MPoly::constant(f, inst.G(a))};
}

// Dense bivariate coefficients, row j holds the X-polynomial of Y^j.
struct Dense {
  const FieldCtx* f;
  uint32_t D;
  std::vector<uint32_t> c;
  uint32_t& at(uint32_t i, uint32_t j) { return c[std::size_t{j} * (D + 1) + i]; }
};

Dense to_dense(const MPoly& P, uint32_t D) {
  Dense d{P.ctx().get(), D, std::vector<uint32_t>(std::size_t{D + 1} * (D + 1), 0)};
  for (const auto& t : P.terms()) d.at(exponent_of(t.key, X), exponent_of(t.key, Y)) = t.c.index();
  return d;
}

MPoly from_dense(const FieldPtr& ctx, Dense& d) {
  std::vector<MPoly::Term> terms;
  for (uint32_t j = 0; j <= d.D; ++j)
    for (uint32_t i = 0; i <= d.D; ++i)
      if (uint32_t v = d.at(i, j)) terms.push_back({pack_exponents(i, j, 0), Felt(ctx.get(), v)});
  return MPoly::from_terms(ctx, std::move(terms));
}

// rho * Q in place, rho = alpha X + beta.
void mul_linear(const FieldCtx& f, std::vector<uint32_t>& Q, uint32_t alpha, uint32_t beta) {
  if (alpha != 0 && Q.back() != 0) raise(ErrorCode::NonExactDivision, "division by a linear form left a remainder");
  for (std::size_t i = Q.size(); i-- > 0;) {
    uint32_t v = f.mul(beta, Q[i]);
    if (i > 0) v = f.add(v, f.mul(alpha, Q[i - 1]));
    Q[i] = v;
  }
}

// Exact division by Y - (alpha X + beta).
void divide_y(Dense& d, uint32_t alpha, uint32_t beta) {
  const FieldCtx& f = *d.f;
  const uint32_t W = d.D + 1;
  std::vector<uint32_t> cur(W), row(W);
  for (uint32_t i = 0; i < W; ++i) {
    cur[i] = d.at(i, d.D);
    d.at(i, d.D) = 0;
  }
  for (uint32_t j = d.D; j-- > 0;) {
    row = cur;
    mul_linear(f, cur, alpha, beta);
    for (uint32_t i = 0; i < W; ++i) {
      cur[i] = f.add(cur[i], d.at(i, j));
      d.at(i, j) = row[i];
    }
  }
  for (uint32_t v : cur)
    if (v != 0) raise(ErrorCode::NonExactDivision, "division by a linear form left a remainder");
}

// Exact division by X - r.
void divide_x(Dense& d, uint32_t r) {
  const FieldCtx& f = *d.f;
  for (uint32_t j = 0; j <= d.D; ++j) {
    uint32_t cur = d.at(d.D, j);
    d.at(d.D, j) = 0;
    for (uint32_t i = d.D; i-- > 0;) {
      uint32_t q = cur;
      cur = f.add(f.mul(r, cur), d.at(i, j));
      d.at(i, j) = q;
    }
    if (cur != 0) raise(ErrorCode::NonExactDivision, "division by a linear form left a remainder");
  }
}

}  // namespace

MPoly linpoly_in(const LinPoly& L, Var v) {
  std::vector<MPoly::Term> terms;
  for (std::size_t i = 0; i < L.size(); ++i) {
    if (L.coeff(i).is_zero()) continue;
    uint64_t e = qpow_exp(*L.ctx(), static_cast<uint32_t>(i));
    uint64_t ex[3] = {0, 0, 0};
    ex[v] = e;
    terms.push_back({pack_exponents(ex[0], ex[1], ex[2]), L.coeff(i)});
  }
  return MPoly::from_terms(L.ctx(), std::move(terms));
}

MPoly moore_det(const LinPoly& f1, const LinPoly& f2, const LinPoly& f3) {
  check_same(f1.ctx().get(), f2.ctx().get());
  check_same(f1.ctx().get(), f3.ctx().get());
  auto row = [&](Var v) { return Row{linpoly_in(f1, v), linpoly_in(f2, v), linpoly_in(f3, v)}; };
  return det3(row(X), row(Y), row(Z));
}

MPoly v_poly(const FieldPtr& ctx) {
  const auto fq = ctx->subfield(1);
  MPoly x = MPoly::variable(ctx, X), y = MPoly::variable(ctx, Y), z = MPoly::variable(ctx, Z);
  MPoly out = MPoly::constant(ctx, ctx->one());
  for (Felt a1 : fq)
    for (Felt a2 : fq) out = out * (x.scaled(a1) + y.scaled(a2) + z);
  for (Felt a1 : fq) out = out * (x.scaled(a1) + y);
  return out * x;
}

MPoly curve_C(const CurveInstance& inst) {
  return det3(var_row(inst, X), var_row(inst, Y), const_row(inst, inst.lambda));
}

CurveA curve_A(const CurveInstance& inst, const MPoly& C) {
  const FieldCtx& f = *inst.work;
  const auto fq = inst.work->subfield(1);
  const Felt lambda = inst.lambda;
  Dense d = to_dense(C, static_cast<uint32_t>(C.total_degree()));
  Felt scale = f.one();
  CurveA out{MPoly(inst.work), 0};
  // a1 X + a2 Y + lambda, then a1 X + Y, then X.
  for (Felt a1 : fq)
    for (Felt a2 : fq) {
      if (a2.is_zero()) {
        if (a1.is_zero()) {
          scale *= lambda;
          continue;
        }
        divide_x(d, (-lambda / a1).index());
        scale *= a1;
      } else {
        divide_y(d, (-a1 / a2).index(), (-lambda / a2).index());
        scale *= a2;
      }
      ++out.divisions;
    }
  for (Felt a1 : fq) {
    divide_y(d, (-a1).index(), 0);
    ++out.divisions;
  }
  divide_x(d, 0);
  ++out.divisions;
  out.A = from_dense(inst.work, d).scaled(scale.inv());
  return out;
}

MPoly shift_det(const CurveInstance& inst, Felt x, Felt y) {
  Row rx = var_row(inst, X), ry = var_row(inst, Y);
  Row cx = const_row(inst, x), cy = const_row(inst, y), cl = const_row(inst, inst.lambda);
  return det3(rx, ry, cl) + det3(rx, cy, cl) + det3(cx, ry, cl) + det3(cx, cy, cl);
}

MPoly curve_C_homogeneous(const CurveInstance& inst, const MPoly& C) {
  (void)inst;
  return C.homogenized(static_cast<uint32_t>(C.total_degree()));
}

MPoly germ_at_slope(const MPoly& H, Felt xi) {
  std::vector<MPoly::Term> terms;
  terms.reserve(H.size());
  for (const auto& t : H.terms())
    terms.push_back({pack_exponents(exponent_of(t.key, Y), exponent_of(t.key, Z), 0), t.c});
  return translate(MPoly::from_terms(H.ctx(), std::move(terms)), xi, H.ctx()->zero());
}

MPoly germ_at_vertical(const MPoly& H) {
  std::vector<MPoly::Term> terms;
  terms.reserve(H.size());
  for (const auto& t : H.terms())
    terms.push_back({pack_exponents(exponent_of(t.key, X), exponent_of(t.key, Z), 0), t.c});
  return MPoly::from_terms(H.ctx(), std::move(terms));
}

InfinityCheck infinity_points(const CurveInstance& inst, const MPoly& C) {
  const FieldPtr& f = inst.work;
  InfinityCheck out{C.homogeneous_part(static_cast<uint32_t>(C.total_degree())), MPoly(f), false, {}};
  out.slopes = f->subfield(inst.k - 2 * inst.t);
  MPoly x = MPoly::variable(f, X), y = MPoly::variable(f, Y);
  MPoly prod = MPoly::constant(f, f->one());
  for (Felt xi : out.slopes)
    if (!xi.is_zero()) prod = prod * (y - x.scaled(xi));
  const uint32_t j = inst.e * 2 * inst.t;
  MPoly xy = MPoly::monomial(f, f->one(), 1, 1);
  Felt scale = inst.lambda.frob(inst.t) * inst.delta * inst.C;
  out.closed_form = (xy * prod).frobenius_power(j).scaled(scale);
  out.matches = out.closed_form == out.computed_top;
  return out;
}

}  // namespace rankcurve
