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

#include <functional>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rankcurve/curves.hpp"
#include "rankcurve/theorem.hpp"

namespace rankcurve {
namespace {

MPoly part_or_zero(const HomogeneousParts& parts, uint32_t d, const FieldPtr& f) {
  auto it = parts.find(d);
  return it == parts.end() ? MPoly(f) : it->second;
}

InstanceSpec q3_spec(uint32_t p = 3) {
  InstanceSpec s;
  s.p = p;
  s.e = 1;
  s.n = 6;
  s.t = 1;
  s.k = 4;
  s.gcase = GCase::TwoT;
  s.delta = "g";
  s.G_coeffs = {{2, "1"}, {4, "1"}};
  return s;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

bool fq_independent(const FieldCtx& f, const std::vector<Felt>& xs) {
  std::vector<std::vector<Felt>> rows;
  for (Felt x : xs) rows.push_back(f.fq_coords(x));
  return matrix_rank(rows) == xs.size();
}

MPoly linear_form(const FieldPtr& f, Felt a, Felt b, Felt c) {
  return MPoly::monomial(f, a, 1, 0, 0) + MPoly::monomial(f, b, 0, 1, 0) + MPoly::monomial(f, c, 0, 0, 1);
}

TEST(Moore, ClassicalDeterminantVanishesExactlyOnDependentTriples) {
  auto f = FieldCtx::create(2, 1, 3);
  MPoly M = moore_det(LinPoly::monomial(f, 0), LinPoly::monomial(f, 1), LinPoly::monomial(f, 2));
  for (uint64_t a = 0; a < f->size(); ++a)
    for (uint64_t b = 0; b < f->size(); ++b)
      for (uint64_t c = 0; c < f->size(); ++c) {
        Felt x = f->element(a), y = f->element(b), z = f->element(c);
        EXPECT_EQ(M.eval(x, y, z).is_zero(), !fq_independent(*f, {x, y, z}));
      }
  EXPECT_EQ(M.swap_vars(X, Y), -M);
  EXPECT_EQ(v_poly(f), M);
}

TEST(Moore, VPolyIsProductOfRationalLines) {
  for (uint32_t p : {2u, 3u}) {
    auto f = FieldCtx::create(p, 1, 2);
    MPoly V = v_poly(f);
    EXPECT_EQ(V.total_degree(), static_cast<int>(p * p + p + 1));
    MPoly prod = MPoly::constant(f, f->one());
    int lines = 0;
    for (uint32_t a = 0; a < p; ++a)
      for (uint32_t b = 0; b < p; ++b) {
        prod = prod * linear_form(f, f->from_int(a), f->from_int(b), f->one());
        ++lines;
      }
    for (uint32_t a = 0; a < p; ++a) {
      prod = prod * linear_form(f, f->from_int(a), f->one(), f->zero());
      ++lines;
    }
    prod = prod * linear_form(f, f->one(), f->zero(), f->zero());
    ++lines;
    EXPECT_EQ(lines, static_cast<int>(p * p + p + 1));
    EXPECT_TRUE(V == prod || V == -prod);
  }
}

TEST(Moore, AntisymmetryAndDependentVanishing) {
  auto f = FieldCtx::create(2, 1, 4);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    LinPoly a = testing::random_linpoly(f, rng), b = testing::random_linpoly(f, rng),
            c = testing::random_linpoly(f, rng);
    MPoly M = moore_det(a, b, c);
    EXPECT_EQ(moore_det(b, a, c), -M);
    EXPECT_EQ(M.swap_vars(Y, Z), -M);
    for (int s = 0; s < 20; ++s) {
      Felt x = testing::random_felt(f, rng), y = testing::random_felt(f, rng);
      EXPECT_TRUE(M.eval(x, y, x + y).is_zero());
    }
  }
}

class Q3Instance : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    inst = new CurveInstance(CurveInstance::create(q3_spec()));
    C = new MPoly(curve_C(*inst));
    H = new MPoly(curve_C_homogeneous(*inst, *C));
  }
  static void TearDownTestSuite() {
    delete H;
    delete C;
    delete inst;
  }
  static CurveInstance* inst;
  static MPoly* C;
  static MPoly* H;
};
CurveInstance* Q3Instance::inst = nullptr;
MPoly* Q3Instance::C = nullptr;
MPoly* Q3Instance::H = nullptr;

TEST_F(Q3Instance, Parameters) {
  EXPECT_EQ(inst->N, 6u);
  EXPECT_EQ(inst->q, 3u);
  EXPECT_EQ(inst->cone_exponent(), 1u);
  EXPECT_EQ(inst->G.qdeg(), 4);
  EXPECT_EQ(inst->G.min_qdeg(), 2);
  EXPECT_EQ(inst->F.qdeg(), 2);
  EXPECT_EQ(inst->F.min_qdeg(), 0);
}

TEST_F(Q3Instance, LambdaSatisfiesEveryCondition) {
  const FieldCtx& w = *inst->work;
  Felt l = inst->lambda;
  EXPECT_FALSE(w.in_subfield(l, 1));
  EXPECT_FALSE(inst->F(l).is_zero());
  EXPECT_FALSE(inst->G(l).is_zero());
  auto xis = lambda_xi_set(*inst);
  EXPECT_EQ(xis.size(), 6u);
  for (Felt xi : xis) {
    EXPECT_TRUE(w.in_subfield(xi, 2));
    EXPECT_FALSE(w.in_subfield(xi, 1));
    EXPECT_FALSE(lambda_condition(*inst, xi, l).is_zero());
  }
  // First valid element in index order.
  for (uint64_t i = 0; i < inst->lambda_small.index(); ++i) {
    InstanceSpec s = q3_spec();
    s.lambda = std::to_string(i);
    EXPECT_EQ(code_of([&] { CurveInstance::create(s); }), ErrorCode::InstanceInvalid) << i;
  }
  // Existence bound: (q^{3t} + q^{2t}) q^{k-2t} < q^n.
  EXPECT_LT((27 + 9) * 9, 729);
}

TEST_F(Q3Instance, DeterminantDegrees) {
  EXPECT_EQ(C->total_degree(), 81 + 9);
  MPoly full = moore_det(inst->T, inst->F, inst->G);
  EXPECT_EQ(full.total_degree(), 81 + 9 + 3);
  EXPECT_EQ(full.specialize(Z, inst->lambda), *C);
}

TEST_F(Q3Instance, ExactDivisionByV) {
  CurveA A = curve_A(*inst, *C);
  EXPECT_EQ(A.divisions, 12u);
  MPoly V = v_poly(inst->work).specialize(Z, inst->lambda);
  EXPECT_EQ(A.A * V, *C);
  // deg V(X, Y, lambda) = q^2 + q: the line Z = 0 contributes a constant.
  EXPECT_EQ(V.total_degree(), 12);
  EXPECT_EQ(A.A.total_degree(), 78);
}

TEST_F(Q3Instance, InfinityForm) {
  auto ic = infinity_points(*inst, *C);
  EXPECT_TRUE(ic.matches);
  EXPECT_EQ(ic.computed_top, ic.closed_form);
  EXPECT_EQ(ic.slopes.size(), 9u);
  for (Felt xi : ic.slopes) EXPECT_TRUE(inst->work->in_subfield(xi, 2));
  // Independent check: lambda^{q^t} d C X^9 Y^9 prod_{xi != 0} (Y - xi X)^9.
  const FieldPtr& w = inst->work;
  MPoly prod = MPoly::monomial(w, w->one(), 1, 1);
  for (Felt xi : inst->work->subfield(2))
    if (!xi.is_zero()) prod = prod * (MPoly::monomial(w, w->one(), 0, 1) - MPoly::monomial(w, xi, 1, 0));
  MPoly expected = prod.frobenius_power(2).scaled(inst->lambda.frob(1) * inst->delta * inst->C);
  EXPECT_EQ(C->homogeneous_part(90), expected);
}

TEST_F(Q3Instance, MultiplicitiesAtInfinity) {
  InfinityOptions opt;
  auto reports = infinity_singularities(*inst, *H, opt);
  ASSERT_EQ(reports.size(), 10u);
  int vertical = 0;
  for (const auto& r : reports) {
    if (r.kind == PointKind::Vertical) {
      ++vertical;
      EXPECT_EQ(r.multiplicity, 9u);
      EXPECT_TRUE(r.in_pi);
      continue;
    }
    bool rational = inst->work->in_subfield(r.x, 1);
    EXPECT_EQ(r.multiplicity, rational ? 9u : 6u);
    EXPECT_EQ(r.in_pi, rational);
    EXPECT_EQ(germ_at_slope(*H, r.x).min_degree(), static_cast<int>(r.multiplicity));
    if (!rational) {
      ASSERT_TRUE(r.branches.has_value());
      EXPECT_EQ(*r.branches, 1u);
      EXPECT_EQ(r.ipmax, Rational(0));
      EXPECT_EQ(r.ipmax_rule, "single_branch");
      auto b = beta_check(*inst, r.x, r.shifts);
      EXPECT_TRUE(b.available);
      EXPECT_TRUE(b.beta1_matches);
      EXPECT_TRUE(b.beta2_matches);
      EXPECT_TRUE(b.beta2_second_form_matches);
    } else {
      EXPECT_EQ(r.ipmax, Rational(81, 4));
    }
  }
  EXPECT_EQ(vertical, 1);
}

TEST_F(Q3Instance, FirstTransformLeadingCoefficient) {
  const FieldCtx& w = *inst->work;
  for (Felt xi : lambda_xi_set(*inst)) {
    auto ba = count_branches(germ_at_slope(*H, xi), default_max_steps(*inst), true);
    ASSERT_FALSE(ba.chain.empty());
    Felt expected = -(inst->C * inst->F(inst->lambda) * (xi.frob(3) - xi).frob(1));
    EXPECT_EQ(ba.chain[0].transformed.coeff(0, 6), expected) << w.format(xi);
  }
}

TEST_F(Q3Instance, AffineSingularitiesAgainstBruteForce) {
  const FieldCtx& w = *inst->work;
  MPoly Cx = C->derivative(X), Cy = C->derivative(Y);
  std::set<std::pair<uint32_t, uint32_t>> brute;
  for (uint64_t a = 0; a < w.size(); ++a)
    for (uint64_t b = 0; b < w.size(); ++b) {
      Felt x = w.element(a), y = w.element(b);
      if (!Cx.eval(x, y).is_zero() || !Cy.eval(x, y).is_zero() || !C->eval(x, y).is_zero()) continue;
      brute.insert({x.index(), y.index()});
    }
  auto aff = affine_singularities(*inst);
  EXPECT_TRUE(aff.detailed);
  EXPECT_EQ(aff.rational_pairs, 9u);
  std::set<std::pair<uint32_t, uint32_t>> engine;
  for (const auto& r : aff.points) {
    engine.insert({r.x.index(), r.y.index()});
    EXPECT_GE(multiplicity(*C, r.x, r.y), 2u);
    EXPECT_EQ(r.multiplicity, multiplicity(*C, r.x, r.y));
    ASSERT_TRUE(r.closed_form_match.has_value());
    EXPECT_TRUE(*r.closed_form_match);
    auto parts = shift_expand(*C, r.x, r.y);
    auto [h1, h2] = affine_closed_forms(*inst, r.x, r.y);
    EXPECT_EQ(part_or_zero(parts, 3, inst->work), h1);
    EXPECT_EQ(part_or_zero(parts, 4, inst->work), h2);
  }
  EXPECT_EQ(engine, brute);
}

TEST_F(Q3Instance, ThetaAndSigmaCounts) {
  auto c = affine_counts(*inst);
  EXPECT_EQ(c.theta_closure, BigInt(729));
  EXPECT_LE(c.theta_closure, c.theta_bound);
  EXPECT_EQ(c.theta_bound, BigInt(729));
  EXPECT_LE(c.sigma_closure, c.sigma_bound);
  EXPECT_EQ(c.sigma_bound, BigInt(81));
  LinPoly g = g_poly(*inst);
  int brute = testing::brute_kernel_dim(*inst->work, [&](Felt x) { return g(x); });
  EXPECT_EQ(c.g_roots_rational, testing::ipow_u64(3, brute));
  // g has at most q^{k-t} roots.
  std::vector<Felt> dense(g.size() ? 82 : 0, inst->work->zero());
  for (auto [i, cf] : g.terms()) dense[testing::ipow_u64(3, i)] = inst->work->element(cf);
  EXPECT_LE(poly_roots(*inst->work, dense).size(), 27u);
}

TEST_F(Q3Instance, CriterionFailsForExcludedPair) {
  auto inf = infinity_singularities(*inst, *H);
  auto v = criterion_check(*inst, inf, affine_counts(*inst));
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(v.degree_A, 78u);
  EXPECT_EQ(v.degree_A_nominal, 77u);
  EXPECT_EQ(v.threshold, Rational(2, 9) * 78 * 78);
  EXPECT_EQ(v.threshold_nominal, Rational(2, 9) * 77 * 77);
  EXPECT_EQ(v.total, v.omega_minus_pi + v.pi + v.theta_minus_sigma + v.sigma);
}

TEST(Curves, CriterionHoldsForQ7) {
  auto inst = CurveInstance::create(q3_spec(7));
  MPoly C = curve_C(inst);
  auto inf = infinity_singularities(inst, curve_C_homogeneous(inst, C));
  for (const auto& r : inf)
    if (r.kind == PointKind::Slope && !r.in_pi) {
      ASSERT_TRUE(r.branches.has_value());
      EXPECT_EQ(*r.branches, 1u);
    }
  auto v = criterion_check(inst, inf, affine_counts(inst));
  EXPECT_TRUE(v.holds);
  EXPECT_LT(v.total, v.threshold);
  // The proof-level estimate passes here, so the instance sum must too.
  EXPECT_TRUE(theorem_row(GCase::TwoT, 7, 1, 4).passes);
}

TEST(Curves, HalfTCase) {
  InstanceSpec s;
  s.p = 3;
  s.n = 8;
  s.t = 2;
  s.k = 5;
  s.gcase = GCase::HalfT;
  s.delta = "g";
  s.G_coeffs = {{1, "1"}, {5, "1"}};
  auto inst = CurveInstance::create(s);
  EXPECT_EQ(inst.cone_exponent(), 1u);
  MPoly C = curve_C(inst);
  EXPECT_EQ(C.total_degree(), 243 + 81);
  EXPECT_TRUE(infinity_points(inst, C).matches);
  auto aff = affine_singularities(inst);
  ASSERT_FALSE(aff.points.empty());
  for (const auto& r : aff.points) {
    ASSERT_TRUE(r.closed_form_match.has_value());
    EXPECT_TRUE(*r.closed_form_match);
  }
  auto c = affine_counts(inst);
  EXPECT_LE(c.theta_closure, c.theta_bound);
  EXPECT_LE(c.sigma_closure, c.sigma_bound);
}

TEST(Curves, InstanceValidation) {
  auto bad = [](auto mutate) {
    InstanceSpec s = q3_spec();
    mutate(s);
    return code_of([&] { CurveInstance::create(s); });
  };
  EXPECT_EQ(bad([](InstanceSpec& s) { s.k = 2; }), ErrorCode::InstanceInvalid);
  EXPECT_EQ(bad([](InstanceSpec& s) { s.n = 5; }), ErrorCode::InstanceInvalid);
  EXPECT_EQ(bad([](InstanceSpec& s) { s.e = 0; }), ErrorCode::InstanceInvalid);
  EXPECT_EQ(bad([](InstanceSpec& s) { s.delta = "1"; }), ErrorCode::NormConditionViolation);
  EXPECT_EQ(bad([](InstanceSpec& s) { s.G_coeffs = {{4, "1"}}; }), ErrorCode::InstanceInvalid);
  EXPECT_EQ(bad([](InstanceSpec& s) { s.G_coeffs = {{2, "2"}, {4, "1"}}; }), ErrorCode::InstanceInvalid);
  EXPECT_EQ(bad([](InstanceSpec& s) { s.G_coeffs = {{1, "1"}, {4, "1"}}; }), ErrorCode::InstanceInvalid);
  EXPECT_EQ(bad([](InstanceSpec& s) { s.G_coeffs = {{2, "1"}, {2, "1"}, {4, "1"}}; }),
            ErrorCode::InstanceInvalid);
  EXPECT_EQ(bad([](InstanceSpec& s) { s.lambda = "1"; }), ErrorCode::InstanceInvalid);
  EXPECT_EQ(bad([](InstanceSpec& s) { s.gcase = GCase::HalfT; }), ErrorCode::InstanceInvalid);
  EXPECT_EQ(code_of([] { parse_gcase("3t"); }), ErrorCode::SpecParse);
}

TEST(Curves, ShiftDeterminantMatchesTranslation) {
  auto inst = CurveInstance::create(q3_spec());
  MPoly C = curve_C(inst);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 3; ++i) {
    Felt x = testing::random_felt(inst.work, rng), y = testing::random_felt(inst.work, rng);
    EXPECT_EQ(shift_det(inst, x, y), translate(C, x, y));
  }
}

}  // namespace
}  // namespace rankcurve
