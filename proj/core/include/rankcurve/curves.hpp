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

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rankcurve/gf.hpp"
#include "rankcurve/linpoly.hpp"
#include "rankcurve/local.hpp"
#include "rankcurve/mpoly.hpp"
#include "rankcurve/rational.hpp"

namespace rankcurve {

// Lowest q-degree of G: 2t, or t/2 with t even.
enum class GCase { TwoT, HalfT };
const char* gcase_name(GCase c);
GCase parse_gcase(const std::string& s);

struct InstanceSpec {
  uint32_t p = 0, e = 1, n = 0, t = 0, k = 0;
  GCase gcase = GCase::TwoT;
  std::string delta;
  // (i, literal) pairs for the coefficient of X^{q^i}, literals in F_{q^n}.
  std::vector<std::pair<uint32_t, std::string>> G_coeffs;
  std::optional<std::string> lambda;
};

// The curve data of the r = 3 Moore set (x^{q^t}, X + dX^{q^{2t}}, G).
// Everything lives in the working field F_{q^N}, N = lcm(n, k - 2t).
struct CurveInstance {
  CurveInstance(FieldPtr small_field, FieldPtr work_field)
      : small(std::move(small_field)), work(std::move(work_field)), T(work), F(work), G(work) {}

  uint32_t p = 0, e = 1, n = 0, t = 0, k = 0, N = 0;
  uint64_t q = 0;
  GCase gcase = GCase::TwoT;
  FieldPtr small;
  FieldPtr work;
  std::shared_ptr<const Embedding> embed;
  Felt delta, C, lambda;
  // lambda as an element of F_{q^n}.
  Felt lambda_small;
  LinPoly T, F, G;

  static CurveInstance create(const InstanceSpec& spec);

  // t for case 2t, t/2 for case t/2: the exponent of the affine cones.
  uint32_t cone_exponent() const { return gcase == GCase::TwoT ? t : t / 2; }
};

// L_xi(lambda) of the lambda selection rule.
Felt lambda_condition(const CurveInstance& inst, Felt xi, Felt lambda);
// xi in F_{q^{k-2t}} outside F_{q^{gcd(k,t)}}, sorted by index.
std::vector<Felt> lambda_xi_set(const CurveInstance& inst);
// First valid lambda of F_{q^n} in index order, as an element of F_{q^n}.
Felt choose_lambda(const CurveInstance& inst);

// sum a_i v^{q^i} as a polynomial in the variable v.
MPoly linpoly_in(const LinPoly& L, Var v);
MPoly moore_det(const LinPoly& f1, const LinPoly& f2, const LinPoly& f3);
// Product of the q^2 + q + 1 forms a1 X + a2 Y + a3 Z, last nonzero a_i = 1.
MPoly v_poly(const FieldPtr& ctx);

MPoly curve_C(const CurveInstance& inst);

struct CurveA {
  MPoly A;
  uint32_t divisions = 0;
};
// Divides C by V(X, Y, lambda) one linear factor at a time.
CurveA curve_A(const CurveInstance& inst, const MPoly& C);

// C(X + x, Y + y) via row additivity: four determinants.
MPoly shift_det(const CurveInstance& inst, Felt x, Felt y);

// Homogenized C and the germs at the points at infinity.
MPoly curve_C_homogeneous(const CurveInstance& inst, const MPoly& C);
// H(1, u + xi, v): the germ at (1 : xi : 0) in local coordinates (u, v).
MPoly germ_at_slope(const MPoly& H, Felt xi);
// H(u, 1, v): the germ at (0 : 1 : 0).
MPoly germ_at_vertical(const MPoly& H);

struct InfinityCheck {
  MPoly computed_top;
  MPoly closed_form;
  bool matches = false;
  std::vector<Felt> slopes;
};
// Top form of C against lambda^{q^t} d C X^{q^{2t}} Y^{q^{2t}} prod (Y - xi X)^{q^{2t}}.
InfinityCheck infinity_points(const CurveInstance& inst, const MPoly& C);

enum class PointKind { Affine, Slope, Vertical };

struct SingularityReport {
  PointKind kind = PointKind::Affine;
  Felt x, y;  // affine coordinates, or the slope xi in x
  uint32_t multiplicity = 0;
  bool cone_computed = false;
  ConeClass cone_class = ConeClass::Other;
  Rational ipmax = 0;
  std::string ipmax_rule;
  std::optional<uint64_t> branches;
  bool in_omega = false, in_pi = false, in_theta = false, in_sigma = false;
  std::optional<bool> closed_form_match;
  std::vector<Felt> shifts;
};

std::string point_label(const SingularityReport& r, const FieldCtx& f);

// The minor x^{q^t} G(lambda) - lambda^{q^t} G(x) and its q^s-th root g.
LinPoly singular_minor(const CurveInstance& inst);
LinPoly g_poly(const CurveInstance& inst);
// d lambda^{q^t} x^{q^{2t}} - (lambda + d lambda^{q^{2t}}) x^{q^t} + lambda^{q^t} x.
LinPoly sigma_poly(const CurveInstance& inst);

// Skew (composition) arithmetic on coefficient vectors, no reduction mod N.
std::vector<Felt> skew_gcrd(std::vector<Felt> a, std::vector<Felt> b);

struct AffineCounts {
  uint32_t g_qdeg = 0;
  uint32_t gcrd_qdeg = 0;
  BigInt theta_closure;  // q^{2 deg_q g}
  BigInt sigma_closure;  // q^{2 deg_q gcrd(g, phi)}
  BigInt theta_bound;    // q^{2(k-t)} or q^{2k-t}
  BigInt sigma_bound;
  uint64_t g_roots_rational = 0;
  uint64_t sigma_roots_rational = 0;
};
AffineCounts affine_counts(const CurveInstance& inst);

struct AffineOptions {
  // Pairs beyond this are counted but not expanded locally.
  uint64_t detail_limit = 4096;
  unsigned width = 0;
};
struct AffineResult {
  std::vector<SingularityReport> points;
  uint64_t rational_pairs = 0;
  bool detailed = false;
};
AffineResult affine_singularities(const CurveInstance& inst, const AffineOptions& opt = {});

// Closed forms of the two lowest parts at an affine singular point.
std::pair<MPoly, MPoly> affine_closed_forms(const CurveInstance& inst, Felt x, Felt y);

struct BetaCheck {
  bool available = false;
  Felt beta1, beta2;
  bool beta1_matches = false;
  bool beta2_matches = false;
  bool beta2_second_form_matches = false;
};
BetaCheck beta_check(const CurveInstance& inst, Felt xi, const std::vector<Felt>& shifts);

int default_max_steps(const CurveInstance& inst);

struct InfinityOptions {
  int max_steps = 0;  // 0 selects default_max_steps
  bool branches = true;
  unsigned width = 0;
};
std::vector<SingularityReport> infinity_singularities(const CurveInstance& inst, const MPoly& H,
                                                      const InfinityOptions& opt = {});

Rational ipmax_bound(const CurveInstance& inst, const SingularityReport& r);
// Name of the rule ipmax_bound applies.
std::string ipmax_rule(const CurveInstance& inst, const SingularityReport& r);

struct CriterionVerdict {
  Rational total;
  Rational threshold;
  bool holds = false;
  // True degree q^k + q^{2t} - q^2 - q, and the nominal q^k + q^{2t} - (q^2 + q + 1).
  uint64_t degree_A = 0;
  uint64_t degree_A_nominal = 0;
  Rational threshold_nominal;
  Rational omega_minus_pi, pi, theta_minus_sigma, sigma;
  BigInt count_omega_minus_pi, count_pi, count_theta_minus_sigma, count_sigma;
};
CriterionVerdict criterion_check(const CurveInstance& inst, const std::vector<SingularityReport>& infinity,
                                 const AffineCounts& counts);

}  // namespace rankcurve
