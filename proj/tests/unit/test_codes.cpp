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
#include <functional>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rankcurve/codes.hpp"

namespace rankcurve {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

// Minimum rank over all nonzero codewords, each rank read off a kernel count.
int brute_min_distance(const RankCode& code) {
  const FieldCtx& f = *code.ctx();
  const int r = code.r(), n = code.n();
  std::vector<uint64_t> digits(r, 0);
  int best = n;
  while (true) {
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == f.size()) digits[i++] = 0;
    if (i == digits.size()) break;
    std::vector<Felt> c;
    for (auto d : digits) c.push_back(f.element(d));
    LinPoly w = codeword(code, c);
    best = std::min(best, n - testing::brute_kernel_dim(f, [&](Felt x) { return w(x); }));
  }
  return best;
}

Felt det3(const std::vector<std::vector<Felt>>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

bool fq_independent(const FieldCtx& f, const std::vector<Felt>& xs) {
  std::vector<std::vector<Felt>> rows;
  for (Felt x : xs) rows.push_back(f.fq_coords(x));
  return matrix_rank(rows) == xs.size();
}

// Moore property for r = 3 straight from the definition.
bool brute_moore(const RankCode& code) {
  const FieldCtx& f = *code.ctx();
  for (uint64_t a = 0; a < f.size(); ++a)
    for (uint64_t b = 0; b < f.size(); ++b)
      for (uint64_t c = 0; c < f.size(); ++c) {
        std::vector<Felt> xs{f.element(a), f.element(b), f.element(c)};
        std::vector<std::vector<Felt>> m(3, std::vector<Felt>(3));
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) m[i][j] = code.gens()[i](xs[j]);
        if (det3(m).is_zero() && fq_independent(f, xs)) return false;
      }
  return true;
}

TEST(Codes, CreateValidatesGenerators) {
  auto f = FieldCtx::create(2, 1, 5);
  auto c1 = RankCode::create({LinPoly::monomial(f, 0)}, 0);
  EXPECT_EQ(c1.r(), 1);
  auto g = RankCode::create({LinPoly::monomial(f, 0), LinPoly::monomial(f, 1), LinPoly::monomial(f, 2)}, 0);
  EXPECT_EQ(g.r(), 3);
  EXPECT_TRUE(g.normal_form().all());
  auto f3 = FieldCtx::create(3, 1, 4);
  EXPECT_EQ(code_of([&] {
              RankCode::create({LinPoly::monomial(f3, 0), LinPoly::monomial(f3, 0, f3->from_int(2))});
            }),
            ErrorCode::DependentGenerators);
  EXPECT_EQ(code_of([&] { RankCode::create({LinPoly::monomial(f, 0), LinPoly::monomial(f3, 0)}); }),
            ErrorCode::ContextMismatch);
}

TEST(Codes, GabidulinIsMrd) {
  auto f = FieldCtx::create(2, 1, 5);
  auto code = make_gabidulin(f, 3, 1);
  EXPECT_EQ(code.gens()[2], LinPoly::monomial(f, 2));
  auto v = min_distance(code);
  EXPECT_EQ(v.d, 3);
  EXPECT_TRUE(v.is_mrd);
  EXPECT_EQ(v.examined, 1057u);
  EXPECT_EQ(brute_min_distance(code), 3);
  uint64_t sum = 0;
  for (auto h : v.histogram) sum += h;
  EXPECT_EQ(sum, 1057u);
}

TEST(Codes, SingleGeneratorReachesFullRank) {
  for (auto [p, n] : {std::pair{2u, 4u}, {3u, 3u}, {5u, 2u}}) {
    auto f = FieldCtx::create(p, 1, n);
    auto v = min_distance(RankCode::create({LinPoly::monomial(f, 0)}));
    EXPECT_EQ(v.d, static_cast<int>(n));
    EXPECT_TRUE(v.is_mrd);
  }
}

TEST(Codes, NonMrdExampleWithWitness) {
  auto f = FieldCtx::create(3, 1, 4);
  auto code = RankCode::create({LinPoly::monomial(f, 0), LinPoly::monomial(f, 2)}, 0);
  auto v = min_distance(code);
  EXPECT_LT(v.d, 3);
  EXPECT_FALSE(v.is_mrd);
  EXPECT_EQ(v.d, brute_min_distance(code));
  ASSERT_FALSE(v.witness_coeffs.empty());
  LinPoly w = codeword(code, v.witness_coeffs);
  EXPECT_EQ(4 - testing::brute_kernel_dim(*f, [&](Felt x) { return w(x); }), v.d);
}

TEST(Codes, SpectrumMatchesBruteForceOnRandomCodes) {
  auto f = FieldCtx::create(2, 1, 4);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 6; ++i) {
    std::vector<LinPoly> gens{testing::random_linpoly(f, rng), testing::random_linpoly(f, rng)};
    try {
      auto code = RankCode::create(gens);
      EXPECT_EQ(min_distance(code).d, brute_min_distance(code));
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::DependentGenerators);
    }
  }
}

TEST(Codes, ChunkedScanEqualsSingleScan) {
  auto f = FieldCtx::create(2, 1, 5);
  auto code = make_gabidulin(f, 3, 1);
  uint64_t total = projective_count(code);
  auto whole = scan_spectrum(code, 0, total, 1);
  SpectrumPartial acc;
  for (uint64_t b = 0; b < total; b += 100) acc.merge(scan_spectrum(code, b, std::min(total, b + 100), 3));
  EXPECT_EQ(acc.examined, whole.examined);
  EXPECT_EQ(acc.min_rank, whole.min_rank);
  EXPECT_EQ(acc.witness_index, whole.witness_index);
  EXPECT_EQ(acc.histogram, whole.histogram);
}

TEST(Codes, BudgetIsEnforced) {
  auto f = FieldCtx::create(2, 1, 5);
  Budget b;
  b.codewords = 100;
  EXPECT_EQ(code_of([&] { min_distance(make_gabidulin(f, 3, 1), b); }), ErrorCode::BudgetExceeded);
  b.tuples = 10;
  EXPECT_EQ(code_of([&] { is_moore_set(make_gabidulin(f, 3, 1), b); }), ErrorCode::BudgetExceeded);
}

TEST(Codes, PseudoregulusIsScattered) {
  auto f = FieldCtx::create(2, 1, 5);
  auto v = is_scattered(LinPoly::monomial(f, 1), 0);
  EXPECT_TRUE(v.scattered);
  EXPECT_FALSE(v.witness.has_value());
}

TEST(Codes, LpScatteredAndNonScatteredExamples) {
  auto f = FieldCtx::create(3, 1, 4);
  Felt g = f->generator();
  ASSERT_FALSE(f->norm_rel(g, 1).is_one());
  EXPECT_TRUE(is_scattered(make_lp(f, 1, g), 1).scattered);
  auto v = is_scattered(LinPoly::monomial(f, 2), 0);
  EXPECT_FALSE(v.scattered);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness_kernel_dim, 2);
  Felt m = *v.witness;
  EXPECT_EQ(testing::brute_kernel_dim(*f, [&](Felt x) { return x.pow(9) - m * x; }), 2);
}

TEST(Codes, ScatteredMatchesBruteForce) {
  auto f = FieldCtx::create(2, 1, 4);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 8; ++i) {
    LinPoly L = testing::random_linpoly(f, rng);
    bool brute = true;
    for (uint64_t m = 0; m < f->size() && brute; ++m) {
      Felt mm = f->element(m);
      if (testing::brute_kernel_dim(*f, [&](Felt x) { return L(x) - mm * x.frob(1); }) > 1) brute = false;
    }
    EXPECT_EQ(is_scattered(L, 1).scattered, brute);
  }
}

TEST(Codes, MooreAgreesWithDefinition) {
  auto f = FieldCtx::create(2, 1, 4);
  auto g = make_gabidulin(f, 3, 1);
  EXPECT_TRUE(is_moore_set(g).is_moore);
  EXPECT_TRUE(brute_moore(g));
  EXPECT_TRUE(min_distance(g).is_mrd);
  std::mt19937_64 rng(21);
  bool found_false = false;
  for (int i = 0; i < 40 && !found_false; ++i) {
    std::vector<LinPoly> gens{testing::random_linpoly(f, rng), testing::random_linpoly(f, rng),
                              testing::random_linpoly(f, rng)};
    RankCode code = RankCode::create(gens);
    auto mv = is_moore_set(code);
    EXPECT_EQ(mv.is_moore, min_distance(code).is_mrd);
    if (!mv.is_moore) {
      found_false = true;
      EXPECT_FALSE(brute_moore(code));
      ASSERT_EQ(mv.witness.size(), 3u);
      EXPECT_TRUE(fq_independent(*f, mv.witness));
      std::vector<std::vector<Felt>> m(3, std::vector<Felt>(3));
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) m[a][b] = code.gens()[a](mv.witness[b]);
      EXPECT_TRUE(det3(m).is_zero());
    }
  }
  EXPECT_TRUE(found_false);
}

TEST(Codes, DependentTuplesAlwaysVanish) {
  auto f = FieldCtx::create(2, 1, 4);
  std::mt19937_64 rng(2);
  auto code = RankCode::create(
      {testing::random_linpoly(f, rng), testing::random_linpoly(f, rng), testing::random_linpoly(f, rng)});
  for (int i = 0; i < 200; ++i) {
    Felt a = testing::random_felt(f, rng), b = testing::random_felt(f, rng);
    std::vector<Felt> xs{a, b, a + b};
    std::vector<std::vector<Felt>> m(3, std::vector<Felt>(3));
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m[r][c] = code.gens()[r](xs[c]);
    EXPECT_TRUE(det3(m).is_zero());
  }
}

TEST(Codes, TwistedGabidulin) {
  auto f = FieldCtx::create(3, 1, 4);
  Felt g = f->generator();
  ASSERT_FALSE(f->norm_rel(g, 1).is_one());
  auto code = make_twisted(f, 3, 1, g);
  auto v = min_distance(code);
  EXPECT_TRUE(v.is_mrd);
  EXPECT_EQ(v.examined, 6643u);
  Felt bad;
  for (uint64_t i = 1; i < f->size(); ++i)
    if (f->norm_rel(f->element(i), 1).is_one()) {
      bad = f->element(i);
      break;
    }
  EXPECT_EQ(code_of([&] { make_twisted(f, 3, 1, bad); }), ErrorCode::NormConditionViolation);
}

TEST(Codes, ConstructorGuards) {
  auto f = FieldCtx::create(3, 1, 4);
  EXPECT_EQ(code_of([&] { make_lp(f, 1, f->one()); }), ErrorCode::NormConditionViolation);
  EXPECT_EQ(code_of([&] { make_gabidulin(f, 2, 2); }), ErrorCode::GcdViolation);
  EXPECT_EQ(code_of([&] { make_lp(f, 2, f->generator()); }), ErrorCode::GcdViolation);
}

TEST(Codes, ProbePseudoregulusAcrossExtensions) {
  auto f = FieldCtx::create(2, 1, 3);
  auto entries = probe_exceptional(LinPoly::monomial(f, 1), 0, {1, 2, 3});
  ASSERT_EQ(entries.size(), 3u);
  for (const auto& e : entries) EXPECT_TRUE(e.verdict) << "m=" << e.m;
}

TEST(Codes, ProbeLpFollowsNormCondition) {
  auto f = FieldCtx::create(3, 1, 4);
  for (uint64_t i = 2; i < f->size(); i += 7) {
    Felt d = f->element(i);
    if (f->norm_rel(d, 1).is_one()) continue;
    LinPoly lp = make_lp(f, 1, d);
    auto entries = probe_exceptional(lp, 1, {1, 2});
    ASSERT_EQ(entries.size(), 2u);
    EXPECT_TRUE(entries[0].verdict);
    // Over F_{3^8} the norm of d is N_{3^4/3}(d)^2, which is 1.
    auto big = FieldCtx::create(3, 1, 8);
    Embedding emb(f, big);
    EXPECT_TRUE(big->norm_rel(emb(d), 1).is_one());
  }
}

TEST(Codes, ProbeFindsMixedVerdicts) {
  // x + g x^{q^2} is scattered over F_{3^4} but not over F_{3^8}.
  auto f = FieldCtx::create(3, 1, 4);
  LinPoly L = make_lp(f, 1, f->generator());
  ASSERT_FALSE(f->norm_rel(f->generator(), 1).is_one());
  auto entries = probe_exceptional(L, 1, {1, 2});
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_TRUE(entries[0].verdict);
  EXPECT_FALSE(entries[1].verdict);
  auto big = FieldCtx::create(3, 1, 8);
  Embedding emb(f, big);
  EXPECT_FALSE(is_scattered(embed_linpoly(L, emb), 1).scattered);
}

TEST(Codes, ProjectivePointsAreNormalized) {
  auto f = FieldCtx::create(3, 1, 2);
  auto code = RankCode::create({LinPoly::monomial(f, 0), LinPoly::monomial(f, 1)});
  uint64_t total = projective_count(code);
  EXPECT_EQ(total, 10u);
  std::set<std::vector<uint32_t>> seen;
  for (uint64_t i = 0; i < total; ++i) {
    auto c = projective_point(code, i);
    std::vector<uint32_t> idx;
    for (Felt x : c) idx.push_back(x.index());
    auto first = std::find_if(c.begin(), c.end(), [](Felt x) { return !x.is_zero(); });
    ASSERT_NE(first, c.end());
    EXPECT_TRUE(first->is_one());
    seen.insert(idx);
  }
  EXPECT_EQ(seen.size(), total);
}

}  // namespace
}  // namespace rankcurve
