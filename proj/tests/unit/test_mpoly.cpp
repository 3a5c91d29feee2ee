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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rankcurve/mpoly.hpp"

namespace rankcurve {
namespace {

MPoly random_mpoly(const FieldPtr& f, std::mt19937_64& rng, int terms, uint32_t maxdeg, bool with_z = false) {
  std::vector<MPoly::Term> t;
  for (int i = 0; i < terms; ++i) {
    uint32_t a = rng() % (maxdeg + 1), b = rng() % (maxdeg + 1), c = with_z ? rng() % 3 : 0;
    t.push_back({pack_exponents(a, b, c), testing::random_felt(f, rng)});
  }
  return MPoly::from_terms(f, std::move(t));
}

TEST(MPoly, RingOperationsAgreeWithEvaluation) {
  auto f = FieldCtx::create(3, 1, 3);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 30; ++i) {
    MPoly a = random_mpoly(f, rng, 8, 12, true), b = random_mpoly(f, rng, 8, 12, true);
    for (int s = 0; s < 10; ++s) {
      Felt x = testing::random_felt(f, rng), y = testing::random_felt(f, rng), z = testing::random_felt(f, rng);
      EXPECT_EQ((a * b).eval(x, y, z), a.eval(x, y, z) * b.eval(x, y, z));
      EXPECT_EQ((a + b).eval(x, y, z), a.eval(x, y, z) + b.eval(x, y, z));
      EXPECT_EQ((a - b).eval(x, y, z), a.eval(x, y, z) - b.eval(x, y, z));
      EXPECT_EQ(a.specialize(Z, z).eval(x, y, f->zero()), a.eval(x, y, z));
      EXPECT_EQ(a.swap_vars(X, Y).eval(x, y, z), a.eval(y, x, z));
    }
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(MPoly, TranslateAndShearAgreeWithEvaluation) {
  auto f = FieldCtx::create(2, 1, 4);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 30; ++i) {
    MPoly P = random_mpoly(f, rng, 10, 40);
    Felt u = testing::random_felt(f, rng), v = testing::random_felt(f, rng), a = testing::random_felt(f, rng);
    MPoly T = translate(P, u, v), S = shear(P, a);
    for (int s = 0; s < 10; ++s) {
      Felt x = testing::random_felt(f, rng), y = testing::random_felt(f, rng);
      EXPECT_EQ(T.eval(x, y), P.eval(x + u, y + v));
      EXPECT_EQ(S.eval(x, y), P.eval(x + a * y, y));
    }
  }
}

TEST(MPoly, TranslationComposes) {
  auto f = FieldCtx::create(3, 1, 2);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    MPoly P = random_mpoly(f, rng, 10, 30);
    Felt u1 = testing::random_felt(f, rng), v1 = testing::random_felt(f, rng);
    Felt u2 = testing::random_felt(f, rng), v2 = testing::random_felt(f, rng);
    EXPECT_EQ(translate(translate(P, u1, v1), u2, v2), translate(P, u1 + u2, v1 + v2));
    EXPECT_EQ(translate(P, f->zero(), f->zero()), P);
  }
}

TEST(MPoly, LucasMatchesPascal) {
  for (uint32_t p : {2u, 3u, 5u, 7u}) {
    std::vector<std::vector<uint32_t>> pascal(60, std::vector<uint32_t>(60, 0));
    for (uint32_t n = 0; n < 60; ++n) {
      pascal[n][0] = 1;
      for (uint32_t k = 1; k <= n; ++k) pascal[n][k] = (pascal[n - 1][k - 1] + (k < n ? pascal[n - 1][k] : 0)) % p;
    }
    for (uint32_t n = 0; n < 60; ++n) {
      for (uint32_t k = 0; k <= n; ++k) EXPECT_EQ(binomial_mod_p(n, k, p), pascal[n][k]) << n << " " << k;
      std::vector<uint32_t> seen(n + 1, 0);
      for_each_lucas(n, p, [&](uint64_t i, uint32_t c) { seen[i] = c; });
      for (uint32_t k = 0; k <= n; ++k) EXPECT_EQ(seen[k], pascal[n][k]);
    }
  }
}

TEST(MPoly, HomogeneousPartsRegroup) {
  auto f = FieldCtx::create(5, 1, 1);
  std::mt19937_64 rng(4);
  MPoly P = random_mpoly(f, rng, 20, 6);
  MPoly sum(f);
  for (const auto& [d, part] : P.homogeneous_parts()) {
    for (const auto& t : part.terms()) EXPECT_EQ(key_degree(t.key), d);
    EXPECT_EQ(part, P.homogeneous_part(d));
    sum = sum + part;
  }
  EXPECT_EQ(sum, P);
  EXPECT_EQ(P.truncated(3).total_degree() <= 3, true);
}

TEST(MPoly, FrobeniusPowerRaisesToP) {
  auto f = FieldCtx::create(3, 1, 2);
  std::mt19937_64 rng(5);
  MPoly P = random_mpoly(f, rng, 6, 5);
  MPoly P3 = P.frobenius_power(1);
  EXPECT_EQ(P3, P * P * P);
  for (int s = 0; s < 10; ++s) {
    Felt x = testing::random_felt(f, rng), y = testing::random_felt(f, rng);
    EXPECT_EQ(P.frobenius_power(2).eval(x, y), P.eval(x, y).pow(9));
  }
}

TEST(MPoly, DerivativeAndDegrees) {
  auto f = FieldCtx::create(3, 1, 1);
  Felt one = f->one();
  MPoly P = MPoly::monomial(f, one, 3, 1) + MPoly::monomial(f, one, 2, 2) + MPoly::monomial(f, one, 0, 1);
  EXPECT_EQ(P.total_degree(), 4);
  EXPECT_EQ(P.min_degree(), 1);
  EXPECT_EQ(P.degree_in(X), 3u);
  // d/dX kills X^3 in characteristic 3.
  EXPECT_EQ(P.derivative(X), MPoly::monomial(f, f->from_int(2), 1, 2));
  MPoly H = P.homogenized(4);
  for (const auto& t : H.terms()) EXPECT_EQ(key_degree(t.key), 4u);
  EXPECT_EQ(H.specialize(Z, one), P);
}

TEST(MPoly, ExponentGuard) {
  EXPECT_THROW(pack_exponents(uint64_t{1} << 21, 0, 0), Error);
}

}  // namespace
}  // namespace rankcurve
