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

#include "rankcurve/theorem.hpp"

#include <algorithm>
#include <numeric>

namespace rankcurve {

namespace {

struct Powers {
  BigInt q;
  Rational operator()(int64_t e) const {
    if (e < 0) return Rational(1) / Rational(ipow(q, static_cast<unsigned>(-e)));
    return Rational(ipow(q, static_cast<unsigned>(e)));
  }
};

bool chain_closes(const std::vector<Rational>& v) {
  for (std::size_t i = 0; i + 2 < v.size(); ++i)
    if (!(v[i] <= v[i + 1])) return false;
  return v[v.size() - 2] < v.back();
}

bool closes_via_middle(const Rational& E1, const Rational& E2, const std::vector<Rational>& mids,
                       const Rational& top, const Rational& T) {
  if (!(E1 <= E2)) return false;
  bool any = std::any_of(mids.begin(), mids.end(), [&](const Rational& r) { return E2 <= r && r <= top; });
  return any && top < T;
}

void two_t(TheoremRow& row) {
  const uint64_t qi = row.q;
  const int64_t t = row.t, k = row.k, s = std::gcd(row.k, row.t);
  const Powers P{qi};
  const Rational Q(qi);
  const Rational top = Rational(2, 9) * P(2 * k);
  const Rational& T = row.threshold;
  const Rational qt1 = (P(t) + 1) * (P(t) + 1) / 4;
  if (k > 3 * t) {
    row.subcase = "k>3t";
    row.bound = (P(2 * (k - t)) - P(4 * t)) * P(t) + P(4 * t) * qt1 + (P(s) + 1) * P(4 * t) / 4;
    if (t == 1) {
      row.passes = Rational(2, 9) - 1 / Q - Rational(4) * (Q + 1) / (9 * P(k)) - 1 / (4 * Q * Q) > 0;
      return;
    }
    Rational E2 = P(2 * k - t) + P(6 * t) / 4 - P(5 * t) / 4 + P(4 * t) / 2;
    Rational E3 = P(2 * k - t) + P(6 * t) / 4;
    Rational E4 = Rational(5, 4) * P(std::max(2 * k - t, 6 * t));
    row.passes = chain_closes({row.bound, E2, E3, E4, top, T});
  } else if (k == 3 * t) {
    row.subcase = "k=3t";
    row.bound = (P(4 * t) - P(2 * t)) * P(t) + P(2 * t) * qt1 + (P(t) + 1) * P(4 * t) / 4;
    if (t == 1) {
      row.passes = Rational(2, 9) - Rational(5) / (4 * Q) - Rational(4) * (Q + 1) / (9 * P(3)) - 1 / (2 * Q * Q) > 0;
      return;
    }
    Rational E2 = Rational(5, 4) * P(5 * t) + P(4 * t) / 2 - P(3 * t) / 2 + P(2 * t) / 4;
    Rational E3 = Rational(5, 4) * P(5 * t) + P(4 * t) / 2;
    row.passes = chain_closes({row.bound, E2, E3, Rational(2, 9) * P(6 * t), T});
  } else {
    row.subcase = "2t<k<3t";
    row.bound = (P(2 * (k - t)) - P(2 * t)) * P(t) + P(2 * t) * qt1 + (P(s) + 1) * P(4 * t) / 4;
    Rational E2 = P(2 * k - t) + P(4 * t + s) / 2;
    std::vector<Rational> mids{Rational(3, 2) * P(2 * k - 1)};
    if (t >= 2) mids.push_back((1 + Q / 2) * P(2 * k - 2));
    if (t >= 3) mids.push_back((1 + Q * Q / 2) * P(2 * k - 3));
    row.passes = closes_via_middle(row.bound, E2, mids, top, T);
  }
}

void half_t(TheoremRow& row) {
  const uint64_t qi = row.q;
  const int64_t t = row.t, k = row.k, s = std::gcd(row.k, row.t), h = t / 2;
  const Powers P{qi};
  const Rational Q(qi);
  const Rational top = Rational(2, 9) * P(2 * k);
  const Rational& T = row.threshold;
  const Rational qh1 = (P(h) + 1) * (P(h) + 1) / 4;
  const Rational pi = (P(s) + 1) * P(4 * t) / 4;
  if (2 * k > 5 * t) {
    row.subcase = "k>5t/2";
    row.bound = (P(2 * k - t) - P(4 * t)) * P(h) + P(4 * t) * qh1 + pi;
    Rational E2 = P(2 * k - h) - P(9 * h) / 2 + P(5 * t) / 2 + P(4 * t) / 2;
    Rational E3 = P(2 * k - h) + P(5 * t) / 2;
    Rational E4 = Rational(3, 2) * P(std::max(2 * k - h, 5 * t));
    row.passes = chain_closes({row.bound, E2, E3, E4, top, T});
  } else if (2 * k == 5 * t) {
    row.subcase = "k=5t/2";
    row.bound = (P(4 * t) - P(3 * t)) * P(h) + P(3 * t) * qh1 + pi;
    row.passes = row.bound < T;
  } else {
    row.subcase = "2t<k<5t/2";
    row.bound = (P(2 * k - t) - P(3 * t)) * P(h) + P(3 * t) * qh1 + pi;
    Rational E2 = P(2 * k - h) + P(4 * t + s) / 2;
    std::vector<Rational> mids{Rational(3, 2) * P(2 * k - 1)};
    if (t >= 4) mids.push_back((1 + Q / 2) * P(2 * k - 2));
    if (t >= 6) mids.push_back((1 + Q * Q / 2) * P(2 * k - 3));
    row.passes = closes_via_middle(row.bound, E2, mids, top, T);
  }
}

}  // namespace

std::vector<uint64_t> prime_powers_in(uint64_t lo, uint64_t hi) {
  std::vector<uint64_t> out;
  for (uint64_t v = std::max<uint64_t>(lo, 2); v <= hi; ++v)
    if (prime_power_base(v)) out.push_back(v);
  return out;
}

TheoremRow theorem_row(GCase gcase, uint64_t q, uint32_t t, uint32_t k) {
  if (q < 3 || !prime_power_base(q)) raise(ErrorCode::InvalidArgument, "q must be a prime power above 2");
  if (t == 0 || k <= 2 * t) raise(ErrorCode::InvalidArgument, "need t >= 1 and k > 2t");
  if (gcase == GCase::HalfT && t % 2) raise(ErrorCode::InvalidArgument, "case t/2 needs t even");
  TheoremRow row;
  row.q = q;
  row.t = t;
  row.k = k;
  const BigInt Q = q;
  const BigInt deg = ipow(Q, k) + ipow(Q, 2 * t) - (Q * Q + Q + 1);
  row.threshold = Rational(2, 9) * Rational(deg * deg);
  if (gcase == GCase::TwoT)
    two_t(row);
  else
    half_t(row);
  row.direct = row.bound < row.threshold;
  return row;
}

TheoremTable theorem_table(GCase gcase, const std::vector<uint64_t>& qs, uint32_t t_max, uint32_t k_max) {
  TheoremTable table;
  table.gcase = gcase;
  for (uint64_t q : qs)
    for (uint32_t t = 1; t <= t_max; ++t) {
      if (gcase == GCase::HalfT && t % 2) continue;
      for (uint32_t k = 2 * t + 1; k <= k_max; ++k) {
        TheoremRow row = theorem_row(gcase, q, t, k);
        if (!row.passes) table.failing.insert({t, q});
        table.rows.push_back(std::move(row));
      }
    }
  return table;
}

uint64_t cafure_matera_threshold(uint64_t dim, uint64_t deg) {
  if (dim == 0 || deg == 0) raise(ErrorCode::InvalidArgument, "dim and deg must be positive");
  uint64_t v = 2 * (dim + 1) * deg * deg + 1;
  while (!prime_power_base(v)) ++v;
  return v;
}

}  // namespace rankcurve
