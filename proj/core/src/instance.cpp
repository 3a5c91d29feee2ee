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

#include <numeric>
#include <set>

#include "rankcurve/curves.hpp"

namespace rankcurve {

const char* gcase_name(GCase c) { return c == GCase::TwoT ? "2t" : "t/2"; }

GCase parse_gcase(const std::string& s) {
  if (s == "2t") return GCase::TwoT;
  if (s == "t/2") return GCase::HalfT;
  raise(ErrorCode::SpecParse, "case must be \"2t\" or \"t/2\", got \"" + s + "\"");
}

Felt lambda_condition(const CurveInstance& inst, Felt xi, Felt lambda) {
  const uint32_t t = inst.t, k = inst.k;
  Felt a = (xi - xi.frob(t)).frob(k + t);
  Felt b = (xi.frob(k - t) - xi).frob(t);
  Felt Fl = inst.F(lambda);
  Felt c = (xi.frob(k) - xi).frob(t);
  Felt lt = lambda.frob(t);
  return a * b * Fl.frob(t) * Fl + inst.delta * c.frob(t) * c * lt.frob(t) * lt;
}

std::vector<Felt> lambda_xi_set(const CurveInstance& inst) {
  const uint32_t d = inst.k - 2 * inst.t, s = std::gcd(inst.k, inst.t);
  std::vector<Felt> out;
  for (Felt xi : inst.work->subfield(d))
    if (!inst.work->in_subfield(xi, s)) out.push_back(xi);
  return out;
}

namespace {

bool lambda_valid(const CurveInstance& inst, Felt lambda_small, const std::vector<Felt>& xis) {
  if (inst.small->in_subfield(lambda_small, 1)) return false;
  Felt l = (*inst.embed)(lambda_small);
  if (inst.F(l).is_zero() || inst.G(l).is_zero()) return false;
  for (Felt xi : xis)
    if (lambda_condition(inst, xi, l).is_zero()) return false;
  return true;
}

}  // namespace

Felt choose_lambda(const CurveInstance& inst) {
  auto xis = lambda_xi_set(inst);
  for (uint64_t i = 0; i < inst.small->size(); ++i) {
    Felt cand = inst.small->element(i);
    if (lambda_valid(inst, cand, xis)) return cand;
  }
  raise(ErrorCode::NoLambdaFound, "no admissible lambda in F_{q^n}");
}

CurveInstance CurveInstance::create(const InstanceSpec& spec) {
  const uint32_t t = spec.t, k = spec.k, n = spec.n;
  if (!(t > 0 && 2 * t < k && k < n))
    raise(ErrorCode::InstanceInvalid, "need 0 < 2t < k < n");
  if (n < k + t + 1) raise(ErrorCode::InstanceInvalid, "need n >= k + t + 1");
  if (spec.gcase == GCase::HalfT && t % 2 != 0) raise(ErrorCode::InstanceInvalid, "case t/2 needs t even");
  if (spec.e == 0) raise(ErrorCode::InstanceInvalid, "e must be positive");
  FieldPtr small = FieldCtx::create(spec.p, spec.e, n);
  const uint32_t N = std::lcm(n, k - 2 * t);
  FieldPtr work = FieldCtx::create(spec.p, spec.e, N);

  CurveInstance inst(small, work);
  inst.p = spec.p;
  inst.e = spec.e;
  inst.n = n;
  inst.t = t;
  inst.k = k;
  inst.N = N;
  inst.q = small->q();
  inst.gcase = spec.gcase;
  inst.embed = std::make_shared<const Embedding>(small, work);
  const Embedding& emb = *inst.embed;

  Felt delta_small = small->parse(spec.delta);
  if (small->norm_rel(delta_small, 1).is_one())
    raise(ErrorCode::NormConditionViolation, "delta has norm 1 over F_q");
  inst.delta = emb(delta_small);

  std::set<uint32_t> seen;
  std::vector<std::pair<int64_t, Felt>> terms;
  for (const auto& [i, lit] : spec.G_coeffs) {
    if (i >= n) raise(ErrorCode::InstanceInvalid, "G exponent index must be below n");
    if (!seen.insert(i).second) raise(ErrorCode::InstanceInvalid, "repeated G exponent index");
    Felt c = small->parse(lit);
    if (c.is_zero()) continue;
    terms.emplace_back(i, emb(c));
  }
  inst.G = LinPoly::from_terms(work, terms);
  if (inst.G.is_zero()) raise(ErrorCode::InstanceInvalid, "G is zero");
  const uint32_t low = spec.gcase == GCase::TwoT ? 2 * t : t / 2;
  if (static_cast<uint32_t>(inst.G.qdeg()) != k) raise(ErrorCode::InstanceInvalid, "deg_q G must equal k");
  if (static_cast<uint32_t>(inst.G.min_qdeg()) != low)
    raise(ErrorCode::InstanceInvalid, std::string("min deg_q G must be ") + (spec.gcase == GCase::TwoT ? "2t" : "t/2"));
  if (!inst.G.coeff(low).is_one()) raise(ErrorCode::InstanceInvalid, "lowest coefficient of G must be 1");
  inst.C = inst.G.coeff(k);

  inst.T = LinPoly::monomial(work, t);
  inst.F = LinPoly::monomial(work, 0) + LinPoly::monomial(work, 2 * t, inst.delta);

  if (spec.lambda) {
    Felt l = small->parse(*spec.lambda);
    if (!lambda_valid(inst, l, lambda_xi_set(inst)))
      raise(ErrorCode::InstanceInvalid, "supplied lambda violates the selection conditions");
    inst.lambda_small = l;
  } else {
    inst.lambda_small = choose_lambda(inst);
  }
  inst.lambda = emb(inst.lambda_small);
  return inst;
}

}  // namespace rankcurve
