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

#include <map>
#include <optional>
#include <vector>

#include "rankcurve/mpoly.hpp"
#include "rankcurve/rational.hpp"

namespace rankcurve {

// Local germs are polynomials in the first two variables X, Y around the
// origin. Homogeneous parts are keyed by total degree.
using HomogeneousParts = std::map<uint32_t, MPoly>;

HomogeneousParts shift_expand(const MPoly& P, Felt u, Felt v);
uint32_t multiplicity(const MPoly& P, Felt u, Felt v);
MPoly tangent_cone(const MPoly& P, Felt u, Felt v);

enum class Axis { X, Y };
// Axis::X gives F(X, XY)/X^r, Axis::Y gives F(XY, Y)/Y^r.
MPoly quadratic_transform(const MPoly& P, Axis divided);

// A linear factor X - aY, or Y when vertical.
struct LinearFactor {
  bool vertical = false;
  Felt a;
  uint32_t multiplicity = 0;
};

struct ConeFactorization {
  std::vector<LinearFactor> factors;
  // Degree of the part without roots in the working field.
  uint32_t unsplit_degree = 0;
};

ConeFactorization factor_binary_form(const MPoly& form);
bool is_squarefree_form(const MPoly& form);
bool divides_form(const LinearFactor& L, uint32_t power, const MPoly& form);

enum class ConeClass { Separable, PowerLinearNotDividing, PowerLinearSquareNotDividing, Other };
const char* cone_class_name(ConeClass c);

ConeClass classify_cone(const MPoly& cone, const MPoly& next);
// Lemma bound for the classification; throws UnclassifiedCone for Other.
Rational lemma_bound(ConeClass c, uint32_t m);

struct BranchStep {
  uint32_t multiplicity = 0;
  MPoly cone;
  LinearFactor tangent;
  MPoly transformed;
};

struct BranchAnalysis {
  uint64_t branches = 0;
  int steps = 0;
  bool single_path = true;
  std::vector<BranchStep> chain;
  // Nonzero shifts along the single path, in order.
  std::vector<Felt> shifts;
  ConeClass initial_class = ConeClass::Other;
};

BranchAnalysis count_branches(const MPoly& germ, int max_steps, bool record_chain = false);

}  // namespace rankcurve
