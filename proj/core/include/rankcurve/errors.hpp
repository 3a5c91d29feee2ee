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

#include <stdexcept>
#include <string>

namespace rankcurve {

enum class ErrorCode : int {
  NotPrime = 10,
  ReducibleModulus = 11,
  DegreeMismatch = 12,
  DegreeNotDividing = 13,
  ZeroPolynomial = 14,
  ContextMismatch = 15,
  InvalidArgument = 16,
  DependentGenerators = 20,
  RankTooLarge = 21,
  BudgetExceeded = 22,
  GcdViolation = 23,
  NormConditionViolation = 24,
  InstanceInvalid = 30,
  NoLambdaFound = 31,
  NonExactDivision = 32,
  ClosedFormMismatch = 33,
  PointNotOnCurve = 34,
  UnclassifiedCone = 35,
  AxisIsTangent = 36,
  ChainBudgetExceeded = 37,
  UnresolvedSingularity = 38,
  ExponentOverflow = 39,
  SpecParse = 40,
  IoFailure = 41,
  Interrupted = 42,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  const char* name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace rankcurve
