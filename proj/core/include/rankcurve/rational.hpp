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

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace rankcurve {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r), den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Rational ipow(const Rational& base, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

inline BigInt ipow(const BigInt& base, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace rankcurve
