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

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace rankcurve {

inline unsigned resolve_width(unsigned width) {
  if (width > 0) return width;
  unsigned hw = std::thread::hardware_concurrency();
  return std::clamp(hw, 1u, 16u);
}

// Splits [begin, end) into contiguous chunks, one per worker, and folds the
// partial results left to right so the outcome does not depend on timing.
template <class Partial, class Fn>
Partial parallel_fold(uint64_t begin, uint64_t end, unsigned width, Fn fn) {
  width = resolve_width(width);
  const uint64_t total = end > begin ? end - begin : 0;
  if (width == 1 || total < 2 * uint64_t{width}) return fn(begin, end);
  std::vector<Partial> parts(width);
  std::vector<std::exception_ptr> errors(width);
  std::vector<std::thread> pool;
  const uint64_t chunk = (total + width - 1) / width;
  for (unsigned w = 0; w < width; ++w) {
    uint64_t b = begin + std::min(total, chunk * w);
    uint64_t e = begin + std::min(total, chunk * (w + 1));
    pool.emplace_back([&, w, b, e] {
      try {
        parts[w] = fn(b, e);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  Partial out = std::move(parts[0]);
  for (unsigned w = 1; w < width; ++w) out.merge(parts[w]);
  return out;
}

}  // namespace rankcurve
