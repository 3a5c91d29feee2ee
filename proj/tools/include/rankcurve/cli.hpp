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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rankcurve/codes.hpp"
#include "rankcurve/curves.hpp"

namespace rankcurve::cli {

enum class Format { Json, Csv };

struct RunConfig {
  std::string subcommand;

  // Inline field/code/polynomial specs, or a JSON spec file.
  std::string field;
  std::vector<std::string> gens;
  std::string poly;
  std::optional<int> t;
  std::string spec_path;

  // probe-exceptional
  std::vector<uint32_t> ms{1, 2};

  // families
  std::string family;
  int r = 0, s = 1;
  std::string delta;

  // curve-analyze
  std::string instance_path;
  std::string instance_json;
  uint64_t detail_limit = 4096;
  int max_steps = 0;
  bool branches = true;

  // criterion-table
  std::string gcase = "2t";
  uint64_t q_min = 3, q_max = 13;
  uint32_t t_max = 6, k_max = 30;

  // cm-threshold
  uint64_t dim = 0, deg = 0;

  Budget budget;
  Format format = Format::Json;
  std::string output;
  unsigned width = 0;

  std::string checkpoint;
  uint64_t chunk = 1 << 16;
  // Stop after this many chunks when checkpointing; 0 runs to completion.
  uint64_t max_chunks = 0;
};

struct RunResult {
  int exit_code = 0;
  nlohmann::json report;
  // Set for CSV output.
  std::string csv;
};

// "p^e^N[:modulus=c0,c1,...,1]".
FieldPtr parse_field_spec(const std::string& spec);
InstanceSpec parse_instance(const nlohmann::json& j);

RunResult run(const RunConfig& config);

// Serialized artifact: sorted keys, two-space indent, trailing newline.
std::string render(const RunResult& result, Format format);
void emit_report(const RunResult& result, Format format, const std::string& path, std::ostream& out);

// Full command-line entry point. Returns the process exit status.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace rankcurve::cli
