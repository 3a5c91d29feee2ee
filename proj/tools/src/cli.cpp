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

#include <iostream>

#include <CLI11.hpp>

#include "rankcurve/cli.hpp"

namespace rankcurve::cli {

namespace {

void print_error(std::ostream& err, const std::string& name, int code, const std::string& message) {
  nlohmann::json j = {{"error", name}, {"code", code}, {"message", message}};
  err << j.dump() << "\n";
}

struct Common {
  std::string format = "json";
  std::optional<uint64_t> budget, budget_field;
};

void add_common(CLI::App* sub, RunConfig& cfg, Common& c) {
  sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("-o,--output", cfg.output, "Write the report to this file instead of stdout");
  sub->add_option("--width", cfg.width, "Worker threads (0 = hardware concurrency)");
  sub->add_option("--budget", c.budget, "Enumeration budget for codewords and tuples")
      ->check(CLI::PositiveNumber);
  sub->add_option("--budget-field", c.budget_field, "Largest field size an extension may reach")
      ->check(CLI::PositiveNumber);
}

void add_code_options(CLI::App* sub, RunConfig& cfg, bool poly, bool gens) {
  sub->add_option("--field", cfg.field, "Field spec p^e^N[:modulus=c0,...,1]");
  if (gens) sub->add_option("--gen", cfg.gens, "Generator, e.g. 'x' or '1*x^q^2; g^3*x^q^0'")->take_all();
  if (poly) sub->add_option("--poly", cfg.poly, "Linearized polynomial");
  sub->add_option("--t", cfg.t, "Index t");
  sub->add_option("--spec", cfg.spec_path, "JSON spec file with keys field, gens, poly, t");
}

void add_checkpoint_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--checkpoint", cfg.checkpoint, "Resumable progress file");
  sub->add_option("--chunk", cfg.chunk, "Items per checkpointed chunk")->check(CLI::PositiveNumber);
  sub->add_option("--max-chunks", cfg.max_chunks, "Stop after this many chunks (0 = run to completion)");
}

}  // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank-metric code checks and curve criterion analysis", "rankcurve"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rankcurve 0.1.0");

  RunConfig cfg;
  Common common;
  std::vector<CLI::App*> subs;

  auto* mrd = app.add_subcommand("check-mrd", "Minimum rank distance by full projective enumeration");
  add_code_options(mrd, cfg, false, true);
  add_checkpoint_options(mrd, cfg);
  subs.push_back(mrd);

  auto* sc = app.add_subcommand("check-scattered", "Scatteredness of a linearized polynomial");
  add_code_options(sc, cfg, true, false);
  subs.push_back(sc);

  auto* moore = app.add_subcommand("check-moore", "Moore-set test over all point tuples");
  add_code_options(moore, cfg, false, true);
  add_checkpoint_options(moore, cfg);
  subs.push_back(moore);

  auto* probe = app.add_subcommand("probe-exceptional", "Repeat a check over field extensions");
  add_code_options(probe, cfg, true, true);
  probe->add_option("--m", cfg.ms, "Extension degrees")->delimiter(',');
  subs.push_back(probe);

  auto* fam = app.add_subcommand("families", "Construct a known family and verify it");
  fam->add_option("--family", cfg.family, "G, T, Ps or LP")->required();
  fam->add_option("--field", cfg.field, "Field spec p^e^N[:modulus=c0,...,1]")->required();
  fam->add_option("--r", cfg.r, "Dimension r (G, T)");
  fam->add_option("--s", cfg.s, "Frobenius step s (G, T)");
  fam->add_option("--delta", cfg.delta, "Twist or LP coefficient");
  fam->add_option("--t", cfg.t, "Index t (Ps, LP)");
  subs.push_back(fam);

  auto* ca = app.add_subcommand("curve-analyze", "Singularities and the 2/9 criterion for one instance");
  ca->add_option("--instance", cfg.instance_path, "Instance JSON file");
  ca->add_option("--instance-json", cfg.instance_json, "Inline instance JSON");
  ca->add_option("--detail-limit", cfg.detail_limit, "Largest number of affine points analysed one by one");
  ca->add_option("--max-steps", cfg.max_steps, "Blowup step budget per branch chain (0 = default)")
      ->check(CLI::NonNegativeNumber);
  bool no_branches = false;
  ca->add_flag("--no-branches", no_branches, "Skip branch counting at infinity");
  subs.push_back(ca);

  auto* ct = app.add_subcommand("criterion-table", "Case analysis of the criterion over a parameter grid");
  ct->add_option("--case", cfg.gcase, "2t or t/2")->check(CLI::IsMember({"2t", "t/2"}));
  ct->add_option("--q-min", cfg.q_min, "Smallest q")->check(CLI::PositiveNumber);
  ct->add_option("--q-max", cfg.q_max, "Largest q")->check(CLI::PositiveNumber);
  ct->add_option("--t-max", cfg.t_max, "Largest t")->check(CLI::PositiveNumber);
  ct->add_option("--k-max", cfg.k_max, "Largest k")->check(CLI::PositiveNumber);
  subs.push_back(ct);

  auto* cm = app.add_subcommand("cm-threshold", "Smallest q with q > 2(dim + 1) deg^2");
  cm->add_option("--dim", cfg.dim, "Dimension")->required()->check(CLI::PositiveNumber);
  cm->add_option("--deg", cfg.deg, "Degree")->required()->check(CLI::PositiveNumber);
  subs.push_back(cm);

  for (auto* s : subs) add_common(s, cfg, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    print_error(err, error_name(ErrorCode::SpecParse), static_cast<int>(ErrorCode::SpecParse), e.what());
    return 2;
  }

  for (auto* s : subs)
    if (s->parsed()) cfg.subcommand = s->get_name();
  cfg.branches = !no_branches;
  cfg.format = common.format == "csv" ? Format::Csv : Format::Json;

  try {
    cfg.budget = Budget::from_env();
    if (common.budget) cfg.budget.codewords = cfg.budget.tuples = *common.budget;
    if (common.budget_field) cfg.budget.field_size = *common.budget_field;
    RunResult res = run(cfg);
    emit_report(res, cfg.format, cfg.output, out);
    return res.exit_code;
  } catch (const Error& e) {
    print_error(err, e.name(), static_cast<int>(e.code()), e.what());
  } catch (const std::exception& e) {
    print_error(err, "Internal", 1, e.what());
  }
  return 2;
}

}  // namespace rankcurve::cli
