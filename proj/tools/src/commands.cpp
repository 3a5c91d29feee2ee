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
#include <atomic>
#include <charconv>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "rankcurve/cli.hpp"
#include "rankcurve/theorem.hpp"

namespace rankcurve::cli {

using nlohmann::json;

namespace {

uint32_t parse_u32(std::string_view s, const std::string& what) {
  uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    raise(ErrorCode::SpecParse, "bad " + what + " '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = s.find(sep, pos);
    out.push_back(s.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) raise(ErrorCode::SpecParse, what + " must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) raise(ErrorCode::SpecParse, "unknown key '" + key + "' in " + what);
}

uint32_t get_u32(const json& j, const std::string& key) {
  if (!j.contains(key)) raise(ErrorCode::SpecParse, "missing key '" + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_unsigned() || v.get<uint64_t>() > UINT32_MAX)
    raise(ErrorCode::SpecParse, "key '" + key + "' must be a non-negative integer");
  return v.get<uint32_t>();
}

// Element literals may be written as strings or as bare indices.
std::string get_literal(const json& v, const std::string& what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_unsigned()) return std::to_string(v.get<uint64_t>());
  raise(ErrorCode::SpecParse, what + " must be a string or a non-negative integer");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoFailure, "cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    raise(ErrorCode::SpecParse, "'" + path + "': " + e.what());
  }
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    raise(ErrorCode::SpecParse, e.what());
  }
}

json felt_list(const std::vector<Felt>& v) {
  json a = json::array();
  for (Felt x : v) a.push_back(x.index());
  return a;
}

std::string str(const Rational& r) { return to_string(r); }
std::string str(const BigInt& b) { return b.str(); }

// Resolved code or polynomial input of the enumeration commands.
struct CodeInput {
  FieldPtr field;
  std::vector<std::string> gens;
  std::string poly;
  std::optional<int> t;
};

CodeInput resolve_input(const RunConfig& cfg) {
  CodeInput in;
  std::string field = cfg.field;
  in.gens = cfg.gens;
  in.poly = cfg.poly;
  in.t = cfg.t;
  if (!cfg.spec_path.empty()) {
    if (!cfg.field.empty() || !cfg.gens.empty() || !cfg.poly.empty())
      raise(ErrorCode::SpecParse, "--spec excludes inline --field, --gen and --poly");
    json j = read_json_file(cfg.spec_path);
    check_keys(j, {"field", "gens", "poly", "t"}, "spec");
    if (!j.contains("field") || !j["field"].is_string()) raise(ErrorCode::SpecParse, "spec needs a string 'field'");
    field = j["field"].get<std::string>();
    if (j.contains("gens")) {
      if (!j["gens"].is_array()) raise(ErrorCode::SpecParse, "'gens' must be an array of strings");
      for (const auto& g : j["gens"]) {
        if (!g.is_string()) raise(ErrorCode::SpecParse, "'gens' must be an array of strings");
        in.gens.push_back(g.get<std::string>());
      }
    }
    if (j.contains("poly")) {
      if (!j["poly"].is_string()) raise(ErrorCode::SpecParse, "'poly' must be a string");
      in.poly = j["poly"].get<std::string>();
    }
    if (j.contains("t")) {
      if (!j["t"].is_number_integer()) raise(ErrorCode::SpecParse, "'t' must be an integer");
      if (in.t && *in.t != j["t"].get<int>()) raise(ErrorCode::SpecParse, "--t disagrees with the spec file");
      in.t = j["t"].get<int>();
    }
  }
  if (field.empty()) raise(ErrorCode::SpecParse, "a field spec is required");
  in.field = parse_field_spec(field);
  return in;
}

RankCode build_code(const CodeInput& in) {
  if (in.gens.empty()) raise(ErrorCode::SpecParse, "at least one generator is required");
  std::vector<LinPoly> gens;
  for (const auto& g : in.gens) gens.push_back(LinPoly::parse(in.field, g));
  return RankCode::create(std::move(gens), in.t);
}

LinPoly build_poly(const CodeInput& in) {
  if (in.poly.empty()) raise(ErrorCode::SpecParse, "a polynomial is required");
  return LinPoly::parse(in.field, in.poly);
}

json code_json(const RankCode& code) {
  json gens = json::array();
  for (const auto& g : code.gens()) gens.push_back(g.to_string());
  NormalFormFlags nf = code.normal_form();
  return {{"field", code.ctx()->spec()},
          {"gens", gens},
          {"q", code.q()},
          {"n", code.n()},
          {"r", code.r()},
          {"t", code.t() ? json(*code.t()) : json(nullptr)},
          {"normal_form",
           {{"first_is_monomial", nf.first_is_monomial},
            {"distinct_max_degrees", nf.distinct_max_degrees},
            {"distinct_min_degrees", nf.distinct_min_degrees},
            {"monic", nf.monic},
            {"monomial_degrees", nf.monomial_degrees},
            {"all", nf.all()}}}};
}

std::string fingerprint(const std::string& kind, const RankCode& code) {
  std::ostringstream os;
  os << kind << '|' << code.ctx()->spec() << '|' << (code.t() ? std::to_string(*code.t()) : "-");
  for (const auto& g : code.gens()) os << '|' << g.to_string();
  return os.str();
}

json partial_json(const SpectrumPartial& p) {
  return {{"examined", p.examined},
          {"min_rank", p.min_rank},
          {"witness_index", p.witness_index},
          {"histogram", p.histogram}};
}

json partial_json(const MoorePartial& p) {
  return {{"examined", p.examined}, {"vanishing", p.vanishing}, {"violation_index", p.violation_index}};
}

void partial_from(const json& j, SpectrumPartial& p) {
  p.examined = j.at("examined").get<uint64_t>();
  p.min_rank = j.at("min_rank").get<int>();
  p.witness_index = j.at("witness_index").get<uint64_t>();
  p.histogram = j.at("histogram").get<std::vector<uint64_t>>();
}

void partial_from(const json& j, MoorePartial& p) {
  p.examined = j.at("examined").get<uint64_t>();
  p.vanishing = j.at("vanishing").get<uint64_t>();
  p.violation_index = j.at("violation_index").get<uint64_t>();
}

void write_file_atomic(const std::string& path, const std::string& text) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorCode::IoFailure, "cannot write '" + tmp + "'");
    out << text;
    out.flush();
    if (!out) raise(ErrorCode::IoFailure, "write to '" + tmp + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) raise(ErrorCode::IoFailure, "cannot rename '" + tmp + "': " + ec.message());
}

std::atomic<bool> g_stop{false};

extern "C" void on_stop_signal(int) { g_stop = true; }

// Runs scan over [0, total) in chunks, persisting the merged partial after
// each one. A matching checkpoint file resumes where it stopped.
template <class Partial, class Scan>
Partial chunked_scan(const RunConfig& cfg, const std::string& key, uint64_t total, Scan scan) {
  if (cfg.checkpoint.empty()) return scan(0, total);
  if (cfg.chunk == 0) raise(ErrorCode::SpecParse, "--chunk must be positive");
  Partial acc;
  uint64_t next = 0;
  if (std::filesystem::exists(cfg.checkpoint)) {
    json j = read_json_file(cfg.checkpoint);
    try {
      check_keys(j, {"key", "next", "total", "partial"}, "checkpoint");
      if (j.at("key").get<std::string>() != key || j.at("total").get<uint64_t>() != total)
        raise(ErrorCode::SpecParse, "checkpoint '" + cfg.checkpoint + "' belongs to a different run");
      next = j.at("next").get<uint64_t>();
      partial_from(j.at("partial"), acc);
    } catch (const json::exception& e) {
      raise(ErrorCode::SpecParse, "malformed checkpoint: " + std::string(e.what()));
    }
    if (next > total) raise(ErrorCode::SpecParse, "malformed checkpoint: next exceeds total");
  }
  g_stop = false;
  auto prev_int = std::signal(SIGINT, on_stop_signal);
  auto prev_term = std::signal(SIGTERM, on_stop_signal);
  struct Restore {
    decltype(prev_int) i, t;
    ~Restore() {
      std::signal(SIGINT, i);
      std::signal(SIGTERM, t);
    }
  } restore{prev_int, prev_term};
  uint64_t chunks = 0;
  while (next < total) {
    if ((cfg.max_chunks && chunks == cfg.max_chunks) || g_stop)
      raise(ErrorCode::Interrupted, "stopped at " + std::to_string(next) + " of " + std::to_string(total) +
                                        "; rerun with the same checkpoint to resume");
    uint64_t end = std::min(total, next + cfg.chunk);
    acc.merge(scan(next, end));
    next = end;
    ++chunks;
    json state = {{"key", key}, {"next", next}, {"total", total}, {"partial", partial_json(acc)}};
    write_file_atomic(cfg.checkpoint, state.dump(2) + "\n");
  }
  return acc;
}

RunResult cmd_check_mrd(const RunConfig& cfg) {
  RankCode code = build_code(resolve_input(cfg));
  uint64_t total = projective_count(code);
  if (total > cfg.budget.codewords)
    raise(ErrorCode::BudgetExceeded, std::to_string(total) + " projective codewords exceed the budget of " +
                                         std::to_string(cfg.budget.codewords));
  auto part = chunked_scan<SpectrumPartial>(cfg, fingerprint("spectrum", code), total, [&](uint64_t b, uint64_t e) {
    return scan_spectrum(code, b, e, cfg.width);
  });
  MrdVerdict v = finalize_spectrum(code, part);
  RunResult res;
  res.exit_code = v.is_mrd ? 0 : 1;
  res.report = {{"command", "check-mrd"},
                {"code", code_json(code)},
                {"d", v.d},
                {"singleton_bound", code.n() - code.r() + 1},
                {"is_mrd", v.is_mrd},
                {"examined", v.examined},
                {"projective_count", total},
                {"witness", v.witness_coeffs.empty() ? json(nullptr) : felt_list(v.witness_coeffs)},
                {"rank_histogram", v.histogram}};
  std::ostringstream csv;
  csv << "rank,count\n";
  for (std::size_t i = 0; i < v.histogram.size(); ++i) csv << i << ',' << v.histogram[i] << '\n';
  res.csv = csv.str();
  return res;
}

RunResult cmd_check_scattered(const RunConfig& cfg) {
  CodeInput in = resolve_input(cfg);
  LinPoly f = build_poly(in);
  if (!in.t) raise(ErrorCode::SpecParse, "check-scattered needs --t");
  if (in.field->size() > cfg.budget.field_size)
    raise(ErrorCode::BudgetExceeded, "field size exceeds the budget");
  ScatteredVerdict v = is_scattered(f, *in.t, cfg.width);
  RunResult res;
  res.exit_code = v.scattered ? 0 : 1;
  res.report = {{"command", "check-scattered"},
                {"field", in.field->spec()},
                {"poly", f.to_string()},
                {"t", *in.t},
                {"scattered", v.scattered},
                {"examined", v.examined},
                {"witness", v.witness ? json(v.witness->index()) : json(nullptr)},
                {"witness_kernel_dim", v.witness_kernel_dim}};
  return res;
}

RunResult cmd_check_moore(const RunConfig& cfg) {
  RankCode code = build_code(resolve_input(cfg));
  uint64_t total = moore_tuple_count(code);
  if (total > cfg.budget.tuples)
    raise(ErrorCode::BudgetExceeded,
          std::to_string(total) + " tuples exceed the budget of " + std::to_string(cfg.budget.tuples));
  auto part = chunked_scan<MoorePartial>(cfg, fingerprint("moore", code), total, [&](uint64_t b, uint64_t e) {
    return scan_moore(code, b, e, cfg.width);
  });
  MooreVerdict v = finalize_moore(code, part);
  RunResult res;
  res.exit_code = v.is_moore ? 0 : 1;
  res.report = {{"command", "check-moore"},
                {"code", code_json(code)},
                {"is_moore", v.is_moore},
                {"examined", v.examined},
                {"tuple_count", total},
                {"vanishing", v.vanishing},
                {"witness", v.witness.empty() ? json(nullptr) : felt_list(v.witness)}};
  return res;
}

RunResult cmd_probe(const RunConfig& cfg) {
  CodeInput in = resolve_input(cfg);
  if (cfg.ms.empty()) raise(ErrorCode::SpecParse, "--m needs at least one extension degree");
  std::vector<ProbeEntry> entries;
  json target;
  if (!in.poly.empty()) {
    if (!in.gens.empty()) raise(ErrorCode::SpecParse, "give either --poly or --gen, not both");
    if (!in.t) raise(ErrorCode::SpecParse, "probing a polynomial needs --t");
    LinPoly f = build_poly(in);
    entries = probe_exceptional(f, *in.t, cfg.ms, cfg.budget, cfg.width);
    target = {{"kind", "polynomial"}, {"field", in.field->spec()}, {"poly", f.to_string()}, {"t", *in.t}};
  } else {
    RankCode code = build_code(in);
    entries = probe_exceptional(code, cfg.ms, cfg.budget, cfg.width);
    target = {{"kind", "code"}, {"code", code_json(code)}};
  }
  json list = json::array();
  bool all = true;
  for (const auto& e : entries) {
    all = all && e.verdict;
    list.push_back({{"m", e.m},
                    {"verdict", e.verdict},
                    {"witness", e.witness ? json(e.witness->index()) : json(nullptr)},
                    {"min_distance", e.min_distance}});
  }
  RunResult res;
  res.exit_code = all ? 0 : 1;
  res.report = {{"command", "probe-exceptional"}, {"target", target}, {"entries", list}, {"all_hold", all}};
  return res;
}

RunResult cmd_families(const RunConfig& cfg) {
  if (cfg.field.empty()) raise(ErrorCode::SpecParse, "families needs --field");
  FieldPtr f = parse_field_spec(cfg.field);
  RunResult res;
  json report = {{"command", "families"}, {"family", cfg.family}, {"field", f->spec()}};
  auto mrd_check = [&](const RankCode& code) {
    MrdVerdict v = min_distance(code, cfg.budget, cfg.width);
    report["code"] = code_json(code);
    report["d"] = v.d;
    report["singleton_bound"] = code.n() - code.r() + 1;
    report["examined"] = v.examined;
    report["verdict"] = v.is_mrd;
    report["property"] = "mrd";
    res.exit_code = v.is_mrd ? 0 : 1;
  };
  auto scattered_check = [&](const LinPoly& p, int index) {
    ScatteredVerdict v = is_scattered(p, index, cfg.width);
    report["poly"] = p.to_string();
    report["index"] = index;
    report["examined"] = v.examined;
    report["witness"] = v.witness ? json(v.witness->index()) : json(nullptr);
    report["verdict"] = v.scattered;
    report["property"] = "scattered";
    res.exit_code = v.scattered ? 0 : 1;
  };
  if (cfg.family == "G") {
    report["params"] = {{"r", cfg.r}, {"s", cfg.s}};
    mrd_check(make_gabidulin(f, cfg.r, cfg.s));
  } else if (cfg.family == "T") {
    if (cfg.delta.empty()) raise(ErrorCode::SpecParse, "family T needs --delta");
    Felt d = f->parse(cfg.delta);
    report["params"] = {{"r", cfg.r}, {"s", cfg.s}, {"delta", d.index()}};
    mrd_check(make_twisted(f, cfg.r, cfg.s, d));
  } else if (cfg.family == "Ps") {
    if (!cfg.t) raise(ErrorCode::SpecParse, "family Ps needs --t");
    if (std::gcd(*cfg.t, static_cast<int>(f->N())) != 1) raise(ErrorCode::GcdViolation, "gcd(t, n) must be 1");
    report["params"] = {{"t", *cfg.t}};
    scattered_check(LinPoly::monomial(f, *cfg.t), 0);
  } else if (cfg.family == "LP") {
    if (!cfg.t) raise(ErrorCode::SpecParse, "family LP needs --t");
    if (cfg.delta.empty()) raise(ErrorCode::SpecParse, "family LP needs --delta");
    Felt d = f->parse(cfg.delta);
    report["params"] = {{"t", *cfg.t}, {"delta", d.index()}};
    scattered_check(make_lp(f, *cfg.t, d), *cfg.t);
  } else {
    raise(ErrorCode::SpecParse, "unknown family '" + cfg.family + "' (expected G, T, Ps or LP)");
  }
  res.report = std::move(report);
  return res;
}

const char* kind_name(PointKind k) {
  switch (k) {
    case PointKind::Affine: return "affine";
    case PointKind::Slope: return "infinity_slope";
    case PointKind::Vertical: return "infinity_vertical";
  }
  return "affine";
}

json singularity_json(const CurveInstance& inst, const SingularityReport& r) {
  json j = {{"label", point_label(r, *inst.work)},
            {"kind", kind_name(r.kind)},
            {"multiplicity", r.multiplicity},
            {"cone_class", r.cone_computed ? json(cone_class_name(r.cone_class)) : json(nullptr)},
            {"ipmax", str(r.ipmax)},
            {"ipmax_rule", r.ipmax_rule},
            {"branches", r.branches ? json(*r.branches) : json(nullptr)},
            {"in_omega", r.in_omega},
            {"in_pi", r.in_pi},
            {"in_theta", r.in_theta},
            {"in_sigma", r.in_sigma},
            {"closed_form_match", r.closed_form_match ? json(*r.closed_form_match) : json(nullptr)},
            {"shifts", felt_list(r.shifts)}};
  j["x"] = r.kind == PointKind::Vertical ? json(nullptr) : json(r.x.index());
  j["y"] = r.kind == PointKind::Affine ? json(r.y.index()) : json(nullptr);
  j["beta"] = nullptr;
  if (r.kind == PointKind::Slope && !r.in_pi && r.branches) {
    BetaCheck b = beta_check(inst, r.x, r.shifts);
    if (b.available)
      j["beta"] = {{"beta1", b.beta1.index()},
                   {"beta2", b.beta2.index()},
                   {"beta1_matches", b.beta1_matches},
                   {"beta2_matches", b.beta2_matches},
                   {"beta2_second_form_matches", b.beta2_second_form_matches}};
  }
  return j;
}

RunResult cmd_curve_analyze(const RunConfig& cfg) {
  json spec_json;
  if (!cfg.instance_path.empty() && !cfg.instance_json.empty())
    raise(ErrorCode::SpecParse, "give either --instance or --instance-json");
  if (!cfg.instance_path.empty())
    spec_json = read_json_file(cfg.instance_path);
  else if (!cfg.instance_json.empty())
    spec_json = parse_json_text(cfg.instance_json);
  else
    raise(ErrorCode::SpecParse, "curve-analyze needs --instance or --instance-json");
  InstanceSpec spec = parse_instance(spec_json);
  CurveInstance inst = CurveInstance::create(spec);
  const FieldCtx& w = *inst.work;

  MPoly C = curve_C(inst);
  CurveA A = curve_A(inst, C);
  InfinityCheck ic = infinity_points(inst, C);
  MPoly H = curve_C_homogeneous(inst, C);
  InfinityOptions iopt;
  iopt.max_steps = cfg.max_steps;
  iopt.branches = cfg.branches;
  iopt.width = cfg.width;
  auto inf = infinity_singularities(inst, H, iopt);
  AffineCounts counts = affine_counts(inst);
  AffineOptions aopt;
  aopt.detail_limit = cfg.detail_limit;
  aopt.width = cfg.width;
  AffineResult aff = affine_singularities(inst, aopt);
  CriterionVerdict cv = criterion_check(inst, inf, counts);

  json g = json::array();
  for (const auto& [i, lit] : spec.G_coeffs) g.push_back({i, inst.small->parse(lit).index()});
  json sing = json::array();
  for (const auto& r : inf) sing.push_back(singularity_json(inst, r));
  for (const auto& r : aff.points) sing.push_back(singularity_json(inst, r));

  RunResult res;
  res.exit_code = cv.holds ? 0 : 1;
  res.report = {
      {"command", "curve-analyze"},
      {"instance",
       {{"p", inst.p},
        {"e", inst.e},
        {"n", inst.n},
        {"t", inst.t},
        {"k", inst.k},
        {"case", gcase_name(inst.gcase)},
        {"delta", inst.small->parse(spec.delta).index()},
        {"G_coeffs", g},
        {"field", inst.small->spec()},
        {"working_field", w.spec()},
        {"q", inst.q},
        {"N", inst.N}}},
      {"lambda",
       {{"value", inst.lambda_small.index()},
        {"working_value", inst.lambda.index()},
        {"chosen", !spec.lambda.has_value()},
        {"xi_set", "F_{q^{k-2t}} minus F_{q^{gcd(k,t)}}"},
        {"xi_count", lambda_xi_set(inst).size()}}},
      {"degrees",
       {{"C", C.total_degree()},
        {"A", A.A.total_degree()},
        {"A_formula", cv.degree_A},
        {"A_formula_nominal", cv.degree_A_nominal},
        {"A_divisions", A.divisions}}},
      {"infinity", {{"closed_form_matches", ic.matches}, {"slopes", felt_list(ic.slopes)}}},
      {"affine",
       {{"g_qdeg", counts.g_qdeg},
        {"gcrd_qdeg", counts.gcrd_qdeg},
        {"theta_closure", str(counts.theta_closure)},
        {"sigma_closure", str(counts.sigma_closure)},
        {"theta_bound", str(counts.theta_bound)},
        {"sigma_bound", str(counts.sigma_bound)},
        {"g_roots_rational", counts.g_roots_rational},
        {"sigma_roots_rational", counts.sigma_roots_rational},
        {"rational_pairs", aff.rational_pairs},
        {"detailed", aff.detailed}}},
      {"singularities", sing},
      {"criterion",
       {{"total", str(cv.total)},
        {"threshold", str(cv.threshold)},
        {"threshold_nominal", str(cv.threshold_nominal)},
        {"holds", cv.holds},
        {"contributions",
         {{"omega_minus_pi", str(cv.omega_minus_pi)},
          {"pi", str(cv.pi)},
          {"theta_minus_sigma", str(cv.theta_minus_sigma)},
          {"sigma", str(cv.sigma)}}},
        {"counts",
         {{"omega_minus_pi", str(cv.count_omega_minus_pi)},
          {"pi", str(cv.count_pi)},
          {"theta_minus_sigma", str(cv.count_theta_minus_sigma)},
          {"sigma", str(cv.count_sigma)}}}}}};
  return res;
}

RunResult cmd_criterion_table(const RunConfig& cfg) {
  GCase gc = parse_gcase(cfg.gcase);
  if (cfg.q_min > cfg.q_max) raise(ErrorCode::SpecParse, "--q-min exceeds --q-max");
  auto qs = prime_powers_in(cfg.q_min, cfg.q_max);
  TheoremTable tab = theorem_table(gc, qs, cfg.t_max, cfg.k_max);
  json rows = json::array();
  std::ostringstream csv;
  csv << "case,q,t,k,subcase,bound,threshold,direct,passes\n";
  for (const auto& r : tab.rows) {
    rows.push_back({{"q", r.q},
                    {"t", r.t},
                    {"k", r.k},
                    {"subcase", r.subcase},
                    {"bound", str(r.bound)},
                    {"threshold", str(r.threshold)},
                    {"direct", r.direct},
                    {"passes", r.passes}});
    csv << gcase_name(gc) << ',' << r.q << ',' << r.t << ',' << r.k << ',' << r.subcase << ',' << str(r.bound)
        << ',' << str(r.threshold) << ',' << (r.direct ? "true" : "false") << ','
        << (r.passes ? "true" : "false") << '\n';
  }
  json failing = json::array();
  for (const auto& [t, q] : tab.failing) failing.push_back({t, q});
  RunResult res;
  res.exit_code = 0;
  res.report = {{"command", "criterion-table"},
                {"case", gcase_name(gc)},
                {"q_values", qs},
                {"t_max", cfg.t_max},
                {"k_max", cfg.k_max},
                {"rows", rows},
                {"failing", failing}};
  res.csv = csv.str();
  return res;
}

RunResult cmd_cm_threshold(const RunConfig& cfg) {
  if (cfg.dim == 0 || cfg.deg == 0) raise(ErrorCode::SpecParse, "cm-threshold needs positive --dim and --deg");
  RunResult res;
  res.exit_code = 0;
  res.report = {{"command", "cm-threshold"},
                {"dim", cfg.dim},
                {"deg", cfg.deg},
                {"bound", str(BigInt(2) * (cfg.dim + 1) * BigInt(cfg.deg) * cfg.deg)},
                {"threshold", cafure_matera_threshold(cfg.dim, cfg.deg)}};
  return res;
}

}  // namespace

FieldPtr parse_field_spec(const std::string& spec) {
  std::string_view head(spec), tail;
  std::optional<std::vector<uint32_t>> modulus;
  if (auto colon = spec.find(':'); colon != std::string::npos) {
    head = std::string_view(spec).substr(0, colon);
    tail = std::string_view(spec).substr(colon + 1);
    constexpr std::string_view key = "modulus=";
    if (tail.substr(0, key.size()) != key) raise(ErrorCode::SpecParse, "bad field option in '" + spec + "'");
    modulus.emplace();
    for (auto c : split(tail.substr(key.size()), ',')) modulus->push_back(parse_u32(c, "modulus coefficient"));
  }
  auto parts = split(head, '^');
  if (parts.size() != 3) raise(ErrorCode::SpecParse, "field spec '" + spec + "' is not p^e^N");
  return FieldCtx::create(parse_u32(parts[0], "p"), parse_u32(parts[1], "e"), parse_u32(parts[2], "N"),
                          std::move(modulus));
}

InstanceSpec parse_instance(const json& j) {
  check_keys(j, {"p", "e", "n", "t", "k", "case", "delta", "G_coeffs", "lambda"}, "instance");
  InstanceSpec s;
  s.p = get_u32(j, "p");
  s.e = j.contains("e") ? get_u32(j, "e") : 1;
  s.n = get_u32(j, "n");
  s.t = get_u32(j, "t");
  s.k = get_u32(j, "k");
  if (!j.contains("case") || !j["case"].is_string()) raise(ErrorCode::SpecParse, "instance needs a string 'case'");
  s.gcase = parse_gcase(j["case"].get<std::string>());
  if (!j.contains("delta")) raise(ErrorCode::SpecParse, "missing key 'delta'");
  s.delta = get_literal(j["delta"], "'delta'");
  if (!j.contains("G_coeffs") || !j["G_coeffs"].is_array())
    raise(ErrorCode::SpecParse, "'G_coeffs' must be an array of [exponent, coefficient] pairs");
  for (const auto& pair : j["G_coeffs"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() || pair[0].get<uint64_t>() > UINT32_MAX)
      raise(ErrorCode::SpecParse, "'G_coeffs' must be an array of [exponent, coefficient] pairs");
    s.G_coeffs.emplace_back(pair[0].get<uint32_t>(), get_literal(pair[1], "a G coefficient"));
  }
  if (j.contains("lambda") && !j["lambda"].is_null()) s.lambda = get_literal(j["lambda"], "'lambda'");
  return s;
}

RunResult run(const RunConfig& cfg) {
  bool csv_ok = cfg.subcommand == "check-mrd" || cfg.subcommand == "criterion-table";
  if (cfg.format == Format::Csv && !csv_ok)
    raise(ErrorCode::SpecParse, "CSV output is available for check-mrd and criterion-table only");
  if (cfg.budget.codewords == 0 || cfg.budget.tuples == 0 || cfg.budget.field_size == 0)
    raise(ErrorCode::SpecParse, "budgets must be positive");
  if (cfg.subcommand == "check-mrd") return cmd_check_mrd(cfg);
  if (cfg.subcommand == "check-scattered") return cmd_check_scattered(cfg);
  if (cfg.subcommand == "check-moore") return cmd_check_moore(cfg);
  if (cfg.subcommand == "probe-exceptional") return cmd_probe(cfg);
  if (cfg.subcommand == "families") return cmd_families(cfg);
  if (cfg.subcommand == "curve-analyze") return cmd_curve_analyze(cfg);
  if (cfg.subcommand == "criterion-table") return cmd_criterion_table(cfg);
  if (cfg.subcommand == "cm-threshold") return cmd_cm_threshold(cfg);
  raise(ErrorCode::SpecParse, "unknown subcommand '" + cfg.subcommand + "'");
}

std::string render(const RunResult& result, Format format) {
  if (format == Format::Csv) return result.csv;
  return result.report.dump(2) + "\n";
}

void emit_report(const RunResult& result, Format format, const std::string& path, std::ostream& out) {
  std::string text = render(result, format);
  if (path.empty() || path == "-") {
    out << text;
    out.flush();
    if (!out) raise(ErrorCode::IoFailure, "writing the report failed");
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) raise(ErrorCode::IoFailure, "cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) raise(ErrorCode::IoFailure, "writing '" + path + "' failed");
}

}  // namespace rankcurve::cli
