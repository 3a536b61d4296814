// coorbit: command-line front end.
#include <cstdio>
#include <iostream>
#include <limits>
#include <string>

#include "CLI11.hpp"
#include "coorbit/cover.hpp"
#include "coorbit/equiv.hpp"
#include "coorbit/growth.hpp"
#include "coorbit/io.hpp"

using namespace coorbit;
using nlohmann::json;

namespace {

constexpr int kDecided = 0;
constexpr int kFailed = 1;
constexpr int kInconclusive = 2;

double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw ConfigurationError("exponent must be a number >= 1 or 'inf': " + s);
  return v;
}

void emit(const RunConfig& cfg, const std::string& name, const std::string& text, bool to_stdout) {
  if (!cfg.out.empty()) write_text(std::filesystem::path(cfg.out) / name, text);
  if (to_stdout) std::cout << text;
}

CoverParams cover_params(const RunConfig& cfg, int window) {
  CoverParams p;
  p.window = window;
  p.budget = cfg.budget;
  p.coverage_samples = cfg.coverage_samples;
  p.seed = cfg.seed;
  p.self_stats = false;
  p.word_cap = 100000;
  return p;
}

json self_json(const SelfStats& s) {
  return {{"sourceRadius", s.source_radius}, {"maxCount", s.max_count}, {"maxTransitionNorm", s.max_transition_norm}};
}

int cmd_analyze(const std::string& path, const RunConfig& cfg) {
  cfg.validate();
  const auto spec = parse_group(load_json(path));
  json rep{{"group", group_to_json(spec)}};
  const auto adm = admissibility_precheck(spec);
  json a{{"admissible", adm.admissible}, {"detail", adm.detail}, {"uncheckedAssumptions", adm.unchecked_assumptions}};
  if (adm.witness) a["witness"] = {adm.witness->real(), adm.witness->imag()};
  rep["admissibility"] = a;
  if (!adm.admissible) {
    rep["status"] = "NotAdmissible";
    rep["config"] = to_json(cfg);
    emit(cfg, "analysis.json", dump(rep), true);
    return kDecided;
  }
  rep["status"] = "Analyzed";
  const int k = cfg.window;
  const auto cover = build_induced_cover(spec, cover_params(cfg, 2 * k));
  if (spec.dim >= 2 && cover.core.is_shell()) {
    const auto pr = properness_check(spec, std::get<Shell>(cover.core.geom), k, cover.params.step, cfg.budget);
    rep["properness"] = {{"bounded", pr.bounded}, {"maxNorm", pr.max_norm}, {"members", pr.members.size()}, {"growth", pr.growth}};
  } else {
    rep["properness"] = {{"skipped", "one-dimensional base sets are intervals"}};
  }
  rep["cover"] = {{"window", cover.window},
                  {"elements", cover.size()},
                  {"shellRatio", cover.shell_ratio},
                  {"rMin", cover.r_min},
                  {"rMax", cover.r_max},
                  {"minBestMargin", cover.min_best_margin}};
  const auto s1 = self_stats(cover, k / 2, k, cfg.budget);
  const auto s2 = self_stats(cover, k, 2 * k, cfg.budget);
  const bool stable = s1.max_count == s2.max_count &&
                      std::abs(s1.max_transition_norm - s2.max_transition_norm) <=
                          1e-9 * std::max(1.0, s1.max_transition_norm);
  rep["selfStats"] = {{"K", self_json(s1)}, {"2K", self_json(s2)}, {"stable", stable}};
  const auto g = linear_growth_test(spec, GeneratingSet::default_for(spec, cover.params.step), cfg.tol);
  rep["growth"] = g.to_json();
  rep["config"] = to_json(cfg);
  emit(cfg, "analysis.json", dump(rep), true);
  emit(cfg, "growth.csv", g.report.to_csv(), false);
  return kDecided;
}

int cmd_compare(const std::string& path, const RunConfig& cfg) {
  cfg.validate();
  const auto [a, b] = parse_pair(load_json(path));
  const auto v = coorbit_equivalence(a, b, EquivConfig::from(cfg));
  json j = v.to_json();
  j["groups"] = {{"a", group_to_json(a)}, {"b", group_to_json(b)}};
  j["config"] = to_json(cfg);
  emit(cfg, "verdict.json", dump(j), true);
  emit(cfg, "trends.csv", v.trends_csv(), false);
  if (v.evidence.norm_ratios) emit(cfg, "ratios.csv", v.evidence.norm_ratios->to_csv(), false);
  if (v.evidence.qi) emit(cfg, "qi.json", qi_to_json(v.evidence.qi->certificate) + "\n", false);
  return v.outcome == Outcome::Inconclusive ? kInconclusive : kDecided;
}

int cmd_besov_compare(const std::string& pair_path, const std::string& battery_path, const RunConfig& cfg) {
  cfg.validate();
  const auto [a, b] = parse_pair(load_json(pair_path));
  const auto battery = parse_battery(load_json(battery_path), a.dim);
  const auto covers = norm_covers(a, b, 2 * cfg.window, cfg.budget, cfg.seed);
  const auto r = compare_norms(covers, battery, cfg.grid, cfg.p, cfg.q, cfg.tol);
  json j = r.to_json();
  j["trend"] = r.increasing ? "increasing" : "bounded";
  j["groups"] = {{"a", group_to_json(a)}, {"b", group_to_json(b)}};
  j["config"] = to_json(cfg);
  emit(cfg, "besov.json", dump(j), true);
  emit(cfg, "ratios.csv", r.to_csv(), false);
  return kDecided;
}

int cmd_export_cover(const std::string& path, const RunConfig& cfg) {
  cfg.validate(1);
  const auto spec = parse_group(load_json(path));
  const auto cover = build_induced_cover(spec, cover_params(cfg, cfg.window));
  emit(cfg, "cover.json", cover_to_json(cover) + "\n", cfg.out.empty());
  emit(cfg, "adjacency.csv", cover_adjacency_csv(cover), false);
  return kDecided;
}

int cmd_growth(const std::string& path, const RunConfig& cfg) {
  cfg.validate();
  const auto spec = parse_group(load_json(path));
  const auto g = linear_growth_test(spec, GeneratingSet::default_for(spec, 0.6931471805599453), cfg.tol);
  json j = g.to_json();
  j["group"] = group_to_json(spec);
  j["config"] = to_json(cfg);
  emit(cfg, "growth.json", dump(j), true);
  emit(cfg, "growth.csv", g.report.to_csv(), false);
  return kDecided;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coorbit: numerical coorbit-equivalence checks for matrix dilation groups"};
  app.set_version_flag("--version", std::string(version_string()));
  app.require_subcommand(1);

  RunConfig cfg;
  std::string p_text = "1";
  std::string q_text = "1";
  auto common = [&](CLI::App* c) {
    c->add_option("--window", cfg.window, "index window K (windows K, 2K, 4K)");
    c->add_option("--budget", cfg.budget, "intersection samples per pair");
    c->add_option("--seed", cfg.seed, "RNG seed");
    c->add_option("--grid", cfg.grid, "FFT grid size per axis");
    c->add_option("--out", cfg.out, "output directory");
  };

  std::string group_path;
  std::string pair_path;
  std::string battery_path;

  auto* analyze = app.add_subcommand("analyze", "admissibility, properness, cover and growth report");
  analyze->add_option("group", group_path, "group JSON")->required();
  common(analyze);

  auto* compare = app.add_subcommand("compare", "coorbit equivalence verdict for a pair");
  compare->add_option("pair", pair_path, "pair JSON")->required();
  compare->add_flag("--with-qi", cfg.with_qi, "attach a transition-map quasi-isometry fit");
  compare->add_flag("--with-norms", cfg.with_norms, "attach decomposition-norm ratios");
  compare->add_option("--p", p_text, "integrability exponent");
  compare->add_option("--q", q_text, "summability exponent");
  common(compare);

  auto* besov = app.add_subcommand("besov-compare", "decomposition-norm ratios over a packet battery");
  besov->add_option("pair", pair_path, "pair JSON")->required();
  besov->add_option("battery", battery_path, "battery JSON")->required();
  besov->add_option("--p", p_text, "integrability exponent");
  besov->add_option("--q", q_text, "summability exponent");
  common(besov);

  auto* exp = app.add_subcommand("export-cover", "cover JSON and adjacency CSV");
  exp->add_option("group", group_path, "group JSON")->required();
  common(exp);

  auto* growth = app.add_subcommand("growth", "growth function and linear-growth test");
  growth->add_option("group", group_path, "group JSON")->required();
  common(growth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kFailed;
  }

  try {
    cfg.p = parse_exponent(p_text);
    cfg.q = parse_exponent(q_text);
    if (*analyze) return cmd_analyze(group_path, cfg);
    if (*compare) return cmd_compare(pair_path, cfg);
    if (*besov) return cmd_besov_compare(pair_path, battery_path, cfg);
    if (*exp) return cmd_export_cover(group_path, cfg);
    if (*growth) return cmd_growth(group_path, cfg);
  } catch (const SchemaError& e) {
    std::cerr << "schema error at " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kFailed;
}
