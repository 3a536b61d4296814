#include "coorbit/config.hpp"

#include <cmath>

#include "coorbit/error.hpp"

#ifndef COORBIT_VERSION
#define COORBIT_VERSION "v0.1.0"
#endif

namespace coorbit {

void RunConfig::validate(int min_window) const {
  if (window < min_window) throw ConfigurationError("window K must be >= " + std::to_string(min_window));
  if (budget < 64) throw ConfigurationError("sample budget must be >= 64");
  if (coverage_samples < 256) throw ConfigurationError("coverage samples must be >= 256");
  if (support_samples < 64) throw ConfigurationError("support samples must be >= 64");
  if (grid < 16 || grid > 256 || (grid & (grid - 1)) != 0) {
    throw ConfigurationError("grid size must be a power of two in [16, 256]");
  }
  if (!(p >= 1.0) || !(q >= 1.0)) throw ConfigurationError("p and q must lie in [1, inf]");
}

const char* version_string() { return COORBIT_VERSION; }

nlohmann::json to_json(const Tolerances& t) {
  return {{"stabilization", t.stabilization},
          {"subgroup", t.subgroup},
          {"qiMinPairs", t.qi_min_pairs},
          {"qiR2Growth", t.qi_r2_growth},
          {"sandwichStability", t.sandwich_stability},
          {"growthLinearLo", t.growth_linear_lo},
          {"growthLinearHi", t.growth_linear_hi},
          {"growthResidual", t.growth_residual},
          {"partition", t.partition},
          {"calderon", t.calderon},
          {"parseval", t.parseval},
          {"tailWarning", t.tail_warning}};
}

namespace {
nlohmann::json exponent(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}
}  // namespace

nlohmann::json to_json(const RunConfig& c) {
  return {{"window", c.window},
          {"windows", {c.window, 2 * c.window, 4 * c.window}},
          {"budget", c.budget},
          {"coverageSamples", c.coverage_samples},
          {"supportSamples", c.support_samples},
          {"seed", c.seed},
          {"grid", c.grid},
          {"p", exponent(c.p)},
          {"q", exponent(c.q)},
          {"withQi", c.with_qi},
          {"withNorms", c.with_norms},
          {"tolerances", to_json(c.tol)},
          {"version", version_string()}};
}

}  // namespace coorbit
