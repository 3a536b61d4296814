#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace coorbit {

/// Every decision threshold used by the verdict logic, in one place.
struct Tolerances {
  double stabilization = 0.01;      ///< relative slack for "the max stopped growing"
  double subgroup = 1e-8;           ///< membership residual for subgroup tests
  std::size_t qi_min_pairs = 100;
  double qi_r2_growth = 0.25;       ///< per-doubling R2 growth that gets flagged
  double sandwich_stability = 1.1;
  double growth_linear_lo = 0.8;
  double growth_linear_hi = 1.2;
  double growth_residual = 0.1;
  double partition = 1e-6;
  double calderon = 1e-4;
  double parseval = 1e-8;
  double tail_warning = 0.1;
};

/// Everything a CLI run depends on; embedded in every report.
struct RunConfig {
  int window = 8;  ///< K; the windows are K, 2K, 4K
  int budget = 256;
  int coverage_samples = 4096;
  int support_samples = 1024;
  std::uint64_t seed = 1;
  int grid = 64;
  double p = 1.0;
  double q = 1.0;
  bool with_qi = false;
  bool with_norms = false;
  std::string out;
  Tolerances tol;

  /// Throws ConfigurationError on K < min_window, small budgets or bad grid sizes.
  void validate(int min_window = 4) const;
};

const char* version_string();

nlohmann::json to_json(const Tolerances& t);
nlohmann::json to_json(const RunConfig& c);

}  // namespace coorbit
