#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coorbit/config.hpp"
#include "coorbit/matgroup.hpp"

namespace coorbit {

enum class GrowthVerdict { Linear, PolynomialDegree, SuperPolynomialTrend };
std::string to_string(GrowthVerdict v);

struct GrowthSample {
  double r = 0.0;
  double volume = 0.0;
};

struct GrowthReport {
  std::vector<GrowthSample> samples;
  double exponent = 0.0;
  double residual = 0.0;  ///< RMS of the log-log fit
  GrowthVerdict verdict = GrowthVerdict::SuperPolynomialTrend;
  int degree = 0;         ///< PolynomialDegree only
  bool truncated = false; ///< BFS cap reached before the largest radius

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

/// Geometric radii 10 .. 1000 (coordinate families) or 4 .. 64 (DiscreteFG).
std::vector<double> default_radii(const GroupSpec& spec);

GrowthReport growth_function(const GroupSpec& spec, const GeneratingSet& w, const std::vector<double>& radii,
                             const Tolerances& tol = {});

struct LinearGrowthResult {
  bool linear = false;
  double exponent = 0.0;
  GrowthReport report;
  /// Chart direction generating a cocompact one-parameter subgroup; empty means NotFound.
  std::optional<Mat> direction;
  std::string direction_note;

  nlohmann::json to_json() const;
};

LinearGrowthResult linear_growth_test(const GroupSpec& spec, const GeneratingSet& w, const Tolerances& tol = {});

}  // namespace coorbit
