#include "coorbit/growth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "coorbit/error.hpp"

namespace coorbit {

std::string to_string(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::Linear:
      return "Linear";
    case GrowthVerdict::PolynomialDegree:
      return "PolynomialDegree";
    case GrowthVerdict::SuperPolynomialTrend:
      return "SuperPolynomialTrend";
  }
  return "?";
}

std::vector<double> default_radii(const GroupSpec& spec) {
  const bool discrete = spec.kind == GroupKind::DiscreteFG;
  const double lo = discrete ? 4.0 : 10.0;
  const double hi = discrete ? 64.0 : 1000.0;
  const int n = discrete ? 9 : 16;
  std::vector<double> r;
  for (int k = 0; k < n; ++k) r.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1)));
  return r;
}

namespace {

double rotation_volume(int dim, double reach) {
  // Haar volume of the rotation ball of angular radius `reach` in the exponential chart; the
  // whole group once reach ≥ π.
  if (dim == 2) return std::min(2.0 * reach, 2.0 * std::numbers::pi);
  const double pi = std::numbers::pi;
  if (reach >= pi) return 8.0 * pi * pi;
  // Haar density 2(1 − cos θ)/θ² in rotation-vector coordinates
  return 8.0 * pi * (reach - std::sin(reach));
}

std::vector<double> bfs_ball_counts(const GroupSpec& spec, const GeneratingSet& w, const std::vector<double>& radii,
                                    bool& truncated) {
  FamilyParams fp;
  fp.window = static_cast<int>(std::floor(radii.back() + 1e-9));
  fp.word_cap = w.max_nodes;
  GroupSpec s = spec;
  if (!w.generators.empty()) {
    // the enumeration walks spec.generators; a custom W is folded in as the generator list
    s.generators = w.generators;
  }
  const auto fam = enumerate_family(s, fp);
  truncated = fam.size() >= w.max_nodes;
  int reached = 0;
  for (const auto& idx : fam.indices) reached = std::max(reached, idx[0]);
  std::vector<double> out;
  for (double r : radii) {
    const int rr = static_cast<int>(std::floor(r + 1e-9));
    if (truncated && rr >= reached) {
      out.push_back(-1.0);
      continue;
    }
    double n = 0.0;
    for (const auto& idx : fam.indices) n += idx[0] <= rr ? 1.0 : 0.0;
    out.push_back(n);
  }
  return out;
}

}  // namespace

GrowthReport growth_function(const GroupSpec& spec, const GeneratingSet& w, const std::vector<double>& radii,
                             const Tolerances& tol) {
  if (radii.size() < 5) throw ConfigurationError("growth needs at least 5 radii");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0) || (k > 0 && radii[k] <= radii[k - 1])) throw ConfigurationError("radii must be positive and increasing");
  }
  if (radii.back() < 10.0 * radii.front() * (1 - 1e-12)) throw ConfigurationError("radii must span a decade");
  const double delta = w.half_width;
  GrowthReport rep;
  std::vector<double> vol;
  switch (spec.kind) {
    case GroupKind::OneParameter:
    case GroupKind::ScalarSimilitude:
      for (double r : radii) vol.push_back(2.0 * r * delta);
      break;
    case GroupKind::AbelianFlow:
      for (double r : radii) vol.push_back(std::pow(2.0 * r * delta, static_cast<double>(spec.generators.size())));
      break;
    case GroupKind::Cyclic: {
      const double steps = std::max(1.0, std::floor(delta));
      for (double r : radii) vol.push_back(2.0 * std::floor(r * steps + 1e-9) + 1.0);
      break;
    }
    case GroupKind::Similitude:
      for (double r : radii) vol.push_back(2.0 * r * delta * rotation_volume(spec.dim, r * delta));
      break;
    case GroupKind::DiscreteFG:
      vol = bfs_ball_counts(spec, w, radii, rep.truncated);
      break;
  }
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (vol[k] < 0.0) continue;
    rep.samples.push_back({radii[k], vol[k]});
    lx.push_back(std::log(radii[k]));
    ly.push_back(std::log(vol[k]));
  }
  if (lx.size() < 2) throw NumericalError("growth: BFS cap reached before the second radius");
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sx += lx[k];
    sy += ly[k];
    sxx += lx[k] * lx[k];
    sxy += lx[k] * ly[k];
  }
  rep.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double icpt = (sy - rep.exponent * sx) / n;
  double ss = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    const double e = ly[k] - icpt - rep.exponent * lx[k];
    ss += e * e;
  }
  rep.residual = std::sqrt(ss / n);

  const int near = static_cast<int>(std::lround(rep.exponent));
  if (rep.exponent >= tol.growth_linear_lo && rep.exponent <= tol.growth_linear_hi && rep.residual < tol.growth_residual) {
    rep.verdict = GrowthVerdict::Linear;
    rep.degree = 1;
  } else if (near >= 1 && std::abs(rep.exponent - near) <= 0.1 && rep.residual < tol.growth_residual) {
    rep.verdict = GrowthVerdict::PolynomialDegree;
    rep.degree = near;
  } else {
    rep.verdict = GrowthVerdict::SuperPolynomialTrend;
  }
  return rep;
}

nlohmann::json GrowthReport::to_json() const {
  nlohmann::json s = nlohmann::json::array();
  for (const auto& x : samples) s.push_back({{"r", x.r}, {"volume", x.volume}});
  nlohmann::json j{{"samples", s},
                   {"exponent", exponent},
                   {"residual", residual},
                   {"verdict", to_string(verdict)},
                   {"truncated", truncated}};
  if (verdict == GrowthVerdict::PolynomialDegree) j["degree"] = degree;
  return j;
}

std::string GrowthReport::to_csv() const {
  std::string out = "r,volume\n";
  char buf[96];
  for (const auto& x : samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x.r, x.volume);
    out += buf;
  }
  return out;
}

LinearGrowthResult linear_growth_test(const GroupSpec& spec, const GeneratingSet& w, const Tolerances& tol) {
  LinearGrowthResult r;
  r.report = growth_function(spec, w, default_radii(spec), tol);
  r.exponent = r.report.exponent;
  r.linear = r.report.verdict == GrowthVerdict::Linear;
  if (!r.linear) {
    r.direction_note = "growth is not linear";
    return r;
  }
  switch (spec.kind) {
    case GroupKind::ScalarSimilitude:
    case GroupKind::Similitude:
      r.direction = identity(spec.dim);
      r.direction_note = "scalar flow";
      break;
    case GroupKind::OneParameter:
      r.direction = spec.generators[0];
      r.direction_note = "generator";
      break;
    case GroupKind::AbelianFlow:
      if (spec.generators.size() == 1) {
        r.direction = spec.generators[0];
        r.direction_note = "generator";
      } else {
        r.direction_note = "NotFound";
      }
      break;
    case GroupKind::Cyclic:
    case GroupKind::DiscreteFG:
      r.direction_note = "NotFound: no one-parameter subgroup among chart directions";
      break;
  }
  return r;
}

nlohmann::json LinearGrowthResult::to_json() const {
  nlohmann::json j{{"linear", linear}, {"exponent", exponent}, {"report", report.to_json()}, {"directionNote", direction_note}};
  if (direction) j["direction"] = to_rows(*direction);
  return j;
}

}  // namespace coorbit
