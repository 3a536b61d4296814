#include "coorbit/kernels.hpp"

#include <cmath>
#include <limits>

#include "coorbit/cover.hpp"

namespace coorbit {

namespace {

IntersectStatus pair_status(const CoverElement& x, const CoverElement& y, const IntersectOptions& opts) {
  // cached radial bounds settle most far-apart pairs without touching the geometry
  const double scale = std::max(x.radial_hi, y.radial_hi);
  const double slack = 1e-12 * scale;
  if (opts.closure == Closure::Open) {
    if (x.radial_hi <= y.radial_lo + slack || y.radial_hi <= x.radial_lo + slack) return IntersectStatus::Disjoint;
  } else if (x.radial_hi < y.radial_lo - slack || y.radial_hi < x.radial_lo - slack) {
    return IntersectStatus::Disjoint;
  }
  return intersects(x.geometry, y.geometry, opts);
}

int count_containing(const InducedCover& cover, const Vec& p) {
  const double r = p.norm();
  int n = 0;
  for (const auto& e : cover.elements) {
    if (r < e.radial_lo || r > e.radial_hi) continue;
    if (e.geometry.contains(p, Closure::Open)) ++n;
  }
  return n;
}

double lp_norm(const std::vector<std::complex<double>>& v, double p, double cell) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
  }
  double acc = 0.0;
  if (p == 2.0) {
    for (const auto& z : v) acc += std::norm(z);
  } else if (p == 1.0) {
    for (const auto& z : v) acc += std::abs(z);
  } else {
    for (const auto& z : v) acc += std::pow(std::abs(z), p);
  }
  return std::pow(acc * cell, 1.0 / p);
}

}  // namespace

std::vector<IntersectStatus> intersect_pairs(const InducedCover& a, const InducedCover& b,
                                             const std::vector<IndexPair>& pairs, const IntersectOptions& opts,
                                             Exec exec) {
  std::vector<IntersectStatus> out(pairs.size(), IntersectStatus::Disjoint);
  const auto n = static_cast<std::ptrdiff_t>(pairs.size());
  if (exec == Exec::Serial) {
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      const auto [i, j] = pairs[static_cast<std::size_t>(k)];
      out[static_cast<std::size_t>(k)] = pair_status(a.elements[i], b.elements[j], opts);
    }
    return out;
  }
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto [i, j] = pairs[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(k)] = pair_status(a.elements[i], b.elements[j], opts);
  }
  return out;
}

std::vector<int> coverage_counts(const InducedCover& cover, const std::vector<Vec>& points, Exec exec) {
  std::vector<int> out(points.size(), 0);
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  if (exec == Exec::Serial) {
    for (std::ptrdiff_t k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = count_containing(cover, points[static_cast<std::size_t>(k)]);
    return out;
  }
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = count_containing(cover, points[static_cast<std::size_t>(k)]);
  return out;
}

std::vector<double> lp_norms(const std::vector<std::vector<std::complex<double>>>& fields, double p, double cell,
                             Exec exec) {
  std::vector<double> out(fields.size(), 0.0);
  const auto n = static_cast<std::ptrdiff_t>(fields.size());
  if (exec == Exec::Serial) {
    for (std::ptrdiff_t k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = lp_norm(fields[static_cast<std::size_t>(k)], p, cell);
    return out;
  }
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = lp_norm(fields[static_cast<std::size_t>(k)], p, cell);
  return out;
}

}  // namespace coorbit
