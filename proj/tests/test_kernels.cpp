#include <cmath>
#include <complex>

#include "coorbit/cover.hpp"
#include "coorbit/kernels.hpp"
#include "coorbit/sampling.hpp"
#include "doctest.h"

using namespace coorbit;

TEST_CASE("parallel intersection kernel matches the serial reference") {
  CoverParams p;
  p.window = 8;
  p.self_stats = false;
  Mat a = 2 * identity(2);
  a(0, 0) = 3;
  const auto ca = build_induced_cover(GroupSpec::cyclic(a), p);
  const auto cb = build_induced_cover(GroupSpec::cyclic(2 * identity(2)), p);
  std::vector<IndexPair> pairs;
  for (std::size_t i = 0; i < ca.size(); ++i)
    for (std::size_t j = 0; j < cb.size(); ++j) pairs.emplace_back(i, j);
  const auto opts = IntersectOptions::make(2, 128);
  CHECK(intersect_pairs(ca, cb, pairs, opts, Exec::Serial) == intersect_pairs(ca, cb, pairs, opts, Exec::Parallel));
  const auto pts = annulus_points(2, ca.r_min, ca.r_max, 1000, 4);
  CHECK(coverage_counts(ca, pts, Exec::Serial) == coverage_counts(ca, pts, Exec::Parallel));
}

TEST_CASE("lp norms match direct sums") {
  RandomStream rng(1, 1);
  std::vector<std::vector<std::complex<double>>> fields(5, std::vector<std::complex<double>>(300));
  for (auto& f : fields)
    for (auto& z : f) z = {rng.normal(), rng.normal()};
  const double cell = 0.01;
  for (double p : {1.0, 2.0, 3.5, HUGE_VAL}) {
    const auto par = lp_norms(fields, p, cell, Exec::Parallel);
    const auto ser = lp_norms(fields, p, cell, Exec::Serial);
    CHECK(par == ser);
    for (std::size_t k = 0; k < fields.size(); ++k) {
      double oracle = 0.0;
      if (std::isinf(p)) {
        for (const auto& z : fields[k]) oracle = std::max(oracle, std::abs(z));
      } else {
        for (const auto& z : fields[k]) oracle += std::pow(std::abs(z), p) * cell;
        oracle = std::pow(oracle, 1.0 / p);
      }
      CHECK(par[k] == doctest::Approx(oracle).epsilon(1e-12));
    }
  }
}
