#include <cmath>
#include <set>
#include <sstream>

#include "coorbit/cover.hpp"
#include "coorbit/error.hpp"
#include "coorbit/kernels.hpp"
#include "doctest.h"

using namespace coorbit;

namespace {
CoverParams params(int window) {
  CoverParams p;
  p.window = window;
  p.self_stats = false;
  return p;
}
}  // namespace

TEST_CASE("dyadic cover of the plane") {
  const auto c = build_induced_cover(GroupSpec::cyclic(2 * identity(2)), params(4));
  REQUIRE(c.size() == 9);
  CHECK(c.shell_ratio == doctest::Approx(4.0));
  std::set<long> exps;
  for (const auto& e : c.elements) {
    // oracle: annuli 2^m < |ξ| < 2^{m+2}
    const double m = std::log2(e.radial_lo);
    CHECK(m == doctest::Approx(std::round(m)).epsilon(1e-12).scale(1.0));
    CHECK(e.radial_hi == doctest::Approx(4.0 * e.radial_lo));
    exps.insert(std::lround(m));
  }
  CHECK(exps.size() == 9);
}

TEST_CASE("every element contains the transported reference point") {
  Mat a(2, 2);
  a << 2, 1, 0, 2;
  const auto c = build_induced_cover(GroupSpec::cyclic(a), params(6));
  for (const auto& e : c.elements) {
    const Vec p = dual_action(e.transform, c.base.reference);
    CHECK(e.geometry.contains(p, Closure::Open));
  }
}

TEST_CASE("annulus points are covered inside the window annulus") {
  const auto c = build_induced_cover(GroupSpec::cyclic(2 * identity(2)), params(8));
  const auto pts = annulus_points(2, c.r_min, c.r_max, 2048, 9);
  const auto counts = coverage_counts(c, pts);
  int uncovered = 0;
  for (int n : counts) uncovered += n == 0;
  CHECK(uncovered == 0);
  CHECK_FALSE(find_coverage_gap(c, c.r_min, c.r_max, 1024, 2).has_value());
}

TEST_CASE("self neighbour counts are window stable") {
  const auto c = build_induced_cover(GroupSpec::cyclic(2 * identity(2)), params(16));
  const auto s1 = self_stats(c, 4, 8, 256);
  const auto s2 = self_stats(c, 8, 16, 256);
  // oracle: 2^m and 2^n annuli (ratio 4) overlap iff |m − n| ≤ 1
  CHECK(s1.max_count == 3);
  CHECK(s2.max_count == 3);
  CHECK(s1.max_transition_norm == doctest::Approx(2.0));
  CHECK(s2.max_transition_norm == doctest::Approx(s1.max_transition_norm));
}

TEST_CASE("self stats of an anisotropic cover agree at K and 2K") {
  Mat a = identity(3);
  a(0, 0) = 3;
  a(1, 1) = 2;
  a(2, 2) = 2;
  const auto c = build_induced_cover(GroupSpec::cyclic(a), params(16));
  const auto s1 = self_stats(c, 4, 8, 256);
  const auto s2 = self_stats(c, 8, 16, 256);
  CHECK(s1.max_count == s2.max_count);
  CHECK(s1.max_transition_norm == doctest::Approx(s2.max_transition_norm).epsilon(1e-12));
}

TEST_CASE("support test finds a half-plane witness") {
  auto half = GroupSpec::cyclic(2 * identity(2));
  half.support.kind = SupportOracle::Kind::HalfSpace;
  half.support.normal = Vec::Unit(2, 0);
  const auto full = GroupSpec::cyclic(2 * identity(2));
  const auto r = support_equality_test(half, full, params(4), 512);
  REQUIRE_FALSE(r.equal);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness_side == "B");
  CHECK((*r.witness)(0) <= 0.0);
  CHECK(support_equality_test(full, full, params(4), 256).equal);
}

TEST_CASE("properness of the dyadic group is bounded") {
  const auto pr = properness_check(GroupSpec::cyclic(2 * identity(2)), Shell::annulus(Vec::Zero(2), 1.5, 2.5), 8);
  CHECK(pr.bounded);
  // oracle: 2^k (1.5, 2.5) meets (1.5, 2.5) only for k = 0
  CHECK(pr.members.size() == 1);
}

TEST_CASE("adjacency export lists neighbours and self-loops") {
  const auto c = build_induced_cover(GroupSpec::cyclic(2 * identity(2)), params(4));
  std::istringstream in(cover_adjacency_csv(c));
  std::string line;
  std::getline(in, line);
  CHECK(line == "i,j,status");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 17);
  CHECK_THROWS_AS(build_induced_cover(GroupSpec::cyclic(2 * identity(2)), params(0)), ConfigurationError);
}
