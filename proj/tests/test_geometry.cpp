#include <cmath>
#include <numbers>

#include "coorbit/error.hpp"
#include "coorbit/geometry.hpp"
#include "coorbit/sampling.hpp"
#include "doctest.h"

using namespace coorbit;

namespace {
Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}
}  // namespace

TEST_CASE("ball gauge and radii") {
  const auto b = ConvexBody::ball(v2(3, 4), 2.0);
  CHECK(b.gauge(v2(3, 6)) == doctest::Approx(1.0));
  CHECK(b.gauge(v2(3, 4)) == doctest::Approx(0.0));
  CHECK(b.max_radius() == doctest::Approx(7.0));
  CHECK(b.min_radius() == doctest::Approx(3.0));
  CHECK(b.support(v2(1, 0)) == doctest::Approx(5.0));
}

TEST_CASE("min gauge between balls matches the center distance") {
  RandomStream rng(3, 1);
  for (int t = 0; t < 50; ++t) {
    const Vec c1 = 4.0 * rng.normal_vector(2);
    const Vec c2 = 4.0 * rng.normal_vector(2);
    const double r1 = rng.uniform(0.2, 2.0);
    const double r2 = rng.uniform(0.2, 2.0);
    const double oracle = std::max(0.0, (c1 - c2).norm() - r1) / r2;
    CHECK(min_gauge_over(ConvexBody::ball(c1, r1), ConvexBody::ball(c2, r2)) ==
          doctest::Approx(oracle).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("dual images move membership with the point") {
  const auto s = Shell::annulus(Vec::Zero(2), 1.0, 3.0);
  Mat h(2, 2);
  h << 2, 1, 0, 0.5;
  const auto img = s.dual_image(h);
  RandomStream rng(5, 2);
  int mismatches = 0;
  for (int t = 0; t < 500; ++t) {
    const Vec xi = 4.0 * rng.normal_vector(2);
    const Vec moved = solve_transpose(h, xi);
    mismatches += s.contains(xi, Closure::Open) != img.contains(moved, Closure::Open);
  }
  CHECK(mismatches == 0);
}

TEST_CASE("concentric annuli overlap exactly when the radial intervals do") {
  const auto opts = IntersectOptions::make(2, 128);
  for (double r0 : {0.5, 1.0, 2.0, 2.9, 3.0, 3.1, 5.0}) {
    const auto a = Shell::annulus(Vec::Zero(2), 1.0, 3.0);
    const auto b = Shell::annulus(Vec::Zero(2), r0, 2.0 * r0);
    const bool oracle = r0 < 3.0 && 2.0 * r0 > 1.0;
    CHECK(is_intersecting(intersects(Region{a}, Region{b}, opts)) == oracle);
  }
}

TEST_CASE("anisotropic centered shells agree with dense ray sampling") {
  Mat p(2, 2);
  p << 1.0, 0.0, 0.0, 0.25;
  const auto a = Shell::annulus(Vec::Zero(2), 1.0, 2.0);
  for (double s : {0.3, 0.45, 0.6, 1.0, 3.0, 7.9, 8.1}) {
    const auto b = Shell::annulus(Vec::Zero(2), 1.0, 2.0).linear_image(s * p);
    // oracle: along each ray the two radial intervals; any overlap means intersection
    bool oracle = false;
    for (int k = 0; k < 20000 && !oracle; ++k) {
      const double t = 2.0 * std::numbers::pi * k / 20000.0;
      const Vec u = v2(std::cos(t), std::sin(t));
      const double g = b.outer().gauge(u);
      const double blo = 1.0 / (2.0 * g) * 1.0;
      const double bhi = 1.0 / g;
      oracle = std::max(1.0, blo) < std::min(2.0, bhi);
    }
    CHECK(centered_shells_overlap(a, b, Closure::Open) == oracle);
  }
}

TEST_CASE("axis-aligned boxes intersect iff every coordinate interval overlaps") {
  const auto opts = IntersectOptions::make(2, 64);
  RandomStream rng(11, 0);
  for (int t = 0; t < 100; ++t) {
    const Vec c1 = 2.0 * rng.normal_vector(2);
    const Vec c2 = 2.0 * rng.normal_vector(2);
    Mat e1 = Mat::Zero(2, 2);
    Mat e2 = Mat::Zero(2, 2);
    e1(0, 0) = rng.uniform(0.1, 1.5);
    e1(1, 1) = rng.uniform(0.1, 1.5);
    e2(0, 0) = rng.uniform(0.1, 1.5);
    e2(1, 1) = rng.uniform(0.1, 1.5);
    const bool oracle = std::abs(c1(0) - c2(0)) < e1(0, 0) + e2(0, 0) && std::abs(c1(1) - c2(1)) < e1(1, 1) + e2(1, 1);
    const auto st = intersects(Region{ConvexBody::parallelotope(c1, e1)}, Region{ConvexBody::parallelotope(c2, e2)}, opts);
    CHECK(is_intersecting(st) == oracle);
    CHECK(is_exact(st));
  }
}

TEST_CASE("shell construction rejects a non-nested inner body") {
  CHECK_THROWS(Shell::make(ConvexBody::ball(Vec::Zero(2), 1.0), ConvexBody::ball(v2(0.8, 0), 0.5)));
  CHECK(Shell::annulus(Vec::Zero(2), 1.0, 4.0).ratio() == doctest::Approx(4.0));
}
