#include <cmath>
#include <functional>

#include "coorbit/error.hpp"
#include "coorbit/metric.hpp"
#include "doctest.h"

using namespace coorbit;

namespace {
InducedCover dyadic(int window) {
  CoverParams p;
  p.window = window;
  p.self_stats = false;
  return build_induced_cover(GroupSpec::cyclic(2 * identity(2)), p);
}

Vec point(double r, double angle) {
  Vec v(2);
  v << r * std::cos(angle), r * std::sin(angle);
  return v;
}

long finite(const ExtendedDistance& d) {
  REQUIRE_FALSE(d.infinite);
  return d.value;
}
}  // namespace

TEST_CASE("chain distance along the dyadic scale") {
  const auto c = dyadic(12);
  const auto g = build_chain_graph(c, 12);
  const Vec xi = point(1.5, 0.3);
  CHECK(finite(chain_distance(c, g, xi, xi, 64)) == 0);
  // oracle: 1.5 * 2^k lies in the annuli 2^m < r < 2^{m+2} with m = k − 1, k; neighbours differ by one in m
  for (int k = 1; k <= 5; ++k) {
    CHECK(finite(chain_distance(c, g, xi, point(1.5 * std::ldexp(1.0, k), 2.0), 64)) == k);
    CHECK(finite(chain_distance(c, g, xi, point(1.5 * std::ldexp(1.0, -k), -1.0), 64)) == k);
  }
}

TEST_CASE("chain distance axioms and invariance on a window") {
  const auto c = dyadic(12);
  const auto g = build_chain_graph(c, 12);
  std::vector<Vec> pts;
  for (int k = 0; k < 20; ++k) pts.push_back(point(std::exp(0.37 * (k - 10)), 0.9 * k));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(finite(chain_distance(c, g, pts[i], pts[i], 64)) == 0);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const long dij = finite(chain_distance(c, g, pts[i], pts[j], 64));
      CHECK(dij == finite(chain_distance(c, g, pts[j], pts[i], 64)));
      if (i != j) CHECK(dij >= 1);
      // left invariance under the generator
      CHECK(dij == finite(chain_distance(c, g, 2.0 * pts[i], 2.0 * pts[j], 64)));
      for (std::size_t k = 0; k < pts.size(); k += 3) {
        CHECK(dij <= finite(chain_distance(c, g, pts[i], pts[k], 64)) + finite(chain_distance(c, g, pts[k], pts[j], 64)));
      }
    }
  }
}

TEST_CASE("quasi-inverse lands on the orbit") {
  const auto c = dyadic(8);
  for (int k = -4; k <= 4; ++k) {
    const Vec eta = point(std::exp(0.5 * k), 0.2 * k);
    const auto q = quasi_inverse_orbit(c, eta);
    CHECK((orbit_map(q.h, q.xi) - eta).norm() < 1e-12 * eta.norm());
    CHECK(c.elements[q.element].geometry.contains(eta, Closure::Open));
  }
}

TEST_CASE("required R2 against a hand oracle") {
  const std::vector<QIPair> pairs{{1, 3, 0, 0}, {4, 0.5, 0, 0}};
  // r1 = 2: max(3 − 2, 0.5 − 3, 0.5 − 8, 2 − 0.5) = 1.5
  CHECK(required_r2(pairs, 2.0) == doctest::Approx(1.5));
  CHECK(required_r2(pairs, 4.0) == doctest::Approx(0.5));
}

namespace {
std::vector<QIWindow> synthetic(const std::function<double(double, int)>& dy) {
  std::vector<QIWindow> out;
  for (int w : {8, 16, 32}) {
    QIWindow win;
    win.window = w;
    for (int k = 0; k < 150; ++k) {
      const double dx = w * k / 149.0;
      win.pairs.push_back({dx, dy(dx, k), k, 0});
    }
    win.image_gaps = {0.5};
    out.push_back(win);
  }
  return out;
}
}  // namespace

TEST_CASE("quasi-isometry fit certifies an affine distortion") {
  const auto c = fit_quasi_isometry(synthetic([](double dx, int k) { return 2.0 * dx + 0.5 * (k % 3 - 1); }));
  CHECK(c.certified);
  CHECK(c.verdict() == "Certified");
  CHECK(c.r1 == doctest::Approx(2.0));
  CHECK(c.r2 == doctest::Approx(0.5));
  CHECK(c.r3 == doctest::Approx(0.5));
  CHECK_FALSE(c.r2_growth);
}

TEST_CASE("quasi-isometry fit rejects quadratic distortion") {
  const auto c = fit_quasi_isometry(synthetic([](double dx, int) { return dx * dx / 4.0; }));
  CHECK_FALSE(c.certified);
  CHECK(c.verdict() == "ViolatedTrend");
  REQUIRE(c.witness.has_value());
  CHECK(c.witness->dx > 16.0);
  CHECK(c.r2_growth);
  CHECK_THROWS_AS(fit_quasi_isometry(synthetic([](double dx, int) { return dx; }), 1000), ConfigurationError);
}

TEST_CASE("sandwich constants of the dyadic cover") {
  const auto c = dyadic(8);
  const auto s = sandwich_check(c, c.base.reference, c.base.reference, 128);
  CHECK(s.pairs > 0);
  CHECK(std::isfinite(s.r_upper));
  CHECK(std::isfinite(s.r_lower));
}
