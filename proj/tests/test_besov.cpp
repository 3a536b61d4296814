#include <cmath>
#include <memory>

#include "coorbit/besov.hpp"
#include "coorbit/error.hpp"
#include "coorbit/sampling.hpp"
#include "doctest.h"

using namespace coorbit;

namespace {
Packet packet(double cx, double cy, double w) {
  Packet p;
  p.center = Vec(2);
  p.center << cx, cy;
  p.widths = Vec::Constant(2, w);
  p.modulation = Vec(2);
  p.modulation << 0.3, -0.1;
  return p;
}

std::shared_ptr<const InducedCover> dyadic(int window) {
  CoverParams p;
  p.window = window;
  p.self_stats = false;
  return std::make_shared<InducedCover>(build_induced_cover(GroupSpec::cyclic(2 * identity(2)), p));
}

double plancherel(const GridFunction& fh, const std::function<double(const Vec&)>& weight) {
  double acc = 0.0;
  for (std::size_t k = 0; k < fh.size(); ++k) acc += std::norm(fh.data()[k]) * weight(fh.frequency_point(k));
  return std::sqrt(acc * fh.cell());
}
}  // namespace

TEST_CASE("fft round trip and parseval") {
  RandomStream rng(7, 0);
  for (int d = 1; d <= 3; ++d) {
    const int n = d == 3 ? 16 : 32;
    const auto f = GridFunction::from_spatial(d, n, 3.0, [&](const Vec&) { return Complex(rng.normal(), rng.normal()); });
    const auto fh = f.to_frequency();
    CHECK(fh.l2_norm() == doctest::Approx(f.l2_norm()).epsilon(1e-8));
    const auto back = fh.to_spatial();
    double err = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) err = std::max(err, std::abs(back.data()[k] - f.data()[k]));
    CHECK(err < 1e-10 * f.l2_norm());
  }
}

TEST_CASE("gaussian transform matches the closed form") {
  // oracle: exp(−π|x|²) is its own Fourier transform
  const auto f = GridFunction::from_spatial(2, 128, 6.0, [](const Vec& x) { return Complex(std::exp(-std::numbers::pi * x.squaredNorm())); });
  const auto fh = f.to_frequency();
  double err = 0.0;
  for (std::size_t k = 0; k < fh.size(); ++k) {
    err = std::max(err, std::abs(fh.data()[k] - std::exp(-std::numbers::pi * fh.frequency_point(k).squaredNorm())));
  }
  CHECK(err < 1e-10);
}

TEST_CASE("partition of unity on the dyadic cover") {
  const PartitionOfUnity pou(dyadic(8));
  CHECK(smoothstep(0.0) == 0.0);
  CHECK(smoothstep(1.0) == 1.0);
  CHECK(smoothstep(0.5) == doctest::Approx(0.5));
  const auto pts = annulus_points(2, pou.region_lo(), pou.region_hi(), 4096, 3);
  double worst = 0.0;
  for (const auto& xi : pts) {
    double sum = 0.0;
    for (const auto& [i, v] : pou.at(xi)) {
      CHECK(pou.cover().elements[i].geometry.contains(xi, Closure::Open));
      sum += v;
    }
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("calderon normalization") {
  const auto psi = AnalyzingWindow::from_partition(2 * identity(2));
  CHECK(calderon_check(psi, 2 * identity(2), annulus_points(2, psi.support_lo(), psi.support_hi(), 4096, 5)) <= 1e-6);
  Mat a(2, 2);
  a << 3, 1, 0, 2;
  const auto psi2 = AnalyzingWindow::from_partition(a);
  CHECK(calderon_check(psi2, a, annulus_points(2, psi2.support_lo(), psi2.support_hi(), 4096, 6)) <= 1e-6);
}

TEST_CASE("dyadic Besov norm against a Plancherel oracle") {
  const auto f = packet(3.0, 1.0, 1.5).sample(64);
  const auto fh = f.to_frequency();
  const CyclicPartition part(2 * identity(2));
  const auto r = anisotropic_besov_norm(f, 2 * identity(2), 0.0, 2.0, 2.0, Exec::Serial);
  const double oracle = plancherel(fh, [&](const Vec& xi) {
    double s = 0.0;
    for (int j = -12; j <= 12; ++j) s += std::pow(part.phi(std::ldexp(1.0, -j) * xi), 2);
    return s;
  });
  CHECK(r.norm == doctest::Approx(oracle).epsilon(1e-10));
  // Σφ_j² ≤ (Σφ_j)² = 1 and at most three members overlap
  CHECK(r.norm <= f.l2_norm() * (1.0 + 1e-12));
  CHECK(r.norm >= f.l2_norm() / std::sqrt(3.0));
  CHECK(anisotropic_besov_norm(f, 2 * identity(2), 0.0, 2.0, 2.0, Exec::Parallel).norm == doctest::Approx(r.norm).epsilon(1e-12));
}

TEST_CASE("decomposition norm properties") {
  const PartitionOfUnity pou(dyadic(12));
  const auto f = packet(3.0, 1.0, 1.5).sample(64);
  const auto g = packet(-6.0, 2.0, 2.0).sample(64);
  const auto nf = decomposition_norm(f, pou, 1.0, 1.0).norm;
  CHECK(nf > 0.0);
  CHECK(decomposition_norm(f.scaled({0.0, -3.0}), pou, 1.0, 1.0).norm == doctest::Approx(3.0 * nf).epsilon(1e-12));
  CHECK(decomposition_norm(f.scaled(0.0), pou, 1.0, 1.0).norm == 0.0);
  // grids differ in extent, so sum on the frequency side of f's grid
  auto sum = GridFunction::from_frequency(2, 64, f.extent(), [&](const Vec& xi) {
    return packet(3.0, 1.0, 1.5)(xi) + packet(-6.0, 2.0, 2.0)(xi);
  });
  const auto g_same = GridFunction::from_frequency(2, 64, f.extent(), [&](const Vec& xi) { return packet(-6.0, 2.0, 2.0)(xi); });
  CHECK(decomposition_norm(sum, pou, 1.0, 1.0).norm <= nf + decomposition_norm(g_same, pou, 1.0, 1.0).norm + 1e-12);
  const double q1 = decomposition_norm(g, pou, 2.0, 1.0).norm;
  const double q2 = decomposition_norm(g, pou, 2.0, 2.0).norm;
  const double qi = decomposition_norm(g, pou, 2.0, HUGE_VAL).norm;
  CHECK(q1 >= q2);
  CHECK(q2 >= qi);
  CHECK_THROWS_AS(decomposition_norm(g, pou, 0.5, 1.0), ConfigurationError);
}

TEST_CASE("aggregate combines weighted magnitudes") {
  const std::vector<ElementMagnitude> t{{0, 0, 1.0, 3.0}, {1, 1, 2.0, 2.0}};
  CHECK(aggregate(t, 1.0) == doctest::Approx(7.0));
  CHECK(aggregate(t, 2.0) == doctest::Approx(5.0));
  CHECK(aggregate(t, HUGE_VAL) == doctest::Approx(4.0));
}

TEST_CASE("direct coorbit norm is the L2 isometry at p = q = 2") {
  const auto f = packet(3.0, 1.0, 1.5).sample(64);
  const auto psi = AnalyzingWindow::from_partition(2 * identity(2));
  const auto quad = default_quadrature(GroupSpec::cyclic(2 * identity(2)), 16);
  const double n = coorbit_norm_direct(f, psi, quad, 2.0, 2.0);
  CHECK(n == doctest::Approx(f.l2_norm()).epsilon(1e-6));
  CHECK(coorbit_norm_direct(f, psi, quad, 1.0, 1.0, Exec::Serial) ==
        doctest::Approx(coorbit_norm_direct(f, psi, quad, 1.0, 1.0, Exec::Parallel)).epsilon(1e-12));
  auto narrow = quad;
  narrow.window = 1;
  CHECK_THROWS_AS(coorbit_norm_direct(f, psi, narrow, 2.0, 2.0), TruncationError);
  CHECK_THROWS_AS(default_quadrature(GroupSpec::similitude(2), 4), NotSupported);
}

TEST_CASE("identical groups give unit ratios") {
  const auto covers = norm_covers(GroupSpec::cyclic(2 * identity(2)), GroupSpec::cyclic(2 * identity(2)), 12, 256, 1);
  const auto s = compare_norms(covers, scale_battery(2, 1.0, 4.0, 4), 64, 1.0, 1.0);
  CHECK(s.rows.size() == 4);
  CHECK(s.spread == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.to_csv().rfind("j,normA,normB,ratio\n", 0) == 0);
}
