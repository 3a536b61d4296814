// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include <complex>

#include "coorbit/cover.hpp"
#include "coorbit/kernels.hpp"
#include "coorbit/sampling.hpp"

using namespace coorbit;

namespace {

struct Fixture {
  InducedCover a;
  InducedCover b;
  std::vector<IndexPair> pairs;
  std::vector<Vec> points;

  Fixture() {
    CoverParams p;
    p.window = 32;
    p.self_stats = false;
    Mat ma = Mat::Zero(3, 3);
    ma.diagonal() << 3, 2, 2;
    Mat mb = Mat::Zero(3, 3);
    mb.diagonal() << 2, 2, 3;
    a = build_induced_cover(GroupSpec::cyclic(ma), p);
    b = build_induced_cover(GroupSpec::cyclic(mb), p);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) pairs.emplace_back(i, j);
    points = annulus_points(3, a.r_min, a.r_max, 20000, 1);
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

Exec mode(const benchmark::State& s) { return s.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void BM_intersect_pairs(benchmark::State& state) {
  const auto& f = fixture();
  const auto opts = IntersectOptions::make(3, 256);
  for (auto _ : state) benchmark::DoNotOptimize(intersect_pairs(f.a, f.b, f.pairs, opts, mode(state)));
  state.SetLabel(mode(state) == Exec::Serial ? "serial" : "parallel");
}

void BM_coverage_counts(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(coverage_counts(f.a, f.points, mode(state)));
  state.SetLabel(mode(state) == Exec::Serial ? "serial" : "parallel");
}

void BM_lp_norms(benchmark::State& state) {
  RandomStream rng(2, 2);
  std::vector<std::vector<std::complex<double>>> fields(64, std::vector<std::complex<double>>(1 << 14));
  for (auto& v : fields)
    for (auto& z : v) z = {rng.normal(), rng.normal()};
  for (auto _ : state) benchmark::DoNotOptimize(lp_norms(fields, 1.5, 1e-3, mode(state)));
  state.SetLabel(mode(state) == Exec::Serial ? "serial" : "parallel");
}

}  // namespace

BENCHMARK(BM_intersect_pairs)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_coverage_counts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_lp_norms)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
