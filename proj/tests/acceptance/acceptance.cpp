// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "coorbit/besov.hpp"
#include "coorbit/equiv.hpp"
#include "coorbit/growth.hpp"
#include "coorbit/metric.hpp"
#include "coorbit/sampling.hpp"

using namespace coorbit;

namespace {

struct Check {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
    if (!ok) {
      pass = false;
      detail += " [x]";
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Mat diag(std::initializer_list<double> v) {
  Vec d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) d(k++) = x;
  return d.asDiagonal();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool strictly_increasing(const std::vector<CountTrend>& t, bool ab) {
  for (std::size_t k = 1; k < t.size(); ++k) {
    const int prev = ab ? t[k - 1].max_ab : t[k - 1].max_ba;
    const int cur = ab ? t[k].max_ab : t[k].max_ba;
    if (cur <= prev) return false;
  }
  return t.size() >= 2;
}

bool constant(const std::vector<CountTrend>& t) {
  for (const auto& r : t) {
    if (r.max_ab != t.front().max_ab || r.max_ba != t.front().max_ba) return false;
  }
  return !t.empty();
}

std::string counts(const std::vector<CountTrend>& t) {
  std::string s;
  for (const auto& r : t) s += (s.empty() ? "" : ",") + std::to_string(r.max_ab) + "/" + std::to_string(r.max_ba);
  return s;
}

const GroupSpec kAnisoA = GroupSpec::cyclic(diag({3.0, 2.0, 2.0}));
const GroupSpec kAnisoB = GroupSpec::cyclic(diag({2.0, 2.0, 3.0}));

Mat rotation_generator() {
  Mat x(2, 2);
  x << 1, -1, 1, 1;
  return x;
}

Check ac1() {
  Check o;
  const auto t0 = std::chrono::steady_clock::now();
  EquivConfig cfg;
  cfg.window = 8;
  const auto v = coorbit_equivalence(kAnisoA, kAnisoB, cfg);
  o.require(v.outcome == Outcome::NotEquivalent, "verdict " + to_string(v.outcome));
  const auto& t = v.evidence.count_trends;
  o.require(strictly_increasing(t, true) || strictly_increasing(t, false), "counts " + counts(t));
  const auto e = epsilon_criterion(diag({3.0, 2.0, 2.0}), diag({2.0, 2.0, 3.0}));
  o.require(!e.bounded, e.bounded ? "bounded" : "unbounded");
  o.require(std::abs(e.rate / std::log(1.5) - 1.0) <= 0.05, "rate " + fmt("%.6f", e.rate));
  o.require(std::abs(e.s(5) - 7.59375) <= 1e-9, "s5 " + fmt("%.10f", e.s(5)));
  const double secs = seconds_since(t0);
  o.require(secs < 60.0, fmt("%.1fs", secs));
  return o;
}

Check ac2() {
  Check o;
  const auto t0 = std::chrono::steady_clock::now();
  EquivConfig cfg;
  cfg.window = 8;
  const auto v = coorbit_equivalence(kAnisoA, kAnisoB, cfg);
  CoverParams p;
  p.window = 64;
  p.self_stats = false;
  const auto cb = build_induced_cover(kAnisoB, p);
  const auto ca = build_induced_cover(kAnisoA, p);
  const auto q1 = transition_qi(cb, kAnisoA, ca.base.reference, {8, 16}, cfg);
  const auto q2 = transition_qi(cb, kAnisoA, ca.base.reference, {16, 32}, cfg);
  o.require(q1.certificate.certified && q2.certificate.certified,
            "QI " + q1.certificate.verdict() + "/" + q2.certificate.verdict());
  o.require(std::abs(std::log2(q1.certificate.r1 / q2.certificate.r1)) <= 0.125 + 1e-12,
            "R1 " + fmt("%.4f", q1.certificate.r1) + " -> " + fmt("%.4f", q2.certificate.r1));
  o.require(v.outcome == Outcome::NotEquivalent, "verdict " + to_string(v.outcome));
  const double secs = seconds_since(t0);
  o.require(secs < 30.0, fmt("%.1fs", secs));
  return o;
}

Check ac3() {
  Check o;
  const auto iso = one_param_isotropy_test(rotation_generator());
  o.require(iso.equivalent_to_scalar, iso.equivalent_to_scalar ? "EquivalentToScalar" : "NotEquivalentToScalar");
  o.require(std::abs(iso.max_norm - 1.0) <= 1e-9, "max norm - 1 = " + fmt("%.2e", iso.max_norm - 1.0));
  EquivConfig cfg;
  cfg.window = 8;
  const auto v = coorbit_equivalence(GroupSpec::one_parameter(rotation_generator()), GroupSpec::scalar_similitude(2), cfg);
  o.require(v.outcome == Outcome::Equivalent, "verdict " + to_string(v.outcome));
  o.require(constant(v.evidence.count_trends), "counts " + counts(v.evidence.count_trends));
  return o;
}

Check ac4() {
  Check o;
  const double l3 = std::log(3.0);
  const double l2 = std::log(2.0);
  const auto r = irreducible_partner_test(diag({l3, l2, l2}));
  const double oracle = l3 - std::log(12.0) / 3.0;
  o.require(!r.isotropy.equivalent_to_scalar, r.isotropy.equivalent_to_scalar ? "EquivalentToScalar" : "NotEquivalentToScalar");
  o.require(std::abs(r.isotropy.rate / oracle - 1.0) <= 0.05,
            "rate " + fmt("%.6f", r.isotropy.rate) + " vs " + fmt("%.6f", oracle));
  o.require(r.no_irreducible_partner, r.no_irreducible_partner ? "NoIrreduciblePartner" : "partner possible");
  bool e1 = false;
  if (r.invariant_subspace && r.invariant_subspace->basis.cols() == 1) {
    const Vec b = r.invariant_subspace->basis.col(0);
    e1 = std::abs(std::abs(b(0)) - 1.0) < 1e-9 && b.tail(2).norm() < 1e-9;
  }
  o.require(e1, "invariant subspace span(e1)");
  return o;
}

Check ac5() {
  Check o;
  const auto t0 = std::chrono::steady_clock::now();
  EquivConfig cfg;
  cfg.window = 8;
  const auto cyc = GroupSpec::cyclic(2 * identity(2));
  const auto sc = GroupSpec::scalar_similitude(2);
  const auto c1 = subgroup_cocompact_test(cyc, sc);
  o.require(c1.outcome == CocompactOutcome::Cocompact, "<2I> " + to_string(c1.outcome));
  const auto v1 = coorbit_equivalence(cyc, sc, cfg);
  o.require(v1.outcome == Outcome::Equivalent, "compare " + to_string(v1.outcome));
  const auto line = GroupSpec::one_parameter(identity(2));
  const auto flow = GroupSpec::abelian_flow({diag({1.0, 0.0}), diag({0.0, 1.0})});
  const auto c2 = subgroup_cocompact_test(line, flow);
  o.require(c2.outcome == CocompactOutcome::NotCocompact, "exp(RI) " + to_string(c2.outcome));
  const auto v2 = coorbit_equivalence(line, flow, cfg);
  o.require(v2.outcome == Outcome::NotEquivalent, "compare " + to_string(v2.outcome));
  const auto& t = v2.evidence.count_trends;
  o.require(strictly_increasing(t, true) || strictly_increasing(t, false), "counts " + counts(t));
  const double secs = seconds_since(t0);
  o.require(secs < 60.0, fmt("%.1fs", secs));
  return o;
}

Mat conditioned_matrix(RandomStream& rng, int d) {
  for (;;) {
    Mat m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = rng.normal();
    if (std::abs(m.determinant()) > 0.0 && condition_number(m) <= 20.0) return m;
  }
}

Check ac6() {
  Check o;
  EquivConfig cfg;
  cfg.window = 8;
  RandomStream rng(2024, 6);
  int agree = 0;
  int total = 0;
  const auto thm_a = GroupSpec::one_parameter(rotation_generator());
  const auto thm_b = GroupSpec::scalar_similitude(2);
  for (int k = 0; k < 10; ++k) {
    const auto r1 = conjugation_transport(kAnisoA, kAnisoB, conditioned_matrix(rng, 3), cfg);
    agree += r1.agree && r1.original.outcome == Outcome::NotEquivalent;
    const auto r2 = conjugation_transport(thm_a, thm_b, conditioned_matrix(rng, 2), cfg);
    agree += r2.agree && r2.original.outcome == Outcome::Equivalent;
    total += 2;
  }
  o.require(agree == total, std::to_string(agree) + "/" + std::to_string(total) + " agreements");
  return o;
}

// ---------------------------------------------------------------------------------------------

int word_metric_violations(const GroupSpec& spec, const GeneratingSet& w, const std::vector<GroupElement>& el,
                           const std::function<GroupElement(const GroupElement&)>& translate, int& invariance) {
  const std::size_t n = el.size();
  std::vector<std::vector<ExtendedDistance>> d(n, std::vector<ExtendedDistance>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = word_distance(spec, w, el[i], el[j]);
  int bad = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bad += d[i][i].infinite || d[i][i].value != 0;
    for (std::size_t j = 0; j < n; ++j) {
      bad += !(d[i][j] == d[j][i]);
      if (i != j) bad += !d[i][j].infinite && d[i][j].value == 0;
      for (std::size_t k = 0; k < n; ++k) bad += d[i][j].as_double() > d[i][k].as_double() + d[k][j].as_double();
    }
  }
  invariance = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) invariance += !(word_distance(spec, w, translate(el[i]), translate(el[j])) == d[i][j]);
  return bad;
}

Check ac7() {
  Check o;
  const double ln2 = std::log(2.0);

  // word metric on a 7 x 7 flow window and on 50 words of a free group
  {
    const auto flow = GroupSpec::abelian_flow({diag({1.0, 0.0}), diag({0.0, 1.0})});
    FamilyParams fp;
    fp.window = 3;
    fp.step = 0.5;
    const auto fam = enumerate_family(flow, fp);
    const auto w = GeneratingSet::default_for(flow, ln2);
    const Coords shift{0.7, -1.3};
    int inv = 0;
    const int bad = word_metric_violations(flow, w, fam.elements, [&](const GroupElement& h) {
      return make_element(flow, {(*h.coords)[0] + shift[0], (*h.coords)[1] + shift[1]});
    }, inv);
    
    o.require(bad == 0 && inv == 0 && fam.size() <= 50,
              "flow word metric " + std::to_string(fam.size()) + " el, " + std::to_string(bad) + "+" + std::to_string(inv) + " violations");

    Mat a(2, 2);
    a << 1, 2, 0, 1;
    Mat b(2, 2);
    b << 1, 0, 2, 1;
    const auto f2 = GroupSpec::discrete({a, b});
    FamilyParams dp;
    dp.word_cap = 50;
    const auto dfam = enumerate_family(f2, dp);
    const auto dw = GeneratingSet::from_generators(f2.generators, 16);
    int dinv = 0;
    const int dbad = word_metric_violations(f2, dw, dfam.elements, [&](const GroupElement& h) {
      return GroupElement{b * a * h.matrix, std::nullopt};
    }, dinv);
    o.require(dbad == 0 && dinv == 0 && dfam.size() <= 50,
              "free group word metric " + std::to_string(dfam.size()) + " el, " + std::to_string(dbad) + "+" + std::to_string(dinv) + " violations");
  }

  // chain metric on 50 points of the dyadic cover
  {
    CoverParams p;
    p.window = 16;
    p.self_stats = false;
    const auto c = build_induced_cover(GroupSpec::cyclic(2 * identity(2)), p);
    const auto g = build_chain_graph(c, 16);
    std::vector<Vec> pts;
    RandomStream rng(7, 7);
    for (int k = 0; k < 50; ++k) pts.push_back(std::exp(rng.uniform(-4.0, 4.0)) * rng.unit_vector(2));
    const std::size_t n = pts.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = chain_distance(c, g, pts[i], pts[j], 256).as_double();
    int bad = 0;
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bad += d[i][i] != 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        bad += d[i][j] != d[j][i] || !std::isfinite(d[i][j]);
        for (std::size_t k = 0; k < n; ++k) bad += d[i][j] > d[i][k] + d[k][j];
        if (j > i) inv += chain_distance(c, g, 2.0 * pts[i], 2.0 * pts[j], 256).as_double() != d[i][j];
      }
    }
    o.require(bad == 0 && inv == 0, "chain metric " + std::to_string(bad) + "+" + std::to_string(inv) + " violations");
  }

  // neighbour counts and transition norms at K and 2K
  {
    bool stable = true;
    std::string s;
    Mat shear(2, 2);
    shear << 2, 1, 0, 2;
    for (const auto& spec : {kAnisoA, GroupSpec::cyclic(shear), GroupSpec::one_parameter(rotation_generator()),
                             GroupSpec::similitude(2), GroupSpec::scalar_similitude(3)}) {
      CoverParams p;
      p.window = 16;
      p.self_stats = false;
      const auto c = build_induced_cover(spec, p);
      const auto k1 = self_stats(c, 4, 8, 256);
      const auto k2 = self_stats(c, 8, 16, 256);
      const bool ok = k1.max_count == k2.max_count &&
                      std::abs(k1.max_transition_norm - k2.max_transition_norm) <= 1e-9 * k1.max_transition_norm;
      stable = stable && ok;
      s += (s.empty() ? "" : ",") + std::to_string(k1.max_count) + "=" + std::to_string(k2.max_count);
    }
    o.require(stable, "self stats K/2K " + s);
  }

  // partition of unity, Calderón, Parseval
  {
    CoverParams p;
    p.window = 8;
    p.self_stats = false;
    const PartitionOfUnity pou(std::make_shared<InducedCover>(build_induced_cover(GroupSpec::cyclic(2 * identity(2)), p)));
    double worst = 0.0;
    for (const auto& xi : annulus_points(2, pou.region_lo(), pou.region_hi(), 4096, 11)) {
      double sum = 0.0;
      for (const auto& [i, v] : pou.at(xi)) sum += v;
      worst = std::max(worst, std::abs(sum - 1.0));
    }
    o.require(worst <= 1e-6, "PoU " + fmt("%.1e", worst));

    double cal = 0.0;
    for (const Mat& a : {Mat(2 * identity(2)), diag({3.0, 2.0, 2.0}), diag({2.0, 2.0, 3.0})}) {
      const auto psi = AnalyzingWindow::from_partition(a);
      const auto pts = annulus_points(static_cast<int>(a.rows()), psi.support_lo(), psi.support_hi(), 4096, 12);
      cal = std::max(cal, calderon_check(psi, a, pts));
    }
    o.require(cal <= 1e-4, "Calderon " + fmt("%.1e", cal));

    RandomStream rng(3, 3);
    double parseval = 0.0;
    for (int d = 1; d <= 3; ++d) {
      const auto f = GridFunction::from_spatial(d, d == 3 ? 32 : 64, 4.0, [&](const Vec&) {
        return Complex(rng.normal(), rng.normal());
      });
      parseval = std::max(parseval, std::abs(f.to_frequency().l2_norm() / f.l2_norm() - 1.0));
    }
    o.require(parseval <= 1e-8, "Parseval " + fmt("%.1e", parseval));
  }
  return o;
}

// ---------------------------------------------------------------------------------------------

std::vector<Packet> band_limited_battery(int count, std::uint64_t seed) {
  RandomStream rng(seed, 8);
  std::vector<Packet> out;
  for (int k = 0; k < count; ++k) {
    Packet pk;
    const double r = std::exp(rng.uniform(std::log(1.5), std::log(24.0)));
    pk.center = r * rng.unit_vector(2);
    pk.widths = Vec::Constant(2, rng.uniform(0.2, 0.45) * r);
    pk.modulation = 0.5 * rng.normal_vector(2);
    pk.scale = k;
    out.push_back(pk);
  }
  return out;
}

std::vector<double> direct_over_decomposition(const std::vector<Packet>& battery, int window, int grid) {
  const auto spec = GroupSpec::cyclic(2 * identity(2));
  CoverParams p;
  p.window = window;
  p.self_stats = false;
  const PartitionOfUnity pou(std::make_shared<InducedCover>(build_induced_cover(spec, p)));
  const auto psi = AnalyzingWindow::from_partition(2 * identity(2));
  const auto quad = default_quadrature(spec, window);
  std::vector<double> out;
  for (const auto& pk : battery) {
    const auto f = pk.sample(grid);
    out.push_back(coorbit_norm_direct(f, psi, quad, 1.0, 1.0) / decomposition_norm(f, pou, 1.0, 1.0).norm);
  }
  return out;
}

Check ac8() {
  Check o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto battery = band_limited_battery(20, 8);
  const auto r1 = direct_over_decomposition(battery, 8, 128);
  const auto r2 = direct_over_decomposition(battery, 16, 128);
  const double spread = *std::max_element(r1.begin(), r1.end()) / *std::min_element(r1.begin(), r1.end());
  double drift = 0.0;
  for (std::size_t k = 0; k < r1.size(); ++k) drift = std::max(drift, std::abs(r2[k] / r1[k] - 1.0));
  o.require(spread <= 4.0, "<2I> spread " + fmt("%.3f", spread));
  o.require(drift <= 0.10, "window doubling drift " + fmt("%.2e", drift));

  const auto covers = norm_covers(kAnisoA, kAnisoB, 16, 256, 1);
  const auto scales = scale_battery(3, 1.0, 12.0, 5);
  const auto s11 = compare_norms(covers, scales, 64, 1.0, 1.0);
  std::string trend;
  for (double s : s11.spread_by_scale) trend += (trend.empty() ? "" : ",") + fmt("%.3f", s);
  o.require(s11.increasing, "anisotropic (1,1) spread " + trend);
  const auto s22 = compare_norms(covers, scales, 64, 2.0, 2.0);
  o.require(s22.spread <= 1.5, "anisotropic (2,2) spread " + fmt("%.3f", s22.spread));
  const double secs = seconds_since(t0);
  o.require(secs < 300.0, fmt("%.1fs", secs));
  return o;
}

Check ac9() {
  Check o;
  const double ln2 = std::log(2.0);
  auto run = [&](const char* name, const GroupSpec& spec, double target, double tol, bool linear) {
    const auto r = linear_growth_test(spec, GeneratingSet::default_for(spec, ln2));
    o.require(std::abs(r.exponent - target) <= tol && r.linear == linear,
              std::string(name) + " " + fmt("%.4f", r.exponent) + (r.linear ? " linear" : " nonlinear"));
  };
  run("one-parameter", GroupSpec::one_parameter(rotation_generator()), 1.0, 0.05, true);
  run("cyclic", GroupSpec::cyclic(2 * identity(2)), 1.0, 0.05, true);
  run("scalar", GroupSpec::scalar_similitude(2), 1.0, 0.05, true);
  run("2-flow", GroupSpec::abelian_flow({diag({1.0, 0.0}), diag({0.0, 1.0})}), 2.0, 0.1, false);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}};
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Check o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s %s  %s\n", name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
