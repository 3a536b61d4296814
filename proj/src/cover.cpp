#include "coorbit/cover.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <unordered_map>

#include "coorbit/error.hpp"
#include "coorbit/kernels.hpp"
#include "coorbit/sampling.hpp"
#include "json.hpp"

namespace coorbit {

namespace {

int lattice_radius(GroupKind kind, const std::vector<int>& idx) {
  switch (kind) {
    case GroupKind::AbelianFlow: {
      int r = 0;
      for (int v : idx) r = std::max(r, std::abs(v));
      return r;
    }
    case GroupKind::DiscreteFG:
      return idx.at(0);
    default:
      return std::abs(idx.at(0));
  }
}

bool on_scale_chain(GroupKind kind, const std::vector<int>& idx) {
  switch (kind) {
    case GroupKind::AbelianFlow:
      return std::all_of(idx.begin(), idx.end(), [&](int v) { return v == idx.front(); });
    case GroupKind::Similitude:
      return idx.at(1) == 0;
    default:
      return true;
  }
}

std::vector<double> vec_json(const Vec& v) { return to_vector(v); }

nlohmann::json body_json(const ConvexBody& b) {
  return {{"type", b.type() == ConvexBody::Type::Ellipsoid ? "ellipsoid" : "parallelotope"},
          {"center", vec_json(b.center())},
          {"shape", to_rows(b.shape())}};
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// InducedCover

int InducedCover::radius_of(std::size_t i) const { return lattice_radius(spec.kind, elements.at(i).lattice); }

std::vector<std::size_t> InducedCover::containing(const Vec& xi, Closure closure) const {
  std::vector<std::size_t> out;
  const double r = xi.norm();
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto& e = elements[i];
    if (r < e.radial_lo || r > e.radial_hi) continue;
    if (e.geometry.contains(xi, closure)) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> InducedCover::lowest_containing(const Vec& xi) const {
  const double r = xi.norm();
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto& e = elements[i];
    if (r < e.radial_lo || r > e.radial_hi) continue;
    if (e.geometry.contains(xi, Closure::Open)) return i;
  }
  return std::nullopt;
}

double InducedCover::log_half_thickness() const { return 0.5 * std::log(shell_ratio); }

double InducedCover::margin(std::size_t i, const Vec& xi) const {
  return elements.at(i).geometry.margin(xi, log_half_thickness());
}

double default_shell_ratio(const GroupSpec& spec, double step) {
  const Mat f = spec.frame_matrix();
  const Mat f_inv = inverse(f);
  double m = 1.0;
  for (const auto& s : step_matrices(spec, step)) {
    const Mat t = f * s * f_inv;
    m = std::max({m, spectral_norm(t), spectral_norm(inverse(t))});
  }
  return 2.0 * m;
}

std::vector<Vec> annulus_points(int dim, double lo, double hi, int count, std::uint64_t seed) {
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(count));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int k = 0; k < count; ++k) {
    RandomStream rng(seed, static_cast<std::uint64_t>(k));
    const double r = std::exp(a + (b - a) * (k + rng.uniform()) / count);
    Vec u;
    if (dim == 1) {
      u = Vec::Constant(1, rng.uniform() < 0.5 ? -1.0 : 1.0);
    } else {
      u = rng.unit_vector(dim);
    }
    out.push_back(r * u);
  }
  return out;
}

std::optional<Vec> find_coverage_gap(const InducedCover& cover, double lo, double hi, int samples,
                                     std::uint64_t seed) {
  auto pts = annulus_points(cover.spec.dim, lo, hi, samples, seed);
  std::erase_if(pts, [&](const Vec& p) { return !cover.spec.support.contains(p); });
  const auto counts = coverage_counts(cover, pts);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (counts[k] == 0) return pts[k];
  }
  return std::nullopt;
}

namespace {

/// Innermost and outermost radii along u reachable from the base through covered points of
/// the scale chain, on a geometric grid of ratio g.
std::pair<double, double> scan_ray(const InducedCover& c, const Vec& u, double start, double g, double cap_lo,
                                   double cap_hi) {
  auto covered = [&](double t) {
    const Vec p = t * u;
    for (std::size_t i : c.scale_chain) {
      const auto& e = c.elements[i];
      if (t < e.radial_lo || t > e.radial_hi) continue;
      if (e.geometry.contains(p, Closure::Open)) return true;
    }
    return false;
  };
  if (!covered(start)) {
    throw CoverConstructionError("base set does not contain its scan start point", to_vector(Vec(start * u)));
  }
  double hi = start;
  while (hi * g < cap_hi && covered(hi * g)) hi *= g;
  double lo = start;
  while (lo / g > cap_lo && covered(lo / g)) lo /= g;
  return {lo, hi};
}

}  // namespace

InducedCover build_induced_cover(const GroupSpec& spec, const CoverParams& params) {
  if (params.window < 1) throw ConfigurationError("cover window must be >= 1");
  if (params.budget < 64) throw ConfigurationError("intersection sample budget must be >= 64");
  const auto adm = admissibility_precheck(spec);
  if (!adm.admissible) throw DomainError("group fails its admissibility precheck: " + adm.detail);

  InducedCover c;
  c.spec = spec;
  c.params = params;
  c.window = params.window;
  const int d = spec.dim;
  const double rho = params.shell_ratio.value_or(default_shell_ratio(spec, params.step));
  if (!(rho > 1.0)) throw ConfigurationError("shell ratio must exceed 1");
  c.shell_ratio = rho;
  const Mat ft = spec.frame_matrix().transpose();
  Vec e1 = Vec::Zero(d);
  e1(0) = 1.0;
  if (d == 1) {
    Vec mid = Vec::Constant(1, 0.5 * (1.0 + rho));
    const ConvexBody pos = ConvexBody::ball(mid, 0.5 * (rho - 1.0)).linear_image(ft);
    const ConvexBody neg = ConvexBody::ball(Vec(-mid), 0.5 * (rho - 1.0)).linear_image(ft);
    c.sheets = {Region{pos}, Region{neg}};
    const double q = std::pow(rho, 0.25);
    Vec cm = Vec::Constant(1, 0.5 * (q + q * q * q));
    c.core = Region{ConvexBody::ball(cm, 0.5 * (q * q * q - q)).linear_image(ft)};
    c.base = BaseSet::make(c.sheets[0], Vec(ft * Vec::Constant(1, std::sqrt(rho))));
  } else {
    const Shell q = Shell::annulus(Vec::Zero(d), 1.0, rho).linear_image(ft);
    c.sheets = {Region{q}};
    c.core = Region{Shell::annulus(Vec::Zero(d), std::pow(rho, 0.25), std::pow(rho, 0.75)).linear_image(ft)};
    c.base = BaseSet::make(c.sheets[0], Vec(ft * (std::sqrt(rho) * e1)));
  }

  FamilyParams fp;
  fp.window = params.window;
  fp.step = params.step;
  fp.rotation_net = params.rotation_net;
  fp.word_cap = params.word_cap;
  c.family = enumerate_family(spec, fp);

  for (std::size_t f = 0; f < c.family.size(); ++f) {
    const auto& h = c.family.elements[f];
    for (std::size_t s = 0; s < c.sheets.size(); ++s) {
      CoverElement e;
      e.index = c.elements.size();
      e.lattice = c.family.indices[f];
      e.sheet = d == 1 ? (s == 0 ? 1 : -1) : 0;
      e.family_index = f;
      e.transform = h;
      e.geometry = c.sheets[s].dual_image(h.matrix);
      e.radial_lo = e.geometry.radial_lo();
      e.radial_hi = e.geometry.radial_hi();
      if (spec.support.is_default() && !(e.radial_lo > 0.0)) {
        throw CoverConstructionError("cover element " + std::to_string(e.index) + " reaches the origin",
                                     std::vector<double>(static_cast<std::size_t>(d), 0.0));
      }
      if (on_scale_chain(spec.kind, e.lattice)) c.scale_chain.push_back(e.index);
      c.elements.push_back(std::move(e));
    }
  }

  // Window annulus: radii reachable from the base along every sampled ray.
  const double g = std::pow(2.0, 1.0 / 32.0);
  double cap_lo = std::numeric_limits<double>::infinity();
  double cap_hi = 0.0;
  for (std::size_t i : c.scale_chain) {
    cap_lo = std::min(cap_lo, c.elements[i].radial_lo);
    cap_hi = std::max(cap_hi, c.elements[i].radial_hi);
  }
  double r_min = 0.0;
  double r_max = std::numeric_limits<double>::infinity();
  auto dirs = sphere_directions(d, d == 1 ? 2 : 64 * (d - 1));
  if (d > 1) {
    // Anisotropic elements reach their extreme radii along singular directions that generic
    // rays miss.
    std::vector<Vec> extra;
    for (std::size_t i : c.scale_chain) {
      const auto& sh = std::get<Shell>(c.elements[i].geometry.geom);
      for (const Mat* g : {&sh.outer().gauge_map(), &sh.inner().gauge_map()}) {
        Eigen::JacobiSVD<Mat> svd(*g, Eigen::ComputeFullV);
        for (int k = 0; k < d; ++k) {
          const Vec v = svd.matrixV().col(k);
          for (const Vec& w : {v, Vec(-v)}) {
            const bool seen = std::any_of(extra.begin(), extra.end(), [&](const Vec& x) { return (x - w).norm() < 1e-9; });
            if (!seen) extra.push_back(w);
          }
        }
      }
    }
    dirs.insert(dirs.end(), extra.begin(), extra.end());
  }
  for (const auto& u : dirs) {
    double start;
    if (d == 1) {
      const auto& sheet = c.sheets[u(0) > 0 ? 0 : 1].outer();
      start = std::abs(sheet.center()(0));
    } else {
      const auto& sh = std::get<Shell>(c.sheets[0].geom);
      start = 1.0 / std::sqrt(sh.outer().gauge(u) * sh.inner().gauge(u));
    }
    const auto [lo, hi] = scan_ray(c, u, start, g, cap_lo, cap_hi);
    r_min = std::max(r_min, lo);
    r_max = std::min(r_max, hi);
  }
  c.r_min = r_min * g;
  c.r_max = r_max / g;
  if (!(c.r_min < c.r_max)) {
    throw CoverConstructionError("window annulus is empty; enlarge the window", to_vector(Vec(r_min * e1)));
  }

  c.min_best_margin = 1.0;
  if (params.verify_coverage) {
    auto pts = annulus_points(d, c.r_min, c.r_max, params.coverage_samples, mix_seed(params.seed, 0xC0FE));
    std::erase_if(pts, [&](const Vec& p) { return !spec.support.contains(p); });
    const auto counts = coverage_counts(c, pts);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (counts[k] == 0) throw CoverConstructionError("coverage gap in the window annulus", to_vector(pts[k]));
    }
    // margins near the window edge reflect truncation, not the cover
    const double mid = 0.5 * (std::log(c.r_min) + std::log(c.r_max));
    const double quarter = 0.25 * (std::log(c.r_max) - std::log(c.r_min));
    for (const auto& p : pts) {
      if (std::abs(std::log(p.norm()) - mid) > quarter) continue;
      double best = 0.0;
      for (std::size_t i : c.containing(p)) best = std::max(best, c.margin(i, p));
      c.min_best_margin = std::min(c.min_best_margin, best);
    }
  }

  if (params.self_stats) {
    const int sr = std::min(params.window / 2, spec.chart_dim() > 1 && spec.kind != GroupKind::Similitude ? 1 : 4);
    c.self = self_stats(c, sr, params.window, params.budget);
  }
  return c;
}

// ---------------------------------------------------------------------------------------------
// Pairwise statuses and neighbour counts

PairCache::PairCache(const InducedCover& a, const InducedCover& b, const IntersectOptions& opts)
    : a_(a), b_(b), opts_(opts), table_(a.size() * b.size(), -1) {
  if (a.spec.dim != b.spec.dim) throw ConfigurationError("covers differ in dimension");
  if (!opts_.directions) opts_ = IntersectOptions::make(a.spec.dim, opts.budget, opts.closure);
}

void PairCache::fill(int ra, int rb) {
  std::vector<IndexPair> todo;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (a_.radius_of(i) > ra) continue;
    for (std::size_t j = 0; j < b_.size(); ++j) {
      if (b_.radius_of(j) > rb) continue;
      if (table_[i * b_.size() + j] < 0) todo.emplace_back(i, j);
    }
  }
  const auto st = intersect_pairs(a_, b_, todo, opts_);
  for (std::size_t k = 0; k < todo.size(); ++k) {
    table_[todo[k].first * b_.size() + todo[k].second] = static_cast<std::int8_t>(st[k]);
  }
}

bool PairCache::known(std::size_t i, std::size_t j) const { return table_.at(i * b_.size() + j) >= 0; }

IntersectStatus PairCache::status(std::size_t i, std::size_t j) const {
  const auto v = table_.at(i * b_.size() + j);
  if (v < 0) throw ConfigurationError("pair status requested before it was computed");
  return static_cast<IntersectStatus>(v);
}

int NeighborTable::max_interior() const {
  int m = 0;
  for (const auto& r : rows) {
    if (r.interior) m = std::max(m, r.count);
  }
  return m;
}

double NeighborTable::sampled_ratio() const {
  long ex = 0;
  long sa = 0;
  for (const auto& r : rows) {
    ex += r.exact;
    sa += r.sampled;
  }
  return ex + sa == 0 ? 0.0 : static_cast<double>(sa) / static_cast<double>(ex + sa);
}

NeighborTable count_neighbors(const PairCache& cache, bool transposed, int source_radius, int target_radius,
                              int interior_radius) {
  const InducedCover& src = transposed ? cache.b() : cache.a();
  const InducedCover& dst = transposed ? cache.a() : cache.b();
  NeighborTable t;
  t.source_radius = source_radius;
  t.target_radius = target_radius;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src.radius_of(i) > source_radius) continue;
    NeighborRow row;
    row.source = i;
    row.interior = src.radius_of(i) <= interior_radius;
    for (std::size_t j = 0; j < dst.size(); ++j) {
      if (dst.radius_of(j) > target_radius) continue;
      const auto s = transposed ? cache.status(j, i) : cache.status(i, j);
      if (s == IntersectStatus::Intersecting || s == IntersectStatus::Disjoint) ++row.exact; else ++row.sampled;
      if (is_intersecting(s)) ++row.count;
    }
    t.rows.push_back(row);
  }
  return t;
}

NeighborTables neighbor_counts(const InducedCover& a, const InducedCover& b, int budget) {
  PairCache cache(a, b, IntersectOptions::make(a.spec.dim, budget));
  cache.fill(a.window, b.window);
  NeighborTables out;
  out.forward = count_neighbors(cache, false, a.window, b.window, a.window / 2);
  out.transposed = count_neighbors(cache, true, b.window, a.window, b.window / 2);
  return out;
}

SelfStats self_stats(const InducedCover& cover, int source_radius, int target_radius, int budget) {
  PairCache cache(cover, cover, IntersectOptions::make(cover.spec.dim, budget));
  cache.fill(source_radius, target_radius);
  SelfStats s;
  s.source_radius = source_radius;
  const auto t = count_neighbors(cache, false, source_radius, target_radius, source_radius);
  s.max_count = t.max_interior();
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (cover.radius_of(i) > source_radius) continue;
    for (std::size_t j = 0; j < cover.size(); ++j) {
      if (cover.radius_of(j) > target_radius || !is_intersecting(cache.status(i, j))) continue;
      // ‖h_i^T h_j^{-T}‖ = ‖h_j^{-1} h_i‖
      const Mat m = inverse(cover.elements[j].transform.matrix) * cover.elements[i].transform.matrix;
      s.max_transition_norm = std::max(s.max_transition_norm, spectral_norm(m));
    }
  }
  return s;
}

// ---------------------------------------------------------------------------------------------
// Properness and support diagnostics

PropernessResult properness_check(const GroupSpec& spec, const Shell& c, int window, double step, int budget) {
  FamilyParams fp;
  fp.window = window;
  fp.step = step;
  fp.word_cap = 100000;
  const auto fam = enumerate_family(spec, fp);
  const auto opts = IntersectOptions::make(spec.dim, budget, Closure::Closed);
  PropernessResult r;
  r.growth.assign(static_cast<std::size_t>(window) + 1, 0);
  const Region base{c};
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const Mat& h = fam.elements[i].matrix;
    const Region image{c.linear_image(h.transpose())};
    if (!is_intersecting(intersects(base, image, opts))) continue;
    PropernessMember m{fam.indices[i], spectral_norm(h)};
    const int rad = lattice_radius(spec.kind, m.lattice);
    for (int k = rad; k <= window; ++k) ++r.growth[static_cast<std::size_t>(k)];
    r.max_norm = std::max(r.max_norm, m.norm);
    r.members.push_back(std::move(m));
  }
  r.bounded = r.growth[static_cast<std::size_t>(window)] == r.growth[static_cast<std::size_t>(window / 2)];
  return r;
}

double Bump::operator()(const Vec& xi) const {
  if (amplitude == 0.0) return 0.0;
  const double s = (xi - center).squaredNorm() / (radius * radius);
  if (s >= 1.0) return 0.0;
  return amplitude * std::exp(1.0 - 1.0 / (1.0 - s));
}

DivergenceResult support_divergence_test(const GroupSpec& spec, const Shell& c, const Bump& f, const Vec& xi0,
                                         int window, double step, int net) {
  if (f(xi0) <= 0.0 && f.amplitude != 0.0) throw ConfigurationError("bump must be positive at the reference point");
  FamilyParams fp;
  fp.window = window;
  fp.step = step;
  fp.word_cap = 100000;
  const auto fam = enumerate_family(spec, fp);
  std::vector<Vec> pts = region_samples(Region{c}, sphere_directions(spec.dim, net), 0.0);
  for (const auto& u : sphere_directions(spec.dim, net)) {
    const Vec po = c.outer().boundary_point(u);
    const Vec pi = c.inner().boundary_point(u);
    pts.push_back(0.75 * pi + 0.25 * po);
    pts.push_back(0.25 * pi + 0.75 * po);
  }
  double cell = 1.0;
  switch (spec.kind) {
    case GroupKind::OneParameter:
    case GroupKind::ScalarSimilitude:
      cell = step;
      break;
    case GroupKind::AbelianFlow:
      cell = std::pow(step, static_cast<double>(spec.generators.size()));
      break;
    case GroupKind::Similitude:
      cell = step * (spec.dim == 2 ? 2.0 * std::numbers::pi : 8.0 * std::numbers::pi * std::numbers::pi) / fp.rotation_net;
      break;
    default:
      break;
  }
  DivergenceResult r;
  r.partial_sums.assign(static_cast<std::size_t>(window), 0.0);
  std::vector<double> by_radius(static_cast<std::size_t>(window) + 1, 0.0);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto& h = fam.elements[i];
    const Mat ht = h.matrix.transpose();
    double sup = 0.0;
    for (const auto& p : pts) sup = std::max(sup, f(Vec(ht * p)));
    const int rad = lattice_radius(spec.kind, fam.indices[i]);
    by_radius[static_cast<std::size_t>(rad)] += sup * haar_weight(spec, h) * cell;
  }
  double acc = by_radius[0];
  for (int k = 1; k <= window; ++k) {
    acc += by_radius[static_cast<std::size_t>(k)];
    r.partial_sums[static_cast<std::size_t>(k - 1)] = acc;
  }
  r.value = acc;
  const double earlier = r.partial_sums[static_cast<std::size_t>(std::max(0, (3 * window) / 4 - 1))];
  r.finite = !(acc - earlier > 0.1 * acc);
  return r;
}

// ---------------------------------------------------------------------------------------------
// Connected hull

HullRegion HullRegion::annulus(int dim, double r0, double r1) {
  return {[r0, r1](const Vec& x) {
            const double r = x.norm();
            return std::min(r - r0, r1 - r);
          },
          dim};
}

HullRegion HullRegion::punctured(int dim) {
  return {[](const Vec& x) { return x.norm(); }, dim};
}

HullRegion HullRegion::half_space(const Vec& normal) {
  const Vec n = normal / normal.norm();
  return {[n](const Vec& x) { return n.dot(x); }, static_cast<int>(normal.size())};
}

bool ConnectedHull::contains(const Vec& xi) const {
  for (const auto& b : balls) {
    if ((xi - b.center).norm() <= b.radius) return true;
  }
  for (const auto& path : paths) {
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      const Vec seg = path[k + 1] - path[k];
      const double len2 = seg.squaredNorm();
      const double t = len2 > 0.0 ? std::clamp((xi - path[k]).dot(seg) / len2, 0.0, 1.0) : 0.0;
      if ((path[k] + t * seg - xi).norm() <= 1e-9 * std::max(1.0, xi.norm())) return true;
    }
  }
  return false;
}

ConnectedHull connected_hull(const std::vector<Vec>& points, const HullRegion& region, std::size_t grid_budget) {
  if (points.empty()) throw ConfigurationError("connected_hull needs at least one point");
  const int d = region.dim;
  ConnectedHull hull;
  double min_margin = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    const double m = region.margin(p);
    if (!(m > 0.0)) throw ConfigurationError("connected_hull point is not inside the region");
    hull.balls.push_back({p, 0.5 * m});
    min_margin = std::min(min_margin, m);
  }
  if (points.size() == 1) {
    hull.connected = true;
    return hull;
  }
  Vec lo = points[0];
  Vec hi = points[0];
  for (const auto& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double diam = (hi - lo).norm();
  lo.array() -= diam + min_margin;
  hi.array() += diam + min_margin;

  double h = 0.5 * min_margin;
  std::vector<long> n(static_cast<std::size_t>(d));
  auto total = [&]() {
    double t = 1.0;
    for (int k = 0; k < d; ++k) {
      n[static_cast<std::size_t>(k)] = static_cast<long>(std::ceil((hi(k) - lo(k)) / h)) + 1;
      t *= static_cast<double>(n[static_cast<std::size_t>(k)]);
    }
    return t;
  };
  while (total() > static_cast<double>(grid_budget)) h *= 1.25;

  auto node_point = [&](long id) {
    Vec x(d);
    for (int k = 0; k < d; ++k) {
      x(k) = lo(k) + h * static_cast<double>(id % n[static_cast<std::size_t>(k)]);
      id /= n[static_cast<std::size_t>(k)];
    }
    return x;
  };
  const long count = static_cast<long>(total());
  std::vector<std::int8_t> valid(static_cast<std::size_t>(count), -1);
  auto is_valid = [&](long id) {
    auto& v = valid[static_cast<std::size_t>(id)];
    if (v < 0) v = region.margin(node_point(id)) > 0.5 * h * (1.0 + 1e-9) ? 1 : 0;
    return v == 1;
  };
  auto segment_inside = [&](const Vec& a, const Vec& b) {
    for (int s = 0; s <= 16; ++s) {
      if (!(region.margin(a + (b - a) * (s / 16.0)) > 0.0)) return false;
    }
    return true;
  };
  auto attach = [&](const Vec& p) -> long {
    std::vector<long> cell(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) cell[static_cast<std::size_t>(k)] = static_cast<long>(std::floor((p(k) - lo(k)) / h));
    long best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int corner = 0; corner < (1 << d); ++corner) {
      long id = 0;
      long st = 1;
      for (int k = 0; k < d; ++k) {
        id += st * (cell[static_cast<std::size_t>(k)] + ((corner >> k) & 1));
        st *= n[static_cast<std::size_t>(k)];
      }
      if (id < 0 || id >= count || !is_valid(id)) continue;
      const Vec x = node_point(id);
      if (!segment_inside(p, x)) continue;
      const double dist = (x - p).norm();
      if (dist < best_dist) {
        best_dist = dist;
        best = id;
      }
    }
    return best;
  };

  std::vector<long> anchors;
  for (const auto& p : points) {
    const long a = attach(p);
    if (a < 0) throw RegionDisconnectedOrTooTight("no grid node reachable from an input point; region too tight");
    anchors.push_back(a);
  }
  std::unordered_map<long, long> parent;
  std::deque<long> queue;
  parent[anchors[0]] = anchors[0];
  queue.push_back(anchors[0]);
  while (!queue.empty()) {
    const long cur = queue.front();
    queue.pop_front();
    long stride = 1;
    long rem = cur;
    for (int k = 0; k < d; ++k) {
      const long coord = rem % n[static_cast<std::size_t>(k)];
      rem /= n[static_cast<std::size_t>(k)];
      for (int dir : {-1, 1}) {
        const long c2 = coord + dir;
        if (c2 < 0 || c2 >= n[static_cast<std::size_t>(k)]) continue;
        const long nb = cur + dir * stride;
        if (parent.count(nb) || !is_valid(nb)) continue;
        parent[nb] = cur;
        queue.push_back(nb);
      }
      stride *= n[static_cast<std::size_t>(k)];
    }
  }
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (!parent.count(anchors[k])) {
      throw RegionDisconnectedOrTooTight("input points lie in different components of the grid-restricted region");
    }
    std::vector<Vec> path{points[k]};
    for (long id = anchors[k];; id = parent[id]) {
      path.push_back(node_point(id));
      if (id == anchors[0]) break;
    }
    path.push_back(points[0]);
    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
      if (!segment_inside(path[s], path[s + 1])) {
        throw RegionDisconnectedOrTooTight("hull path leaves the region");
      }
    }
    hull.paths.push_back(std::move(path));
  }
  hull.connected = true;
  return hull;
}

// ---------------------------------------------------------------------------------------------
// Support comparison

SupportComparison support_equality_test(const GroupSpec& a, const GroupSpec& b, const CoverParams& params,
                                        int samples) {
  if (a.dim != b.dim) throw ConfigurationError("support comparison needs equal dimensions");
  CoverParams p = params;
  p.self_stats = false;
  std::vector<InducedCover> ca{build_induced_cover(a, p)};
  std::vector<InducedCover> cb{build_induced_cover(b, p)};
  const double lo = std::max(ca[0].r_min, cb[0].r_min);
  const double hi = std::min(ca[0].r_max, cb[0].r_max);
  if (!(lo < hi)) throw ConfigurationError("window annuli of the two covers do not overlap");

  // Membership is definitive when the oracle excludes ξ or windows grown twice still miss it.
  auto member = [&](const GroupSpec& spec, std::vector<InducedCover>& covers, const Vec& xi) {
    if (!spec.support.contains(xi)) return false;
    for (std::size_t level = 0; level < 3; ++level) {
      if (level == covers.size()) {
        CoverParams grown = p;
        grown.window = p.window << level;
        grown.verify_coverage = false;
        covers.push_back(build_induced_cover(spec, grown));
      }
      if (covers[level].covers(xi)) return true;
    }
    return false;
  };

  SupportComparison r;
  for (const auto& xi : annulus_points(a.dim, lo, hi, samples, mix_seed(params.seed, 0x5EED))) {
    const bool in_a = member(a, ca, xi);
    const bool in_b = member(b, cb, xi);
    ++r.samples;
    if (in_a && in_b) {
      ++r.both;
    } else if (in_a) {
      ++r.only_a;
    } else if (in_b) {
      ++r.only_b;
    } else {
      ++r.neither;
    }
    if (in_a != in_b && r.equal) {
      r.equal = false;
      r.witness = xi;
      r.witness_side = in_a ? "A" : "B";
    }
  }
  return r;
}

// ---------------------------------------------------------------------------------------------
// Export

std::string cover_to_json(const InducedCover& cover) {
  nlohmann::json elems = nlohmann::json::array();
  for (const auto& e : cover.elements) {
    nlohmann::json j{{"index", e.index}, {"lattice", e.lattice}, {"matrix", to_rows(e.transform.matrix)}};
    if (cover.spec.dim == 1) j["sheet"] = e.sheet;
    if (const auto* s = std::get_if<Shell>(&e.geometry.geom)) {
      j["outer"] = body_json(s->outer());
      j["inner"] = body_json(s->inner());
    } else {
      j["outer"] = body_json(e.geometry.outer());
    }
    elems.push_back(std::move(j));
  }
  nlohmann::json out{{"kind", to_string(cover.spec.kind)},
                     {"dim", cover.spec.dim},
                     {"window", cover.window},
                     {"shellRatio", cover.shell_ratio},
                     {"rMin", cover.r_min},
                     {"rMax", cover.r_max},
                     {"elements", std::move(elems)}};
  return out.dump(2) + "\n";
}

std::string cover_adjacency_csv(const InducedCover& cover) {
  PairCache cache(cover, cover, IntersectOptions::make(cover.spec.dim, cover.params.budget));
  cache.fill(cover.window, cover.window);
  std::string out = "i,j,status\n";
  for (std::size_t i = 0; i < cover.size(); ++i) {
    for (std::size_t j = i; j < cover.size(); ++j) {
      const auto s = cache.status(i, j);
      if (!is_intersecting(s)) continue;
      out += std::to_string(i) + "," + std::to_string(j) + "," + to_string(s) + "\n";
    }
  }
  return out;
}

}  // namespace coorbit
