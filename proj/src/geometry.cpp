#include "coorbit/geometry.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

#include "coorbit/error.hpp"
#include "coorbit/sampling.hpp"

namespace coorbit {

namespace {

constexpr double kTol = 1e-12;
constexpr double kClosedSlack = 1e-9;

/// min_{|u| ≤ 1} |G u + w|: interior least-squares solution or bisection on the Lagrange
/// multiplier of the sphere constraint (|u(λ)| is decreasing in λ).
double min_over_ball(const Mat& g, const Vec& w) {
  const int d = static_cast<int>(g.cols());
  Eigen::FullPivLU<Mat> lu(g);
  if (lu.isInvertible()) {
    const Vec u = lu.solve(Vec(-w));
    if (u.norm() <= 1.0) return 0.0;
  }
  const Mat gtg = g.transpose() * g;
  Eigen::SelfAdjointEigenSolver<Mat> es(gtg);
  const Vec s = es.eigenvalues();
  const Mat v = es.eigenvectors();
  const Vec b = v.transpose() * (g.transpose() * w);
  auto unorm2 = [&](double lam) {
    double acc = 0.0;
    for (int i = 0; i < d; ++i) {
      const double den = std::max(s(i), 0.0) + lam;
      acc += den > 0.0 ? (b(i) * b(i)) / (den * den) : std::numeric_limits<double>::infinity();
    }
    return acc;
  };
  double lo = 0.0;
  double hi = std::max(b.norm(), 1e-300);
  while (unorm2(hi) > 1.0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (unorm2(mid) > 1.0) lo = mid; else hi = mid;
  }
  Vec coeff(d);
  for (int i = 0; i < d; ++i) coeff(i) = -b(i) / (std::max(s(i), 0.0) + hi);
  Vec u = v * coeff;
  const double un = u.norm();
  if (un > 0.0) u /= un;
  return (g * u + w).norm();
}

/// min_{‖u‖_∞ ≤ 1} |G u + w| by enumerating all 3^d faces of the box; the convex minimum is
/// the unconstrained minimum of the face whose relative interior contains it.
double min_over_box(const Mat& g, const Vec& w) {
  const int d = static_cast<int>(g.cols());
  int patterns = 1;
  for (int i = 0; i < d; ++i) patterns *= 3;
  double best = std::numeric_limits<double>::infinity();
  for (int p = 0; p < patterns; ++p) {
    Vec u = Vec::Zero(d);
    std::vector<int> free_idx;
    int code = p;
    for (int i = 0; i < d; ++i) {
      const int c = code % 3;
      code /= 3;
      if (c == 0) free_idx.push_back(i); else u(i) = (c == 1) ? -1.0 : 1.0;
    }
    if (!free_idx.empty()) {
      const int nf = static_cast<int>(free_idx.size());
      Eigen::MatrixXd gf(g.rows(), nf);
      for (int k = 0; k < nf; ++k) gf.col(k) = g.col(free_idx[static_cast<std::size_t>(k)]);
      const Eigen::VectorXd rhs = -(Eigen::VectorXd(w) + Eigen::MatrixXd(g) * Eigen::VectorXd(u));
      const Eigen::VectorXd sol = gf.colPivHouseholderQr().solve(rhs);
      bool feasible = true;
      for (int k = 0; k < nf; ++k) {
        if (std::abs(sol(k)) > 1.0 + 1e-14) feasible = false;
        u(free_idx[static_cast<std::size_t>(k)]) = std::clamp(sol(k), -1.0, 1.0);
      }
      if (!feasible) continue;
    }
    best = std::min(best, (g * u + w).norm());
  }
  return best;
}

Vec generalized_cross(const std::vector<Vec>& vs, int d) {
  Vec n(d);
  Mat m(d, d);
  for (int r = 0; r < d - 1; ++r) m.row(r) = vs[static_cast<std::size_t>(r)].transpose();
  for (int i = 0; i < d; ++i) {
    m.row(d - 1).setZero();
    m(d - 1, i) = 1.0;
    n(i) = m.determinant();
  }
  return n;
}

void choose(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// Separating-axis test for two parallelotopes. Their Minkowski difference is a zonotope whose
/// facet normals are generalized cross products of d − 1 of the 2d edge generators, so the
/// candidate axis list is complete in every dimension.
bool parallelotopes_intersect(const ConvexBody& a, const ConvexBody& b, Closure closure) {
  const int d = a.dim();
  std::vector<Vec> gens;
  for (int i = 0; i < d; ++i) gens.push_back(a.shape().col(i));
  for (int i = 0; i < d; ++i) gens.push_back(b.shape().col(i));
  std::vector<Vec> normals;
  if (d == 1) {
    Vec n(1);
    n(0) = 1.0;
    normals.push_back(n);
  } else {
    std::vector<std::vector<int>> combos;
    std::vector<int> cur;
    choose(static_cast<int>(gens.size()), d - 1, 0, cur, combos);
    for (const auto& c : combos) {
      std::vector<Vec> vs;
      for (int i : c) vs.push_back(gens[static_cast<std::size_t>(i)]);
      Vec n = generalized_cross(vs, d);
      const double nn = n.norm();
      if (nn > 1e-12) normals.push_back(n / nn);
    }
  }
  const Vec delta = a.center() - b.center();
  for (const auto& n : normals) {
    double reach = 0.0;
    for (const auto& g : gens) reach += std::abs(n.dot(g));
    const double gap = std::abs(n.dot(delta)) - reach;
    const double scale = std::max(1.0, reach);
    if (closure == Closure::Closed ? gap > kTol * scale : gap >= -kTol * scale) return false;
  }
  return true;
}

bool bodies_intersect(const ConvexBody& a, const ConvexBody& b, Closure closure) {
  double m;
  if (a.type() == ConvexBody::Type::Parallelotope && b.type() == ConvexBody::Type::Parallelotope) {
    return parallelotopes_intersect(a, b, closure);
  }
  if (b.type() == ConvexBody::Type::Ellipsoid) {
    m = min_gauge_over(a, b);
  } else {
    m = min_gauge_over(b, a);
  }
  return closure == Closure::Closed ? m <= 1.0 + 1e-10 : m < 1.0 - 1e-10;
}

/// outer(o) ⊆ inner (closed inner when `strict` is false, interior when true).
std::optional<bool> body_inside(const ConvexBody& o, const ConvexBody& inner, bool strict) {
  auto ok = [&](double v) { return strict ? v < 1.0 - kTol : v <= 1.0 + kTol; };
  if (o.type() == ConvexBody::Type::Parallelotope) {
    for (const auto& v : o.vertices()) {
      if (!ok(inner.gauge(v))) return false;
    }
    return true;
  }
  if (inner.type() == ConvexBody::Type::Parallelotope) {
    const Mat& g = inner.gauge_map();
    for (int i = 0; i < g.rows(); ++i) {
      const Vec row = g.row(i).transpose();
      const double hi = o.support(row) - row.dot(inner.center());
      const double lo = -(o.support(Vec(-row)) + row.dot(inner.center()));
      if (!ok(std::max(hi, -lo))) return false;
    }
    return true;
  }
  if ((o.center() - inner.center()).norm() <= 1e-14 * std::max(1.0, o.center().norm())) {
    return ok(spectral_norm(inner.gauge_map() * inverse(o.gauge_map())));
  }
  return std::nullopt;
}

bool same_body(const ConvexBody& a, const ConvexBody& b) {
  return a.type() == b.type() && a.center() == b.center() && a.shape() == b.shape();
}

bool same_region(const Region& a, const Region& b) {
  const auto* sa = std::get_if<Shell>(&a.geom);
  const auto* sb = std::get_if<Shell>(&b.geom);
  if (sa && sb) return same_body(sa->outer(), sb->outer()) && same_body(sa->inner(), sb->inner());
  if (!sa && !sb) return same_body(a.outer(), b.outer());
  return false;
}

bool contains_relaxed(const Region& r, const Vec& x, Closure closure) {
  if (closure == Closure::Open) return r.contains(x, Closure::Open);
  if (const auto* s = std::get_if<Shell>(&r.geom)) {
    return s->outer().gauge(x) <= 1.0 + kClosedSlack && s->inner().gauge(x) >= 1.0 - kClosedSlack;
  }
  return std::get<ConvexBody>(r.geom).gauge(x) <= 1.0 + kClosedSlack;
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// ConvexBody

ConvexBody::ConvexBody(Type t, Vec c, Mat shape) : type_(t), center_(std::move(c)), shape_(std::move(shape)) {
  validate_matrix(shape_, "convex body shape");
  if (center_.size() != shape_.rows()) throw ConfigurationError("convex body center has the wrong dimension");
  require_nonsingular(shape_, "convex body shape");
  gauge_map_ = (t == Type::Ellipsoid) ? shape_ : inverse(shape_);
}

ConvexBody ConvexBody::ellipsoid(const Vec& center, const Mat& shape) { return {Type::Ellipsoid, center, shape}; }

ConvexBody ConvexBody::ball(const Vec& center, double radius) {
  if (!(radius > 0.0)) throw ConfigurationError("ball radius must be positive");
  return {Type::Ellipsoid, center, identity(static_cast<int>(center.size())) / radius};
}

ConvexBody ConvexBody::parallelotope(const Vec& center, const Mat& half_edges) {
  return {Type::Parallelotope, center, half_edges};
}

double ConvexBody::gauge(const Vec& xi) const {
  const Vec y = gauge_map_ * (xi - center_);
  return type_ == Type::Ellipsoid ? y.norm() : y.lpNorm<Eigen::Infinity>();
}

double ConvexBody::support(const Vec& u) const {
  if (type_ == Type::Ellipsoid) return u.dot(center_) + (inverse(shape_).transpose() * u).norm();
  return u.dot(center_) + (shape_.transpose() * u).lpNorm<1>();
}

Vec ConvexBody::boundary_point(const Vec& dir, double level) const {
  if (type_ == Type::Ellipsoid) return center_ + level * inverse(shape_) * (dir / dir.norm());
  return center_ + level * shape_ * (dir / dir.lpNorm<Eigen::Infinity>());
}

ConvexBody ConvexBody::dual_image(const Mat& h) const {
  const Vec c = solve_transpose(h, center_);
  if (type_ == Type::Ellipsoid) return ellipsoid(c, shape_ * h.transpose());
  return parallelotope(c, inverse(h).transpose() * shape_);
}

ConvexBody ConvexBody::linear_image(const Mat& t) const {
  const Vec c = t * center_;
  if (type_ == Type::Ellipsoid) return ellipsoid(c, shape_ * inverse(t));
  return parallelotope(c, t * shape_);
}

double ConvexBody::max_radius() const {
  if (type_ == Type::Ellipsoid) return center_.norm() + spectral_norm(inverse(shape_));
  double r = 0.0;
  for (const auto& v : vertices()) r = std::max(r, v.norm());
  return r;
}

double ConvexBody::min_radius() const {
  if (gauge(Vec::Zero(dim())) <= 1.0) return 0.0;
  if (type_ == Type::Ellipsoid) return min_over_ball(inverse(shape_), center_);
  return min_over_box(shape_, center_);
}

std::vector<Vec> ConvexBody::vertices() const {
  std::vector<Vec> out;
  const int d = dim();
  for (int mask = 0; mask < (1 << d); ++mask) {
    Vec u(d);
    for (int i = 0; i < d; ++i) u(i) = (mask >> i) & 1 ? 1.0 : -1.0;
    out.push_back(center_ + shape_ * u);
  }
  return out;
}

double min_gauge_over(const ConvexBody& a, const ConvexBody& b) {
  if (b.type() != ConvexBody::Type::Ellipsoid) {
    throw ConfigurationError("min_gauge_over: target body must be an ellipsoid");
  }
  const Mat& mb = b.shape();
  const Vec w = mb * (a.center() - b.center());
  if (a.type() == ConvexBody::Type::Ellipsoid) return min_over_ball(mb * inverse(a.shape()), w);
  return min_over_box(mb * a.shape(), w);
}

// ---------------------------------------------------------------------------------------------
// Shell

Shell Shell::make(const ConvexBody& outer, const ConvexBody& inner) {
  if (outer.dim() != inner.dim()) throw ConfigurationError("shell bodies differ in dimension");
  const int d = outer.dim();
  if (d < 2) throw ConfigurationError("shells are disconnected in d = 1; use convex bodies");
  const auto dirs = sphere_directions(d, 64 * (d - 1));
  for (const auto& u : dirs) {
    if (!(inner.support(u) < outer.support(u))) {
      throw ConfigurationError("shell inner body is not inside the outer body (support function)");
    }
    if (!(outer.gauge(inner.boundary_point(u)) < 1.0)) {
      throw ConfigurationError("shell inner boundary leaves the outer body");
    }
  }
  return Shell(outer, inner);
}

Shell Shell::annulus(const Vec& center, double r0, double r1) {
  if (!(r0 > 0.0 && r1 > r0)) throw ConfigurationError("annulus radii must satisfy 0 < r0 < r1");
  return make(ConvexBody::ball(center, r1), ConvexBody::ball(center, r0));
}

bool Shell::contains(const Vec& xi, Closure closure) const {
  const double go = outer_.gauge(xi);
  const double gi = inner_.gauge(xi);
  return closure == Closure::Closed ? (go <= 1.0 && gi >= 1.0) : (go < 1.0 && gi > 1.0);
}

Shell Shell::dual_image(const Mat& h) const { return Shell(outer_.dual_image(h), inner_.dual_image(h)); }
Shell Shell::linear_image(const Mat& t) const { return Shell(outer_.linear_image(t), inner_.linear_image(t)); }

bool Shell::homothetic() const {
  if (outer_.type() != inner_.type()) return false;
  if ((outer_.center() - inner_.center()).norm() > 1e-12 * std::max(1.0, outer_.center().norm())) return false;
  const Mat& go = outer_.gauge_map();
  const Mat& gi = inner_.gauge_map();
  const double lam = gi.norm() / go.norm();
  return (gi - lam * go).norm() <= 1e-10 * gi.norm();
}

double Shell::ratio() const { return inner_.gauge_map().norm() / outer_.gauge_map().norm(); }

// ---------------------------------------------------------------------------------------------
// Region

int Region::dim() const { return outer().dim(); }

const ConvexBody& Region::outer() const {
  if (const auto* s = std::get_if<Shell>(&geom)) return s->outer();
  return std::get<ConvexBody>(geom);
}

bool Region::contains(const Vec& xi, Closure closure) const {
  if (const auto* s = std::get_if<Shell>(&geom)) return s->contains(xi, closure);
  const double g = std::get<ConvexBody>(geom).gauge(xi);
  return closure == Closure::Closed ? g <= 1.0 : g < 1.0;
}

Region Region::dual_image(const Mat& h) const {
  if (const auto* s = std::get_if<Shell>(&geom)) return {s->dual_image(h)};
  return {std::get<ConvexBody>(geom).dual_image(h)};
}

Region Region::linear_image(const Mat& t) const {
  if (const auto* s = std::get_if<Shell>(&geom)) return {s->linear_image(t)};
  return {std::get<ConvexBody>(geom).linear_image(t)};
}

double Region::margin(const Vec& xi, double log_half_thickness) const {
  if (const auto* s = std::get_if<Shell>(&geom)) {
    const double go = s->outer().gauge(xi);
    const double gi = s->inner().gauge(xi);
    if (go >= 1.0 || gi <= 1.0) return std::min(1.0 - go, gi - 1.0);
    const double m = std::min(-std::log(go), std::log(gi));
    return m / log_half_thickness;
  }
  return 1.0 - std::get<ConvexBody>(geom).gauge(xi);
}

double Region::radial_hi() const { return outer().max_radius(); }

double Region::radial_lo() const {
  if (const auto* s = std::get_if<Shell>(&geom)) {
    const ConvexBody& in = s->inner();
    double lo = s->outer().min_radius();
    if (in.center().norm() <= 1e-14) {
      // ‖G ξ‖ ≥ 1 outside the inner body, so |ξ| ≥ 1 / ‖G‖ in the matching operator norm.
      const Mat& g = in.gauge_map();
      const double op = in.type() == ConvexBody::Type::Ellipsoid ? spectral_norm(g) : g.rowwise().norm().maxCoeff();
      lo = std::max(lo, 1.0 / op);
    }
    return lo;
  }
  return outer().min_radius();
}

BaseSet BaseSet::make(Region region, const Vec& reference) {
  if (!region.contains(reference, Closure::Closed)) throw ConfigurationError("base set reference point is outside the set");
  return {std::move(region), reference};
}

// ---------------------------------------------------------------------------------------------
// Intersection

std::string to_string(IntersectStatus s) {
  switch (s) {
    case IntersectStatus::Disjoint: return "Disjoint";
    case IntersectStatus::Intersecting: return "Intersecting";
    case IntersectStatus::IntersectingSampled: return "IntersectingSampled";
    case IntersectStatus::DisjointSampled: return "DisjointSampled";
  }
  return "?";
}

IntersectOptions IntersectOptions::make(int dim, int budget, Closure closure) {
  if (budget < 64) throw ConfigurationError("intersection sample budget must be >= 64");
  IntersectOptions o;
  o.budget = budget;
  o.closure = closure;
  o.directions = std::make_shared<const std::vector<Vec>>(sphere_directions(dim, budget));
  return o;
}

std::vector<Vec> region_samples(const Region& r, const std::vector<Vec>& directions, double inset) {
  std::vector<Vec> out;
  out.reserve(directions.size() * 3);
  if (const auto* s = std::get_if<Shell>(&r.geom)) {
    for (const auto& u : directions) {
      const Vec po = s->outer().boundary_point(u, 1.0 - inset);
      const Vec pi = s->inner().boundary_point(u, 1.0 + inset);
      out.push_back(po);
      out.push_back(pi);
      const Vec mid = 0.5 * (po + pi);
      if (s->contains(mid, Closure::Closed)) out.push_back(mid);
    }
  } else {
    const auto& b = std::get<ConvexBody>(r.geom);
    for (const auto& u : directions) {
      out.push_back(b.boundary_point(u, 1.0 - inset));
      out.push_back(b.boundary_point(u, 0.5));
    }
    out.push_back(b.center());
  }
  return out;
}

bool centered_shells_overlap(const Shell& a, const Shell& b, Closure closure) {
  if (!a.homothetic() || !b.homothetic() || a.outer().type() != ConvexBody::Type::Ellipsoid ||
      b.outer().type() != ConvexBody::Type::Ellipsoid ||
      (a.outer().center() - b.outer().center()).norm() > 1e-12 * std::max(1.0, a.outer().center().norm())) {
    throw ConfigurationError("centered_shells_overlap needs concentric homothetic ellipsoid shells");
  }
  // Along a ray u: a occupies t|Pu| ∈ (1/ρ_a, 1) and b occupies t|Qu| ∈ (1/ρ_b, 1), so the
  // intervals overlap iff |Qu|/|Pu| ∈ (1/ρ_b, ρ_a).
  const Mat p = a.outer().gauge_map();
  const Mat q = b.outer().gauge_map();
  const double rho_a = a.ratio();
  const double rho_b = b.ratio();
  const Eigen::MatrixXd pa = Eigen::MatrixXd(p).transpose() * Eigen::MatrixXd(p);
  const Eigen::MatrixXd qb = Eigen::MatrixXd(q).transpose() * Eigen::MatrixXd(q);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(qb, pa);
  const auto& ev = ges.eigenvalues();
  const double gmin = std::sqrt(std::max(0.0, ev.minCoeff()));
  const double gmax = std::sqrt(std::max(0.0, ev.maxCoeff()));
  const double lo = 1.0 / rho_b;
  const double hi = rho_a;
  if (closure == Closure::Closed) return gmax >= lo * (1 - 1e-12) && gmin <= hi * (1 + 1e-12);
  return gmax > lo * (1 + 1e-12) && gmin < hi * (1 - 1e-12);
}

IntersectStatus intersects(const Region& a, const Region& b, const IntersectOptions& opts) {
  if (a.dim() != b.dim()) throw ConfigurationError("intersects: regions differ in dimension");
  if (opts.budget < 64) throw ConfigurationError("intersection sample budget must be >= 64");
  const Closure closure = opts.closure;
  if (same_region(a, b)) return IntersectStatus::Intersecting;
  if (!a.is_shell() && !b.is_shell()) {
    return bodies_intersect(a.outer(), b.outer(), closure) ? IntersectStatus::Intersecting : IntersectStatus::Disjoint;
  }
  // Radial bounds are exact enclosures.
  const double gap_ab = b.radial_lo() - a.radial_hi();
  const double gap_ba = a.radial_lo() - b.radial_hi();
  const double rscale = std::max({1e-300, a.radial_hi(), b.radial_hi()});
  if (closure == Closure::Closed ? (gap_ab > kTol * rscale || gap_ba > kTol * rscale)
                                 : (gap_ab >= -kTol * rscale || gap_ba >= -kTol * rscale)) {
    return IntersectStatus::Disjoint;
  }
  if (!bodies_intersect(a.outer(), b.outer(), closure)) return IntersectStatus::Disjoint;
  const bool strict = closure == Closure::Closed;
  auto hole_swallows = [&](const Region& s, const Region& o) {
    const auto* sh = std::get_if<Shell>(&s.geom);
    if (!sh) return false;
    const auto inside = body_inside(o.outer(), sh->inner(), strict);
    return inside.value_or(false);
  };
  if (hole_swallows(a, b) || hole_swallows(b, a)) return IntersectStatus::Disjoint;

  const double inset = closure == Closure::Open ? 1e-7 : 0.0;
  std::vector<Vec> probes_a;
  std::vector<Vec> probes_b;
  const auto* sa = std::get_if<Shell>(&a.geom);
  const auto* sb = std::get_if<Shell>(&b.geom);
  if (sa && sb && sa->homothetic() && sb->homothetic() && sa->outer().type() == ConvexBody::Type::Ellipsoid &&
      sb->outer().type() == ConvexBody::Type::Ellipsoid &&
      (sa->outer().center() - sb->outer().center()).norm() <= 1e-12 * std::max(1.0, sa->outer().center().norm())) {
    return centered_shells_overlap(*sa, *sb, closure) ? IntersectStatus::Intersecting : IntersectStatus::Disjoint;
  }
  const std::vector<Vec>& dirs = opts.directions ? *opts.directions : sphere_directions(a.dim(), opts.budget);
  auto add = [&](const Region& r, std::vector<Vec>& out) {
    auto pts = region_samples(r, dirs, inset);
    out.insert(out.end(), pts.begin(), pts.end());
  };
  add(a, probes_a);
  add(b, probes_b);
  const std::size_t n = std::max(probes_a.size(), probes_b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i < probes_a.size() && contains_relaxed(b, probes_a[i], closure)) return IntersectStatus::IntersectingSampled;
    if (i < probes_b.size() && contains_relaxed(a, probes_b[i], closure)) return IntersectStatus::IntersectingSampled;
  }
  return IntersectStatus::DisjointSampled;
}

}  // namespace coorbit
