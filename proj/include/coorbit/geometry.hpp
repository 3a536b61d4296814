#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coorbit/linalg.hpp"

namespace coorbit {

/// Ellipsoid {ξ : |M(ξ − c)| ≤ 1} or parallelotope {c + E u : ‖u‖_∞ ≤ 1}.
class ConvexBody {
 public:
  enum class Type { Ellipsoid, Parallelotope };

  ConvexBody() = default;

  static ConvexBody ellipsoid(const Vec& center, const Mat& shape);
  static ConvexBody ball(const Vec& center, double radius);
  static ConvexBody parallelotope(const Vec& center, const Mat& half_edges);

  Type type() const { return type_; }
  int dim() const { return static_cast<int>(center_.size()); }
  const Vec& center() const { return center_; }
  /// M for ellipsoids, E for parallelotopes.
  const Mat& shape() const { return shape_; }
  /// The linear map whose (2- or ∞-) norm of ξ − c is the gauge.
  const Mat& gauge_map() const { return gauge_map_; }

  /// Minkowski gauge: ≤ 1 exactly on the closed body.
  double gauge(const Vec& xi) const;
  /// Support function h(u) = max_{x∈body} ⟨u, x⟩.
  double support(const Vec& u) const;
  /// Point of the boundary reached from the center along body coordinate u (gauge(u) = 1 after scaling).
  Vec boundary_point(const Vec& body_direction, double level = 1.0) const;
  /// Image under ξ ↦ h^{-T} ξ.
  ConvexBody dual_image(const Mat& h) const;
  /// Image under ξ ↦ T ξ.
  ConvexBody linear_image(const Mat& t) const;
  /// Smallest r with body ⊆ B(0, r) and largest r' with B(0, r') ∩ body = ∅ (0 if 0 ∈ body).
  double max_radius() const;
  double min_radius() const;
  std::vector<Vec> vertices() const;  ///< parallelotopes only

 private:
  ConvexBody(Type t, Vec c, Mat shape);
  Type type_ = Type::Ellipsoid;
  Vec center_;
  Mat shape_;
  Mat gauge_map_;
};

enum class Closure { Closed, Open };

/// closure(outer) \ interior(inner), with inner ⊂ interior(outer).
class Shell {
 public:
  /// Validates containment by support-function comparison on ≥ 64 directions plus sampled
  /// inner-boundary points; rejects d = 1.
  static Shell make(const ConvexBody& outer, const ConvexBody& inner);
  /// Euclidean annulus {r0 ≤ |ξ − c| ≤ r1}.
  static Shell annulus(const Vec& center, double r0, double r1);

  const ConvexBody& outer() const { return outer_; }
  const ConvexBody& inner() const { return inner_; }
  int dim() const { return outer_.dim(); }
  bool contains(const Vec& xi, Closure closure = Closure::Closed) const;
  Shell dual_image(const Mat& h) const;
  Shell linear_image(const Mat& t) const;
  /// Inner and outer bodies share a center and the inner shape is a scalar multiple of the outer.
  bool homothetic() const;
  double ratio() const;  ///< r1/r0 for homothetic shells

 private:
  Shell(ConvexBody outer, ConvexBody inner) : outer_(std::move(outer)), inner_(std::move(inner)) {}
  ConvexBody outer_;
  ConvexBody inner_;
};

/// A convex body or a shell; used for base sets and cover-element geometry.
struct Region {
  std::variant<ConvexBody, Shell> geom;

  int dim() const;
  bool is_shell() const { return std::holds_alternative<Shell>(geom); }
  const ConvexBody& outer() const;
  bool contains(const Vec& xi, Closure closure = Closure::Closed) const;
  Region dual_image(const Mat& h) const;
  Region linear_image(const Mat& t) const;
  /// Margin of ξ in body coordinates, normalized to (0, 1] inside the open region
  /// (≤ 0 outside). `log_half_thickness` normalizes shells; bodies use 1 − gauge.
  double margin(const Vec& xi, double log_half_thickness) const;
  /// Radial bounds: the region lies inside {lo ≤ |ξ| ≤ hi}.
  double radial_lo() const;
  double radial_hi() const;
};

/// Base set with a reference point ξ₀ inside it.
struct BaseSet {
  Region region;
  Vec reference;

  static BaseSet make(Region region, const Vec& reference);
};

enum class IntersectStatus { Disjoint, Intersecting, IntersectingSampled, DisjointSampled };
std::string to_string(IntersectStatus s);
inline bool is_intersecting(IntersectStatus s) {
  return s == IntersectStatus::Intersecting || s == IntersectStatus::IntersectingSampled;
}
inline bool is_exact(IntersectStatus s) {
  return s == IntersectStatus::Intersecting || s == IntersectStatus::Disjoint;
}

struct IntersectOptions {
  int budget = 256;                 ///< sample directions per shell; ≥ 64
  Closure closure = Closure::Open;  ///< Open: interiors must meet; Closed: touching counts
  std::shared_ptr<const std::vector<Vec>> directions;  ///< cached low-discrepancy directions

  static IntersectOptions make(int dim, int budget, Closure closure = Closure::Open);
};

/// Exact minimum of gauge_b over body a; < 1 (≤ 1 closed) means the bodies intersect.
double min_gauge_over(const ConvexBody& a, const ConvexBody& b);

IntersectStatus intersects(const Region& a, const Region& b, const IntersectOptions& opts);

/// Exact test for two homothetic shells with a common center (d ≥ 2): the ratio
/// |Q u| / |P u| sweeps an interval whose endpoints are generalized eigenvalues.
bool centered_shells_overlap(const Shell& a, const Shell& b, Closure closure);

/// Sample points of a region: boundary-adjacent levels plus the middle level.
std::vector<Vec> region_samples(const Region& r, const std::vector<Vec>& directions, double inset);

}  // namespace coorbit
