#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coorbit/geometry.hpp"
#include "coorbit/matgroup.hpp"

namespace coorbit {

struct CoverParams {
  int window = 8;
  double step = 0.6931471805599453;
  int rotation_net = 8;
  std::optional<std::size_t> word_cap;
  std::optional<double> shell_ratio;  ///< r1/r0 of the base shell; default from the step matrices
  int budget = 256;                   ///< intersection samples per shell
  int coverage_samples = 4096;
  std::uint64_t seed = 1;
  bool self_stats = true;
  bool verify_coverage = true;
};

struct CoverElement {
  std::size_t index = 0;
  std::vector<int> lattice;
  int sheet = 0;  ///< ±1 in d = 1, 0 otherwise
  std::size_t family_index = 0;
  GroupElement transform;
  Region geometry;
  double radial_lo = 0.0;
  double radial_hi = 0.0;
};

/// Self-overlap statistics of one cover: neighbour count and transition norm.
struct SelfStats {
  int source_radius = 0;
  int max_count = 0;
  double max_transition_norm = 0.0;
};

struct InducedCover {
  GroupSpec spec;
  BaseSet base;
  std::vector<Region> sheets;  ///< base pieces: the shell, or the two rays' intervals in d = 1
  Region core;  ///< the generating set C ⊂ Q
  WellSpreadFamily family;
  std::vector<CoverElement> elements;
  std::vector<std::size_t> scale_chain;  ///< elements along the scale direction
  int window = 0;
  double shell_ratio = 0.0;
  double r_min = 0.0;  ///< window annulus {r_min ≤ |ξ| ≤ r_max}
  double r_max = 0.0;
  double min_best_margin = 0.0;  ///< min over interior coverage samples of the best normalized margin
  std::optional<SelfStats> self;
  CoverParams params;

  std::size_t size() const { return elements.size(); }
  /// Window radius of an element's lattice index.
  int radius_of(std::size_t i) const;
  bool in_window(std::size_t i, int radius) const { return radius_of(i) <= radius; }
  std::vector<std::size_t> containing(const Vec& xi, Closure closure = Closure::Open) const;
  std::optional<std::size_t> lowest_containing(const Vec& xi) const;
  bool covers(const Vec& xi) const { return lowest_containing(xi).has_value(); }
  /// Normalized margin of ξ in element i (body coordinates, 1 at the shell's middle level).
  double margin(std::size_t i, const Vec& xi) const;
  double log_half_thickness() const;
};

/// Default base-shell ratio: 2 · max over step matrices S of max(‖S‖, ‖S⁻¹‖) in the frame.
double default_shell_ratio(const GroupSpec& spec, double step);

InducedCover build_induced_cover(const GroupSpec& spec, const CoverParams& params);

/// Uncovered sample (if any) among `samples` log-radially stratified points of
/// {lo ≤ |ξ| ≤ hi} that pass the support oracle.
std::optional<Vec> find_coverage_gap(const InducedCover& cover, double lo, double hi, int samples,
                                     std::uint64_t seed);

/// Deterministic log-radial stratified points in an annulus.
std::vector<Vec> annulus_points(int dim, double lo, double hi, int count, std::uint64_t seed);

// ---------------------------------------------------------------------------------------------
// Neighbour counts

struct NeighborRow {
  std::size_t source = 0;
  int count = 0;
  int exact = 0;
  int sampled = 0;
  bool interior = true;
};

struct NeighborTable {
  std::vector<NeighborRow> rows;
  int source_radius = 0;
  int target_radius = 0;

  int max_interior() const;
  double sampled_ratio() const;
};

struct NeighborTables {
  NeighborTable forward;     ///< A sources against B targets
  NeighborTable transposed;  ///< B sources against A targets
};

/// Pairwise status cache between two covers; filled on demand.
class PairCache {
 public:
  PairCache(const InducedCover& a, const InducedCover& b, const IntersectOptions& opts);
  /// Ensures the statuses of all (i, j) with radius_a(i) ≤ ra and radius_b(j) ≤ rb.
  void fill(int ra, int rb);
  IntersectStatus status(std::size_t i, std::size_t j) const;
  bool known(std::size_t i, std::size_t j) const;
  const InducedCover& a() const { return a_; }
  const InducedCover& b() const { return b_; }

 private:
  const InducedCover& a_;
  const InducedCover& b_;
  IntersectOptions opts_;
  std::vector<std::int8_t> table_;
};

NeighborTable count_neighbors(const PairCache& cache, bool transposed, int source_radius, int target_radius,
                              int interior_radius);

/// Counts for A interior against B (and the transposed direction) inside the covers' windows.
NeighborTables neighbor_counts(const InducedCover& a, const InducedCover& b, int budget);

SelfStats self_stats(const InducedCover& cover, int source_radius, int target_radius, int budget);

// ---------------------------------------------------------------------------------------------
// Diagnostics

struct PropernessMember {
  std::vector<int> lattice;
  double norm = 0.0;
};

struct PropernessResult {
  bool bounded = false;
  double max_norm = 0.0;
  std::vector<PropernessMember> members;
  std::vector<int> growth;  ///< number of members with radius ≤ r, r = 0..window
};

/// {h : h^T C ∩ C ≠ ∅} over a window of the family (touching counts).
PropernessResult properness_check(const GroupSpec& spec, const Shell& c, int window, double step = 0.6931471805599453,
                                  int budget = 256);

/// C^∞ bump f(ξ) = amplitude · exp(1 − 1/(1 − |ξ − c|²/r²)) inside the ball, 0 outside.
struct Bump {
  Vec center;
  double radius = 1.0;
  double amplitude = 1.0;
  double operator()(const Vec& xi) const;
};

struct DivergenceResult {
  bool finite = false;
  double value = 0.0;
  std::vector<double> partial_sums;  ///< partial integrals over windows r = 1..window
};

DivergenceResult support_divergence_test(const GroupSpec& spec, const Shell& c, const Bump& f, const Vec& xi0,
                                         int window = 16, double step = 0.6931471805599453, int net = 256);

/// Region oracle with a signed margin (> 0 inside; the margin is 1-Lipschitz for the
/// provided factories).
struct HullRegion {
  std::function<double(const Vec&)> margin;
  int dim = 2;

  static HullRegion annulus(int dim, double r0, double r1);
  static HullRegion punctured(int dim);
  static HullRegion half_space(const Vec& normal);
};

struct HullBall {
  Vec center;
  double radius = 0.0;
};

struct ConnectedHull {
  std::vector<HullBall> balls;
  std::vector<std::vector<Vec>> paths;  ///< polyline from point k to point 0
  bool connected = false;

  bool contains(const Vec& xi) const;
};

ConnectedHull connected_hull(const std::vector<Vec>& points, const HullRegion& region, std::size_t grid_budget = 2000000);

struct SupportComparison {
  bool equal = true;
  std::optional<Vec> witness;
  std::string witness_side;  ///< "A" if A contains the witness and B provably misses it
  int samples = 0;
  int both = 0;
  int only_a = 0;
  int only_b = 0;
  int neither = 0;
  double miss_rate() const { return samples == 0 ? 0.0 : static_cast<double>(only_a + only_b) / samples; }
};

SupportComparison support_equality_test(const GroupSpec& a, const GroupSpec& b, const CoverParams& params,
                                        int samples = 4096);

// ---------------------------------------------------------------------------------------------
// Export

std::string cover_to_json(const InducedCover& cover);
/// RFC 4180 adjacency list (i, j, status) for i ≤ j, self-loops included.
std::string cover_adjacency_csv(const InducedCover& cover);

}  // namespace coorbit
