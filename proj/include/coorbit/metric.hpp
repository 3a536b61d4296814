#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coorbit/cover.hpp"

namespace coorbit {

/// Intersection graph of the cover elements inside an index radius; self-loops implicit.
struct ChainGraph {
  std::vector<std::size_t> nodes;
  std::vector<std::vector<std::size_t>> adjacency;  ///< by element index
  std::vector<std::vector<bool>> exact;             ///< per adjacency entry
  std::vector<bool> active;

  std::size_t edge_count() const;
};

ChainGraph build_chain_graph(const InducedCover& cover, int radius, int budget = 256);

struct DistanceTable {
  std::vector<std::size_t> sources;
  std::vector<ExtendedDistance> distance;  ///< by element index; sources at 0
};

/// Multi-source BFS (edge counts), ∞ beyond maxlen or off the graph.
DistanceTable bfs_distances(const ChainGraph& graph, const std::vector<std::size_t>& sources, int maxlen);

/// Number of sets in the shortest chain from ξ to η (0 when ξ = η).
ExtendedDistance chain_distance(const InducedCover& cover, const ChainGraph& graph, const Vec& xi, const Vec& eta,
                                int maxlen);

Vec orbit_map(const GroupElement& h, const Vec& xi);

struct QuasiInverse {
  std::size_t element = 0;
  GroupElement h;
  Vec xi;  ///< h^T η
};

/// Lowest-index element containing η; p(h, ξ) = η by construction.
QuasiInverse quasi_inverse_orbit(const InducedCover& cover, const Vec& eta);

struct QIPair {
  double dx = 0.0;
  double dy = 0.0;
  long a = 0;
  long b = 0;
};

struct QIWindow {
  int window = 0;
  std::vector<QIPair> pairs;
  std::vector<double> image_gaps;  ///< codomain net distances to the image
};

struct QIResidual {
  int window = 0;
  double max_violation = 0.0;
  double r2_required = 0.0;
};

struct QICertificate {
  double r1 = 1.0;
  double r2 = 0.0;
  double r3 = 0.0;
  bool certified = false;
  int fit_window = 0;
  std::vector<QIResidual> residuals;
  std::optional<QIPair> witness;
  bool r2_growth = false;  ///< required R2 grew by more than 25% per doubling

  std::string verdict() const { return certified ? "Certified" : "ViolatedTrend"; }
};

/// R1 on a 2^{1/8} grid over [1, 64] minimizing R1 + R2(R1) on the second-largest window;
/// certified iff the fitted constants hold on the largest window.
QICertificate fit_quasi_isometry(const std::vector<QIWindow>& windows, std::size_t min_pairs = 100);

/// Minimal R2 for a given R1 on a pair sample.
double required_r2(const std::vector<QIPair>& pairs, double r1);

struct SandwichReport {
  double r_upper = 0.0;  ///< d_W ≤ R d_Q + R
  double r_lower = 0.0;  ///< d_Q ≤ R d_W + R
  double r_upper_half = 0.0;
  double r_lower_half = 0.0;
  bool stable = false;
  std::size_t pairs = 0;
  bool sampled_bound = true;
};

SandwichReport sandwich_check(const InducedCover& cover, const Vec& xi, const Vec& eta, int budget = 256);

std::string distance_table_csv(const DistanceTable& t);
std::string qi_to_json(const QICertificate& c);

}  // namespace coorbit
