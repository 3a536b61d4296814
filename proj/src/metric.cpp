#include "coorbit/metric.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "coorbit/error.hpp"
#include "json.hpp"

namespace coorbit {

std::size_t ChainGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& a : adjacency) n += a.size();
  return n / 2;
}

ChainGraph build_chain_graph(const InducedCover& cover, int radius, int budget) {
  PairCache cache(cover, cover, IntersectOptions::make(cover.spec.dim, budget));
  cache.fill(radius, radius);
  ChainGraph g;
  g.adjacency.resize(cover.size());
  g.exact.resize(cover.size());
  g.active.assign(cover.size(), false);
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (cover.radius_of(i) > radius) continue;
    g.nodes.push_back(i);
    g.active[i] = true;
  }
  for (std::size_t i : g.nodes) {
    for (std::size_t j : g.nodes) {
      if (i == j) continue;
      const auto s = cache.status(i, j);
      if (!is_intersecting(s)) continue;
      g.adjacency[i].push_back(j);
      g.exact[i].push_back(is_exact(s));
    }
  }
  return g;
}

DistanceTable bfs_distances(const ChainGraph& graph, const std::vector<std::size_t>& sources, int maxlen) {
  DistanceTable t;
  t.sources = sources;
  t.distance.assign(graph.adjacency.size(), ExtendedDistance::inf());
  std::deque<std::size_t> queue;
  for (std::size_t s : sources) {
    if (!graph.active.at(s) || !t.distance[s].infinite) continue;
    t.distance[s] = ExtendedDistance::finite(0);
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    const auto du = t.distance[u].value;
    if (du >= maxlen) continue;
    for (std::size_t v : graph.adjacency[u]) {
      if (!t.distance[v].infinite) continue;
      t.distance[v] = ExtendedDistance::finite(du + 1);
      queue.push_back(v);
    }
  }
  return t;
}

namespace {

std::vector<std::size_t> active_containing(const InducedCover& cover, const ChainGraph& graph, const Vec& p) {
  auto ids = cover.containing(p);
  std::erase_if(ids, [&](std::size_t i) { return !graph.active[i]; });
  if (ids.empty()) throw PointNotCovered("point is not contained in any cover element of the graph", to_vector(p));
  return ids;
}

ExtendedDistance chain_from_table(const DistanceTable& t, const std::vector<std::size_t>& targets, int maxlen) {
  ExtendedDistance best = ExtendedDistance::inf();
  for (std::size_t j : targets) {
    const auto& dj = t.distance[j];
    if (dj.infinite) continue;
    if (best.infinite || dj.value + 1 < best.value) best = ExtendedDistance::finite(dj.value + 1);
  }
  if (!best.infinite && best.value > maxlen) return ExtendedDistance::inf();
  return best;
}

}  // namespace

ExtendedDistance chain_distance(const InducedCover& cover, const ChainGraph& graph, const Vec& xi, const Vec& eta,
                                int maxlen) {
  const auto src = active_containing(cover, graph, xi);
  const auto dst = active_containing(cover, graph, eta);
  if (xi == eta) return ExtendedDistance::finite(0);
  return chain_from_table(bfs_distances(graph, src, maxlen), dst, maxlen);
}

Vec orbit_map(const GroupElement& h, const Vec& xi) { return dual_action(h, xi); }

QuasiInverse quasi_inverse_orbit(const InducedCover& cover, const Vec& eta) {
  const auto i = cover.lowest_containing(eta);
  if (!i) throw PointNotCovered("point is not covered by the cover window", to_vector(eta));
  const auto& e = cover.elements[*i];
  return {*i, e.transform, Vec(e.transform.matrix.transpose() * eta)};
}

// ---------------------------------------------------------------------------------------------
// Quasi-isometry fitting

double required_r2(const std::vector<QIPair>& pairs, double r1) {
  double r2 = 0.0;
  for (const auto& p : pairs) r2 = std::max({r2, p.dy - r1 * p.dx, p.dx / r1 - p.dy});
  return r2;
}

QICertificate fit_quasi_isometry(const std::vector<QIWindow>& windows, std::size_t min_pairs) {
  if (windows.size() < 2) throw ConfigurationError("quasi-isometry fitting needs at least two windows");
  for (const auto& w : windows) {
    if (w.pairs.size() < min_pairs) {
      throw ConfigurationError("window " + std::to_string(w.window) + " has fewer than " + std::to_string(min_pairs) +
                               " distance pairs");
    }
  }
  std::vector<const QIWindow*> sorted;
  for (const auto& w : windows) sorted.push_back(&w);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->window < b->window; });
  const QIWindow& fit = *sorted[sorted.size() - 2];
  const QIWindow& check = *sorted.back();

  QICertificate c;
  c.fit_window = fit.window;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 48; ++k) {
    const double r1 = std::pow(2.0, k / 8.0);
    const double r2 = required_r2(fit.pairs, r1);
    if (r1 + r2 < best - 1e-12) {
      best = r1 + r2;
      c.r1 = r1;
      c.r2 = r2;
    }
  }
  for (double g : fit.image_gaps) c.r3 = std::max(c.r3, g);

  double worst = 0.0;
  for (const auto* w : sorted) {
    QIResidual res;
    res.window = w->window;
    res.r2_required = required_r2(w->pairs, c.r1);
    for (const auto& p : w->pairs) {
      const double v = std::max({p.dy - (c.r1 * p.dx + c.r2), (p.dx / c.r1 - c.r2) - p.dy, 0.0});
      if (v > res.max_violation) {
        res.max_violation = v;
        if (w == &check && v > worst) {
          worst = v;
          c.witness = p;
        }
      }
    }
    c.residuals.push_back(res);
  }
  for (std::size_t k = 1; k < c.residuals.size(); ++k) {
    const double prev = c.residuals[k - 1].r2_required;
    const double cur = c.residuals[k].r2_required;
    if (cur > 1.25 * prev && cur - prev > 1e-9) c.r2_growth = true;
  }
  bool gaps_ok = true;
  for (double g : check.image_gaps) gaps_ok = gaps_ok && g <= c.r3 + 1e-12;
  c.certified = worst <= 1e-12 && gaps_ok;
  return c;
}

// ---------------------------------------------------------------------------------------------
// Sandwich constants

SandwichReport sandwich_check(const InducedCover& cover, const Vec& xi, const Vec& eta, int budget) {
  if (!cover.base.region.contains(xi, Closure::Open) || !cover.base.region.contains(eta, Closure::Open)) {
    throw ConfigurationError("sandwich_check needs ξ and η inside the base set");
  }
  const int outer = cover.window / 2;
  const int half = std::max(1, outer / 2);
  const ChainGraph graph = build_chain_graph(cover, cover.window, budget);
  const auto w = GeneratingSet::default_for(cover.spec, cover.family.step);
  const int maxlen = std::numeric_limits<int>::max() / 2;

  std::vector<std::size_t> fam;
  std::vector<int> radius;
  for (std::size_t f = 0; f < cover.family.size(); ++f) {
    int r = 0;
    for (int v : cover.family.indices[f]) r = std::max(r, std::abs(v));
    if (cover.spec.kind == GroupKind::Similitude) r = std::abs(cover.family.indices[f][0]);
    if (cover.spec.kind == GroupKind::DiscreteFG) r = cover.family.indices[f][0];
    if (r > outer) continue;
    fam.push_back(f);
    radius.push_back(r);
  }
  SandwichReport rep;
  for (std::size_t a = 0; a < fam.size(); ++a) {
    const auto& g = cover.family.elements[fam[a]];
    const Vec p = orbit_map(g, xi);
    const auto table = bfs_distances(graph, active_containing(cover, graph, p), maxlen);
    for (std::size_t b = 0; b < fam.size(); ++b) {
      const auto& h = cover.family.elements[fam[b]];
      const Vec q = orbit_map(h, eta);
      const auto dw = word_distance(cover.spec, w, g, h);
      const auto dq = (p == q) ? ExtendedDistance::finite(0) : chain_from_table(table, active_containing(cover, graph, q), maxlen);
      if (dw.infinite || dq.infinite) continue;
      const double up = dw.as_double() / (dq.as_double() + 1.0);
      const double lo = dq.as_double() / (dw.as_double() + 1.0);
      rep.r_upper = std::max(rep.r_upper, up);
      rep.r_lower = std::max(rep.r_lower, lo);
      if (radius[a] <= half && radius[b] <= half) {
        rep.r_upper_half = std::max(rep.r_upper_half, up);
        rep.r_lower_half = std::max(rep.r_lower_half, lo);
      }
      ++rep.pairs;
    }
  }
  rep.stable = rep.r_upper <= 1.1 * rep.r_upper_half + 1e-12 && rep.r_lower <= 1.1 * rep.r_lower_half + 1e-12;
  return rep;
}

// ---------------------------------------------------------------------------------------------
// Export

std::string distance_table_csv(const DistanceTable& t) {
  std::string out = "index,distance\n";
  for (std::size_t i = 0; i < t.distance.size(); ++i) {
    out += std::to_string(i) + "," + (t.distance[i].infinite ? std::string("inf") : std::to_string(t.distance[i].value)) + "\n";
  }
  return out;
}

std::string qi_to_json(const QICertificate& c) {
  nlohmann::json res = nlohmann::json::array();
  for (const auto& r : c.residuals) {
    res.push_back({{"window", r.window}, {"maxViolation", r.max_violation}, {"r2Required", r.r2_required}});
  }
  nlohmann::json j{{"r1", c.r1}, {"r2", c.r2}, {"r3", c.r3}, {"verdict", c.verdict()}, {"fitWindow", c.fit_window},
                   {"r2Growth", c.r2_growth}, {"residuals", res}};
  if (c.witness) j["witness"] = {{"a", c.witness->a}, {"b", c.witness->b}, {"dx", c.witness->dx}, {"dy", c.witness->dy}};
  return j.dump(2);
}

}  // namespace coorbit
