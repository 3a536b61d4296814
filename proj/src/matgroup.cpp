#include "coorbit/matgroup.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <unordered_map>

#include "coorbit/error.hpp"
#include "coorbit/sampling.hpp"

namespace coorbit {

namespace {

constexpr double kCommuteTol = 1e-10;
constexpr double kChartTol = 1e-9;

Mat rotation2(double theta) {
  Mat r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

Mat skew3(const Vec& w) {
  Mat s(3, 3);
  s << 0, -w(2), w(1), w(2), 0, -w(0), -w(1), w(0), 0;
  return s;
}

Mat rotation3(const Vec& w) { return mat_exp(skew3(w)); }

Mat frame_or_identity(const GroupSpec& spec) { return spec.frame.size() == 0 ? identity(spec.dim) : spec.frame; }

/// Rotation part of a similitude element in the canonical frame.
Mat canonical_rotation(const GroupSpec& spec, const Coords& c) {
  if (spec.dim == 2) return rotation2(c.at(1));
  Vec w(3);
  w << c.at(1), c.at(2), c.at(3);
  return rotation3(w);
}

std::int64_t ceil_steps(double x) {
  // ⌈x⌉ with a relative guard so that 2.0000000001 from roundoff still reads as 2
  if (x <= 1e-12) return 0;
  return static_cast<std::int64_t>(std::ceil(x - 1e-9 * std::max(1.0, x)));
}

struct QuantizedKey {
  std::array<long long, kMaxDim * kMaxDim + kMaxDim> q{};
  int n = 0;
  friend bool operator==(const QuantizedKey& a, const QuantizedKey& b) {
    return a.n == b.n && std::equal(a.q.begin(), a.q.begin() + a.n, b.q.begin());
  }
};

struct QuantizedKeyHash {
  std::size_t operator()(const QuantizedKey& k) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (int i = 0; i < k.n; ++i) {
      h ^= static_cast<std::uint64_t>(k.q[static_cast<std::size_t>(i)]);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

QuantizedKey quantize(const Mat& m) {
  // row-relative: each row keeps its binary scale and a 1e-9 mantissa grid
  QuantizedKey k;
  k.n = static_cast<int>(m.size() + m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    const double s = m.row(i).cwiseAbs().maxCoeff();
    const auto base = static_cast<std::size_t>(i * (m.cols() + 1));
    k.q[base] = s > 0.0 ? std::llround(std::log2(s) * 1e6) : std::numeric_limits<long long>::min();
    for (int j = 0; j < m.cols(); ++j) {
      k.q[base + 1 + static_cast<std::size_t>(j)] = s > 0.0 ? std::llround(m(i, j) / s * 1e9) : 0;
    }
  }
  return k;
}

std::vector<Mat> symmetric_closure(const std::vector<Mat>& gens) {
  std::vector<Mat> out;
  std::unordered_map<QuantizedKey, int, QuantizedKeyHash> seen;
  auto add = [&](const Mat& m) {
    if (seen.emplace(quantize(m), 0).second) out.push_back(m);
  };
  if (!gens.empty()) add(identity(static_cast<int>(gens.front().rows())));
  for (const auto& g : gens) {
    add(g);
    add(inverse(g));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// SupportOracle

bool SupportOracle::contains(const Vec& xi) const {
  const Vec y = transform.size() == 0 ? xi : Vec(transform * xi);
  switch (kind) {
    case Kind::Punctured:
      return y.norm() > 0.0;
    case Kind::HalfSpace:
      return normal.dot(y) > 0.0;
    case Kind::NonzeroCoordinates:
      return (y.array() != 0.0).all();
  }
  return false;
}

SupportOracle SupportOracle::pulled_back(const Mat& t) const {
  SupportOracle out = *this;
  out.transform = transform.size() == 0 ? t : Mat(transform * t);
  return out;
}

// ---------------------------------------------------------------------------------------------
// GroupSpec

std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::OneParameter: return "OneParameter";
    case GroupKind::Cyclic: return "Cyclic";
    case GroupKind::AbelianFlow: return "AbelianFlow";
    case GroupKind::ScalarSimilitude: return "ScalarSimilitude";
    case GroupKind::Similitude: return "Similitude";
    case GroupKind::DiscreteFG: return "DiscreteFG";
  }
  return "?";
}

GroupKind group_kind_from_string(const std::string& s) {
  for (auto k : {GroupKind::OneParameter, GroupKind::Cyclic, GroupKind::AbelianFlow, GroupKind::ScalarSimilitude,
                 GroupKind::Similitude, GroupKind::DiscreteFG}) {
    if (to_string(k) == s) return k;
  }
  throw ConfigurationError("unknown group kind '" + s + "'");
}

GroupSpec GroupSpec::one_parameter(const Mat& generator) {
  validate_matrix(generator, "OneParameter generator");
  GroupSpec s;
  s.kind = GroupKind::OneParameter;
  s.dim = static_cast<int>(generator.rows());
  s.generators = {generator};
  return s;
}

GroupSpec GroupSpec::cyclic(const Mat& matrix) {
  validate_matrix(matrix, "Cyclic matrix");
  require_invertible(matrix, "Cyclic matrix");
  GroupSpec s;
  s.kind = GroupKind::Cyclic;
  s.dim = static_cast<int>(matrix.rows());
  s.generators = {matrix};
  return s;
}

GroupSpec GroupSpec::abelian_flow(const std::vector<Mat>& generators) {
  if (generators.empty()) throw ConfigurationError("AbelianFlow needs at least one generator");
  const auto d = generators.front().rows();
  for (const auto& g : generators) {
    validate_matrix(g, "AbelianFlow generator");
    if (g.rows() != d) throw ConfigurationError("AbelianFlow generators differ in dimension");
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      const Mat c = generators[i] * generators[j] - generators[j] * generators[i];
      if (spectral_norm(c) > kCommuteTol) {
        throw ConfigurationError("AbelianFlow generators " + std::to_string(i) + " and " + std::to_string(j) +
                                 " do not commute");
      }
    }
  }
  GroupSpec s;
  s.kind = GroupKind::AbelianFlow;
  s.dim = static_cast<int>(d);
  s.generators = generators;
  return s;
}

GroupSpec GroupSpec::scalar_similitude(int dim) {
  if (dim < 1 || dim > kMaxDim) throw ConfigurationError("ScalarSimilitude dimension must be in [1, 4]");
  GroupSpec s;
  s.kind = GroupKind::ScalarSimilitude;
  s.dim = dim;
  return s;
}

GroupSpec GroupSpec::similitude(int dim) {
  if (dim != 2 && dim != 3) throw ConfigurationError("Similitude dimension must be 2 or 3");
  GroupSpec s;
  s.kind = GroupKind::Similitude;
  s.dim = dim;
  return s;
}

GroupSpec GroupSpec::discrete(const std::vector<Mat>& generators) {
  if (generators.empty()) throw ConfigurationError("DiscreteFG needs at least one generator");
  const auto d = generators.front().rows();
  for (const auto& g : generators) {
    validate_matrix(g, "DiscreteFG generator");
    if (g.rows() != d) throw ConfigurationError("DiscreteFG generators differ in dimension");
    require_invertible(g, "DiscreteFG generator");
  }
  GroupSpec s;
  s.kind = GroupKind::DiscreteFG;
  s.dim = static_cast<int>(d);
  s.generators = generators;
  return s;
}

int GroupSpec::chart_dim() const {
  switch (kind) {
    case GroupKind::OneParameter:
    case GroupKind::Cyclic:
    case GroupKind::ScalarSimilitude:
      return 1;
    case GroupKind::AbelianFlow:
      return static_cast<int>(generators.size());
    case GroupKind::Similitude:
      return dim == 2 ? 2 : 4;
    case GroupKind::DiscreteFG:
      return 0;
  }
  return 0;
}

// ---------------------------------------------------------------------------------------------
// Elements

Mat chart(const GroupSpec& spec, const Coords& c) {
  if (static_cast<int>(c.size()) != spec.chart_dim() || spec.kind == GroupKind::DiscreteFG) {
    throw ConfigurationError("coordinate vector does not match the chart of " + to_string(spec.kind));
  }
  switch (spec.kind) {
    case GroupKind::OneParameter:
      return mat_exp(c[0] * spec.generators[0]);
    case GroupKind::Cyclic: {
      const double k = std::round(c[0]);
      if (std::abs(k - c[0]) > kChartTol) throw ConfigurationError("Cyclic coordinate must be an integer");
      const ScaledMatrix p = scaled_power(spec.generators[0], static_cast<long>(k));
      return p.matrix * std::exp(p.log_scale);
    }
    case GroupKind::AbelianFlow: {
      Mat x = Mat::Zero(spec.dim, spec.dim);
      for (std::size_t j = 0; j < c.size(); ++j) x += c[j] * spec.generators[j];
      return mat_exp(x);
    }
    case GroupKind::ScalarSimilitude:
      return std::exp(c[0]) * identity(spec.dim);
    case GroupKind::Similitude: {
      const Mat f = frame_or_identity(spec);
      return std::exp(c[0]) * inverse(f) * canonical_rotation(spec, c) * f;
    }
    case GroupKind::DiscreteFG:
      break;
  }
  throw NotSupported("DiscreteFG has no coordinate chart");
}

GroupElement make_element(const GroupSpec& spec, const Coords& coords) { return {chart(spec, coords), coords}; }

GroupElement identity_element(const GroupSpec& spec) {
  if (spec.kind == GroupKind::DiscreteFG) return {identity(spec.dim), std::nullopt};
  return make_element(spec, Coords(static_cast<std::size_t>(spec.chart_dim()), 0.0));
}

Mat mat_exp_checked(const Mat& x) {
  if (!all_finite(x)) throw ConfigurationError("mat_exp: non-finite entry");
  return mat_exp(x);
}

Vec dual_action(const Mat& h, const Vec& xi) { return solve_transpose(h, xi); }
Vec dual_action(const GroupElement& h, const Vec& xi) { return solve_transpose(h.matrix, xi); }

// ---------------------------------------------------------------------------------------------
// Admissibility

OneParameterAdmissibility check_one_parameter_admissible(const Mat& x, double tol) {
  OneParameterAdmissibility out;
  out.eigenvalues = eigenvalues(x);
  auto by_real = [](const auto& a, const auto& b) { return a.real() < b.real(); };
  const auto lo = *std::min_element(out.eigenvalues.begin(), out.eigenvalues.end(), by_real);
  const auto hi = *std::max_element(out.eigenvalues.begin(), out.eigenvalues.end(), by_real);
  if (lo.real() > tol) {
    out.admissible = true;
    out.sign = +1;
  } else if (hi.real() < -tol) {
    out.admissible = true;
    out.sign = -1;
  } else {
    out.witness = hi.real() > tol ? lo : hi;
  }
  return out;
}

AdmissibilityReport admissibility_precheck(const GroupSpec& spec) {
  AdmissibilityReport r;
  auto one_param = [&](const Mat& x, const std::string& label) {
    const auto a = check_one_parameter_admissible(x);
    if (a.admissible) {
      r.admissible = true;
      r.detail = label + ": all eigenvalue real parts " + (a.sign > 0 ? "positive" : "negative");
    } else {
      r.detail = label + ": eigenvalue real parts of mixed sign or zero";
      r.witness = a.witness;
    }
  };
  switch (spec.kind) {
    case GroupKind::OneParameter:
      one_param(spec.generators[0], "generator");
      break;
    case GroupKind::Cyclic: {
      const auto ev = eigenvalues(spec.generators[0]);
      const bool expansive = std::all_of(ev.begin(), ev.end(), [](auto z) { return std::abs(z) > 1.0 + 1e-9; });
      const bool contractive = std::all_of(ev.begin(), ev.end(), [](auto z) { return std::abs(z) < 1.0 - 1e-9; });
      r.admissible = expansive || contractive;
      if (r.admissible) {
        r.detail = expansive ? "matrix is expansive" : "matrix is contractive";
      } else {
        r.detail = "eigenvalue moduli on both sides of (or on) the unit circle";
        auto it = std::min_element(ev.begin(), ev.end(),
                                   [](auto a, auto b) { return std::abs(std::abs(a) - 1.0) < std::abs(std::abs(b) - 1.0); });
        r.witness = *it;
      }
      break;
    }
    case GroupKind::AbelianFlow: {
      Mat sum = Mat::Zero(spec.dim, spec.dim);
      for (const auto& g : spec.generators) sum += g;
      one_param(sum, "diagonal flow direction");
      r.unchecked_assumptions.push_back("properness of the full flow action is assessed by properness_check only");
      break;
    }
    case GroupKind::ScalarSimilitude:
    case GroupKind::Similitude:
      r.admissible = true;
      r.detail = "contains the scalar flow exp(R I)";
      break;
    case GroupKind::DiscreteFG: {
      for (const auto& g : spec.generators) {
        const auto ev = eigenvalues(g);
        const bool expansive = std::all_of(ev.begin(), ev.end(), [](auto z) { return std::abs(z) > 1.0 + 1e-9; });
        const bool contractive = std::all_of(ev.begin(), ev.end(), [](auto z) { return std::abs(z) < 1.0 - 1e-9; });
        if (expansive || contractive) {
          r.admissible = true;
          r.detail = "contains an expansive generator";
          break;
        }
      }
      if (!r.admissible) r.detail = "no expansive or contractive generator";
      r.unchecked_assumptions.push_back("compact generation of stabilizers is assumed, not verified");
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------------------------
// Word metric

GeneratingSet GeneratingSet::box(double delta) {
  if (!(delta > 0.0)) throw ConfigurationError("generating box half-width must be positive");
  GeneratingSet w;
  w.half_width = delta;
  return w;
}

GeneratingSet GeneratingSet::from_generators(const std::vector<Mat>& gens, int max_radius) {
  GeneratingSet w;
  w.generators = symmetric_closure(gens);
  w.max_radius = max_radius;
  return w;
}

GeneratingSet GeneratingSet::default_for(const GroupSpec& spec, double delta) {
  if (spec.kind == GroupKind::DiscreteFG) return from_generators(spec.generators);
  if (spec.kind == GroupKind::Cyclic) return box(1.0);
  return box(delta);
}

double rotation_angle(const Mat& r) {
  if (r.rows() == 2) return std::abs(std::atan2(r(1, 0), r(0, 0)));
  const double c = std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0);
  return std::acos(c);
}

namespace {

ExtendedDistance bfs_distance(const GeneratingSet& w, const Mat& target) {
  const int d = static_cast<int>(target.rows());
  const QuantizedKey goal = quantize(target);
  if (quantize(identity(d)) == goal) return ExtendedDistance::finite(0);
  std::unordered_map<QuantizedKey, int, QuantizedKeyHash> seen;
  std::deque<std::pair<Mat, int>> queue;
  seen.emplace(quantize(identity(d)), 0);
  queue.emplace_back(identity(d), 0);
  while (!queue.empty()) {
    auto [m, r] = queue.front();
    queue.pop_front();
    if (r >= w.max_radius) continue;
    for (const auto& g : w.generators) {
      const Mat next = m * g;
      const QuantizedKey key = quantize(next);
      if (key == goal) return ExtendedDistance::finite(r + 1);
      if (seen.size() >= w.max_nodes) return ExtendedDistance::inf();
      if (seen.emplace(key, r + 1).second) queue.emplace_back(next, r + 1);
    }
  }
  return ExtendedDistance::inf();
}

}  // namespace

ExtendedDistance word_distance(const GroupSpec& spec, const GeneratingSet& w, const GroupElement& g,
                               const GroupElement& h) {
  if (spec.kind == GroupKind::DiscreteFG) {
    if (w.generators.empty()) throw ConfigurationError("DiscreteFG word metric needs a generator list");
    return bfs_distance(w, inverse(g.matrix) * h.matrix);
  }
  if (!g.coords || !h.coords) throw ConfigurationError("coordinate family elements must carry coordinates");
  const Coords& a = *g.coords;
  const Coords& b = *h.coords;
  const double delta = w.half_width;
  switch (spec.kind) {
    case GroupKind::OneParameter:
    case GroupKind::ScalarSimilitude:
      return ExtendedDistance::finite(ceil_steps(std::abs(a[0] - b[0]) / delta));
    case GroupKind::Cyclic: {
      const double steps = std::max(1.0, std::floor(delta));
      return ExtendedDistance::finite(ceil_steps(std::abs(std::round(a[0]) - std::round(b[0])) / steps));
    }
    case GroupKind::AbelianFlow: {
      double m = 0.0;
      for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
      return ExtendedDistance::finite(ceil_steps(m / delta));
    }
    case GroupKind::Similitude: {
      const Mat rel = canonical_rotation(spec, a).transpose() * canonical_rotation(spec, b);
      const double scale = std::abs(a[0] - b[0]);
      const double angle = rotation_angle(rel);
      return ExtendedDistance::finite(std::max(ceil_steps(scale / delta), ceil_steps(angle / delta)));
    }
    case GroupKind::DiscreteFG:
      break;
  }
  return ExtendedDistance::inf();
}

// ---------------------------------------------------------------------------------------------
// Families

bool WellSpreadFamily::is_interior(std::size_t i, int radius) const {
  const auto& idx = indices.at(i);
  if (spec.kind == GroupKind::DiscreteFG) return idx.at(0) <= radius;
  if (spec.kind == GroupKind::Similitude) return std::abs(idx.at(0)) <= radius;
  return std::all_of(idx.begin(), idx.end(), [radius](int v) { return std::abs(v) <= radius; });
}

namespace {

std::vector<Coords> similitude_rotation_net(int dim, int count) {
  std::vector<Coords> net;
  if (dim == 2) {
    for (int m = 0; m < count; ++m) {
      double theta = 2.0 * std::numbers::pi * m / count;
      if (theta > std::numbers::pi) theta -= 2.0 * std::numbers::pi;
      net.push_back({theta});
    }
    return net;
  }
  net.push_back({0.0, 0.0, 0.0});
  const auto axes = sphere_directions(3, std::max(1, count - 1));
  for (int m = 1; m < count; ++m) {
    const double angle = std::numbers::pi * radical_inverse(static_cast<std::uint64_t>(m), 2);
    const Vec& u = axes[static_cast<std::size_t>(m - 1)];
    net.push_back({angle * u(0), angle * u(1), angle * u(2)});
  }
  return net;
}

}  // namespace

WellSpreadFamily enumerate_family(const GroupSpec& spec, const FamilyParams& params) {
  if (params.window < 1) throw ConfigurationError("family window must be >= 1");
  if (!(params.step > 0.0)) throw ConfigurationError("family step must be positive");
  WellSpreadFamily fam;
  fam.spec = spec;
  fam.window = params.window;
  const int k = params.window;
  switch (spec.kind) {
    case GroupKind::OneParameter:
    case GroupKind::ScalarSimilitude:
      for (int i = -k; i <= k; ++i) {
        fam.elements.push_back(make_element(spec, {i * params.step}));
        fam.indices.push_back({i});
      }
      fam.step = fam.discreteness = fam.density = params.step;
      break;
    case GroupKind::Cyclic:
      for (int i = -k; i <= k; ++i) {
        fam.elements.push_back(make_element(spec, {static_cast<double>(i)}));
        fam.indices.push_back({i});
      }
      fam.step = fam.discreteness = fam.density = 1.0;
      break;
    case GroupKind::AbelianFlow: {
      const int n = static_cast<int>(spec.generators.size());
      std::vector<int> idx(static_cast<std::size_t>(n), -k);
      while (true) {
        Coords c(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) c[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j)] * params.step;
        fam.elements.push_back(make_element(spec, c));
        fam.indices.push_back(idx);
        int j = n - 1;
        while (j >= 0 && idx[static_cast<std::size_t>(j)] == k) idx[static_cast<std::size_t>(j--)] = -k;
        if (j < 0) break;
        ++idx[static_cast<std::size_t>(j)];
      }
      fam.step = fam.discreteness = fam.density = params.step;
      break;
    }
    case GroupKind::Similitude: {
      if (params.rotation_net < 1) throw ConfigurationError("rotation net must contain at least one rotation");
      const auto net = similitude_rotation_net(spec.dim, params.rotation_net);
      for (int i = -k; i <= k; ++i) {
        for (std::size_t m = 0; m < net.size(); ++m) {
          Coords c{i * params.step};
          c.insert(c.end(), net[m].begin(), net[m].end());
          fam.elements.push_back(make_element(spec, c));
          fam.indices.push_back({i, static_cast<int>(m)});
        }
      }
      fam.step = params.step;
      fam.discreteness = params.step;
      fam.density = std::max(params.step, 2.0 * std::numbers::pi / params.rotation_net);
      break;
    }
    case GroupKind::DiscreteFG: {
      if (!params.word_cap) {
        throw ConfigurationError("DiscreteFG enumeration requires an explicit word enumeration cap");
      }
      const auto w = GeneratingSet::from_generators(spec.generators);
      std::unordered_map<QuantizedKey, int, QuantizedKeyHash> seen;
      std::deque<std::pair<Mat, int>> queue;
      seen.emplace(quantize(identity(spec.dim)), 0);
      queue.emplace_back(identity(spec.dim), 0);
      int order = 0;
      while (!queue.empty() && fam.elements.size() < *params.word_cap) {
        auto [m, r] = queue.front();
        queue.pop_front();
        fam.elements.push_back({m, std::nullopt});
        fam.indices.push_back({r, order++});
        if (r >= k) continue;
        for (const auto& g : w.generators) {
          const Mat next = m * g;
          if (seen.emplace(quantize(next), r + 1).second) queue.emplace_back(next, r + 1);
        }
      }
      fam.step = fam.discreteness = fam.density = 1.0;
      break;
    }
  }
  return fam;
}

GroupSpec conjugate_spec(const GroupSpec& spec, const Mat& a) {
  validate_matrix(a, "conjugating matrix");
  if (a.rows() != spec.dim) throw ConfigurationError("conjugating matrix has the wrong dimension");
  require_invertible(a, "conjugating matrix");
  const Mat a_inv = inverse(a);
  GroupSpec out = spec;
  switch (spec.kind) {
    case GroupKind::OneParameter:
    case GroupKind::Cyclic:
    case GroupKind::AbelianFlow:
    case GroupKind::DiscreteFG:
      for (auto& g : out.generators) g = a_inv * g * a;
      break;
    case GroupKind::ScalarSimilitude:
    case GroupKind::Similitude:
      break;
  }
  out.frame = frame_or_identity(spec) * a;
  // New support A^T 𝒪: ξ belongs iff A^{-T} ξ ∈ 𝒪.
  out.support = spec.support.pulled_back(a_inv.transpose());
  return out;
}

double haar_weight(const GroupSpec& spec, const GroupElement& h) {
  if (spec.kind == GroupKind::DiscreteFG) return 1.0;
  if (!h.coords) throw ConfigurationError("haar_weight needs chart coordinates");
  if (spec.kind == GroupKind::Similitude && spec.dim == 3) {
    // Haar density of SO(3) in rotation-vector coordinates, normalized to 1 at the identity.
    const Coords& c = *h.coords;
    const double theta = std::sqrt(c[1] * c[1] + c[2] * c[2] + c[3] * c[3]);
    if (theta < 1e-8) return 1.0;
    return 2.0 * (1.0 - std::cos(theta)) / (theta * theta);
  }
  return 1.0;
}

std::vector<Mat> step_matrices(const GroupSpec& spec, double step) {
  switch (spec.kind) {
    case GroupKind::OneParameter:
      return {mat_exp(step * spec.generators[0])};
    case GroupKind::Cyclic:
      return {spec.generators[0]};
    case GroupKind::AbelianFlow: {
      std::vector<Mat> out;
      for (const auto& g : spec.generators) out.push_back(mat_exp(step * g));
      return out;
    }
    case GroupKind::ScalarSimilitude:
    case GroupKind::Similitude:
      return {std::exp(step) * identity(spec.dim)};
    case GroupKind::DiscreteFG:
      return spec.generators;
  }
  return {};
}

}  // namespace coorbit
