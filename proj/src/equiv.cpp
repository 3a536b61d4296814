#include "coorbit/equiv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "coorbit/error.hpp"

namespace coorbit {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Equivalent:
      return "Equivalent";
    case Outcome::NotEquivalent:
      return "NotEquivalent";
    case Outcome::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

std::string to_string(WeakOutcome o) {
  switch (o) {
    case WeakOutcome::WeaklyEquivalent:
      return "WeaklyEquivalent";
    case WeakOutcome::NotWeaklyEquivalent:
      return "NotWeaklyEquivalent";
    case WeakOutcome::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

std::string to_string(CocompactOutcome o) {
  switch (o) {
    case CocompactOutcome::Cocompact:
      return "Cocompact";
    case CocompactOutcome::NotCocompact:
      return "NotCocompact";
    case CocompactOutcome::NotSubgroup:
      return "NotSubgroup";
  }
  return "?";
}

namespace {

bool strictly_increasing(const std::vector<int>& v) {
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k] <= v[k - 1]) return false;
  }
  return v.size() >= 2;
}

bool constant(const std::vector<int>& v) { return std::all_of(v.begin(), v.end(), [&](int x) { return x == v.front(); }); }

std::vector<int> argmax_lattice(const NeighborTable& t, const InducedCover& src) {
  int best = -1;
  std::vector<int> idx;
  for (const auto& r : t.rows) {
    if (r.interior && r.count > best) {
      best = r.count;
      idx = src.elements[r.source].lattice;
    }
  }
  return idx;
}

std::string join(const std::vector<int>& v, const char* sep) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? sep : "") + std::to_string(v[k]);
  return s;
}

bool expansive(const Mat& m) {
  for (const auto& ev : eigenvalues(m)) {
    if (!(std::abs(ev) > 1.0 + 1e-9)) return false;
  }
  return true;
}

bool contractive(const Mat& m) {
  for (const auto& ev : eigenvalues(m)) {
    if (!(std::abs(ev) < 1.0 - 1e-9)) return false;
  }
  return true;
}

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  const double den = n * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// Weak equivalence

WeakEquivalenceResult weak_equivalence_test(const InducedCover& a, const InducedCover& b,
                                            const std::vector<int>& windows, int budget) {
  if (windows.size() < 2) throw ConfigurationError("weak equivalence needs at least two windows");
  for (std::size_t k = 0; k < windows.size(); ++k) {
    if (windows[k] < 2) throw ConfigurationError("window too small to contain interior indices");
    if (k > 0 && windows[k] <= windows[k - 1]) throw ConfigurationError("windows must increase");
  }
  const int top = windows.back();
  if (a.window < top || b.window < top) throw ConfigurationError("covers are smaller than the largest window");

  PairCache cache(a, b, IntersectOptions::make(a.spec.dim, budget));
  WeakEquivalenceResult r;
  std::vector<int> ab;
  std::vector<int> ba;
  for (int w : windows) {
    cache.fill(w / 2, w);
    cache.fill(w, w / 2);
    const auto f = count_neighbors(cache, false, w / 2, w, w / 2);
    const auto t = count_neighbors(cache, true, w / 2, w, w / 2);
    CountTrend ct;
    ct.window = w;
    ct.max_ab = f.max_interior();
    ct.max_ba = t.max_interior();
    ct.lattice_ab = argmax_lattice(f, a);
    ct.lattice_ba = argmax_lattice(t, b);
    const double sa = f.sampled_ratio();
    const double sb = t.sampled_ratio();
    ct.sampled_ratio = std::max(sa, sb);
    r.trends.push_back(ct);
    ab.push_back(ct.max_ab);
    ba.push_back(ct.max_ba);
  }
  if (constant(ab) && constant(ba)) {
    r.outcome = WeakOutcome::WeaklyEquivalent;
    r.max_count = std::max(ab.front(), ba.front());
    r.detail = "directed maxima stable at " + std::to_string(ab.front()) + " / " + std::to_string(ba.front());
  } else if (strictly_increasing(ab) || strictly_increasing(ba)) {
    r.outcome = WeakOutcome::NotWeaklyEquivalent;
    const bool fwd = strictly_increasing(ab);
    r.detail = std::string(fwd ? "A-to-B" : "B-to-A") + " max interior count grows: " + join(fwd ? ab : ba, " -> ");
  } else {
    r.outcome = WeakOutcome::Inconclusive;
    r.detail = "counts neither stable nor strictly growing: A-to-B " + join(ab, ",") + "; B-to-A " + join(ba, ",");
  }
  return r;
}

// ---------------------------------------------------------------------------------------------
// Scalar criteria

double EpsilonCriterion::s(long kk) const {
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] == kk) return std::exp(log_s[i]);
  }
  throw ConfigurationError("k outside the computed range");
}

EpsilonCriterion epsilon_criterion(const Mat& a, const Mat& b, long k_max, const Tolerances& tol) {
  validate_matrix(a, "epsilon criterion A");
  validate_matrix(b, "epsilon criterion B");
  if (a.rows() != b.rows()) throw ConfigurationError("epsilon criterion matrices differ in dimension");
  if (k_max < 2) throw ConfigurationError("epsilon criterion needs K >= 2");
  const double la = std::log(std::abs(a.determinant()));
  const double lb = std::log(std::abs(b.determinant()));
  if (!std::isfinite(la) || !std::isfinite(lb) || std::abs(la) < 1e-12 || std::abs(lb) < 1e-12) {
    throw DomainError("epsilon criterion needs |det A| and |det B| different from 0 and 1");
  }
  if (!((expansive(a) && expansive(b)) || (contractive(a) && contractive(b)))) {
    throw DomainError("epsilon criterion needs both matrices expansive or both contractive");
  }
  EpsilonCriterion e;
  e.epsilon = la / lb;
  e.k_max = k_max;
  const bool same = a == b;
  for (long k = -k_max; k <= k_max; ++k) {
    const long m = static_cast<long>(std::floor(e.epsilon * static_cast<double>(k) + 1e-9));
    double ls;
    if (same) {
      // A^{-k} A^{m} = A^{m-k}
      const ScaledMatrix p = scaled_power(a, m - k);
      ls = m == k ? 0.0 : std::log(spectral_norm(p.matrix)) + p.log_scale;
    } else {
      const ScaledMatrix pa = scaled_power(a, -k);
      const ScaledMatrix pb = scaled_power(b, m);
      ls = std::log(spectral_norm(pa.matrix * pb.matrix)) + pa.log_scale + pb.log_scale;
    }
    e.k.push_back(k);
    e.log_s.push_back(ls);
  }
  double inner = -std::numeric_limits<double>::infinity();
  double outer = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < e.k.size(); ++i) {
    const long ak = std::abs(e.k[i]);
    if (2 * ak <= k_max) inner = std::max(inner, e.log_s[i]); else outer = std::max(outer, e.log_s[i]);
  }
  e.bounded = outer <= inner + std::log1p(tol.stabilization);
  if (!e.bounded) {
    std::vector<double> x;
    std::vector<double> y;
    for (long ak = 1; ak <= k_max; ++ak) {
      x.push_back(static_cast<double>(ak));
      y.push_back(std::max(e.log_s[static_cast<std::size_t>(k_max + ak)], e.log_s[static_cast<std::size_t>(k_max - ak)]));
    }
    e.rate = ls_slope(x, y);
  }
  return e;
}

IsotropyResult one_param_isotropy_test(const Mat& x, double t_max, int samples, const Tolerances& tol) {
  validate_matrix(x, "isotropy generator");
  const auto adm = check_one_parameter_admissible(x);
  if (!adm.admissible) throw DomainError("generator is not admissible; eigenvalue straddles the imaginary axis");
  if (!(t_max > 0.0) || samples < 8) throw ConfigurationError("isotropy test needs T > 0 and >= 8 samples");
  const int d = static_cast<int>(x.rows());
  IsotropyResult r;
  r.s = x.trace() / d;
  r.y = x - r.s * identity(d);
  std::vector<double> ts;
  for (int i = 0; i < samples; ++i) {
    ts.push_back(t_max * std::pow(10.0, -3.0 * (1.0 - static_cast<double>(i) / (samples - 1))));
  }
  double inner = 1.0;  // t = 0
  double outer = 0.0;
  std::vector<double> tx;
  std::vector<double> ly;
  r.t.push_back(0.0);
  r.norms.push_back(1.0);
  for (double t : ts) {
    const double up = spectral_norm(mat_exp(t * r.y));
    const double down = spectral_norm(mat_exp(-t * r.y));
    r.t.push_back(t);
    r.norms.push_back(up);
    r.t.push_back(-t);
    r.norms.push_back(down);
    const double m = std::max(up, down);
    if (2.0 * t <= t_max) inner = std::max(inner, m); else outer = std::max(outer, m);
    if (2.0 * t >= t_max) {
      tx.push_back(t);
      ly.push_back(std::log(m));
    }
  }
  r.max_norm = std::max(inner, outer);
  r.equivalent_to_scalar = outer <= inner * (1.0 + tol.stabilization);
  r.rate = r.equivalent_to_scalar ? 0.0 : ls_slope(tx, ly);
  return r;
}

PartnerResult irreducible_partner_test(const Mat& x, const Tolerances& tol) {
  PartnerResult r;
  r.isotropy = one_param_isotropy_test(x, 50.0, 200, tol);
  r.no_irreducible_partner = !r.isotropy.equivalent_to_scalar;
  r.reason = r.no_irreducible_partner
                 ? "exp(tY) is unbounded for the traceless part Y; no irreducibly admissible group is coorbit "
                   "equivalent to this one-parameter group"
                 : "exp(tY) stays bounded; the group is coorbit equivalent to the scalar similitudes";

  const int d = static_cast<int>(x.rows());
  const Eigen::MatrixXd xt = x.transpose();
  Eigen::EigenSolver<Eigen::MatrixXd> es(xt);
  const double scale = std::max(1.0, xt.cwiseAbs().maxCoeff());
  std::vector<double> vals;
  for (int k = 0; k < d; ++k) {
    const auto ev = es.eigenvalues()(k);
    if (std::abs(ev.imag()) > 1e-9 * scale) return r;  // complex spectrum: no real eigenspace report
    vals.push_back(ev.real());
  }
  std::sort(vals.begin(), vals.end());
  std::vector<double> distinct;
  for (double v : vals) {
    if (distinct.empty() || std::abs(v - distinct.back()) > 1e-8 * scale) distinct.push_back(v);
  }
  int total = 0;
  std::vector<Eigenspace> spaces;
  for (double lam : distinct) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(xt - lam * Eigen::MatrixXd::Identity(d, d));
    lu.setThreshold(1e-8);
    Eigen::MatrixXd ker = lu.kernel();
    if (lu.dimensionOfKernel() == 0) continue;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(ker);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, ker.cols());
    for (int c = 0; c < q.cols(); ++c) {
      Eigen::Index idx;
      q.col(c).cwiseAbs().maxCoeff(&idx);
      if (q(idx, c) < 0) q.col(c) *= -1.0;
    }
    Eigenspace e;
    e.eigenvalue = lam;
    e.basis = q;
    total += static_cast<int>(q.cols());
    spaces.push_back(e);
  }
  if (total != d) return r;  // not diagonalizable: verdict without eigenspaces
  r.eigenspaces = spaces;
  if (spaces.size() > 1) {
    r.invariant_subspace = *std::min_element(spaces.begin(), spaces.end(),
                                             [](const auto& p, const auto& q) { return p.basis.cols() < q.basis.cols(); });
  }
  return r;
}

// ---------------------------------------------------------------------------------------------
// Subgroups

namespace {

struct Membership {
  bool member = false;
  std::vector<double> coords;  ///< noncompact coordinates in the super-chart
};

double rel(const Mat& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

Membership flow_coords(const std::vector<Mat>& basis, const Mat& x, double tol) {
  const int d = static_cast<int>(x.rows());
  Eigen::MatrixXd m(d * d, static_cast<Eigen::Index>(basis.size()));
  Eigen::VectorXd v(d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < basis.size(); ++k) m(i * d + j, static_cast<Eigen::Index>(k)) = basis[k](i, j);
      v(i * d + j) = x(i, j);
    }
  }
  const Eigen::VectorXd c = m.completeOrthogonalDecomposition().solve(v);
  Membership out;
  out.member = (m * c - v).cwiseAbs().maxCoeff() <= tol * rel(x);
  out.coords.assign(c.data(), c.data() + c.size());
  return out;
}

Membership algebra_member(const GroupSpec& sup, const Mat& x, double tol) {
  const int d = sup.dim;
  Membership out;
  switch (sup.kind) {
    case GroupKind::ScalarSimilitude: {
      const double s = x.trace() / d;
      out.member = (x - s * identity(d)).cwiseAbs().maxCoeff() <= tol * rel(x);
      out.coords = {s};
      return out;
    }
    case GroupKind::Similitude: {
      const Mat f = sup.frame_matrix();
      const Mat y = f * x * inverse(f);
      const double s = y.trace() / d;
      const Mat z = y - s * identity(d);
      out.member = (z + z.transpose()).cwiseAbs().maxCoeff() <= tol * rel(y);
      out.coords = {s};
      return out;
    }
    case GroupKind::OneParameter:
    case GroupKind::AbelianFlow:
      return flow_coords(sup.generators, x, tol);
    case GroupKind::Cyclic:
      out.member = x.cwiseAbs().maxCoeff() <= tol;
      out.coords = {0.0};
      return out;
    case GroupKind::DiscreteFG:
      break;
  }
  throw NotSupported("subgroup tests do not support DiscreteFG groups");
}

Membership group_member(const GroupSpec& sup, const Mat& a, double tol) {
  const int d = sup.dim;
  Membership out;
  switch (sup.kind) {
    case GroupKind::ScalarSimilitude: {
      const double c = a.trace() / d;
      out.member = c > 0.0 && (a - c * identity(d)).cwiseAbs().maxCoeff() <= tol * rel(a);
      out.coords = {c > 0.0 ? std::log(c) : 0.0};
      return out;
    }
    case GroupKind::Similitude: {
      const Mat f = sup.frame_matrix();
      const Mat y = f * a * inverse(f);
      const double det = y.determinant();
      if (!(det > 0.0)) return out;
      const double c = std::pow(det, 1.0 / d);
      const Mat rot = y / c;
      out.member = (rot.transpose() * rot - identity(d)).cwiseAbs().maxCoeff() <= tol * 10.0;
      out.coords = {std::log(c)};
      return out;
    }
    case GroupKind::OneParameter: {
      const Mat& z = sup.generators[0];
      const double t = std::log(std::abs(a.determinant())) / z.trace();
      out.member = (mat_exp(t * z) - a).cwiseAbs().maxCoeff() <= tol * rel(a);
      out.coords = {t};
      return out;
    }
    case GroupKind::AbelianFlow: {
      Mat l;
      if (!mat_log_real(a, l)) return out;
      out = flow_coords(sup.generators, l, tol);
      if (out.member) {
        Mat x = Mat::Zero(d, d);
        for (std::size_t k = 0; k < out.coords.size(); ++k) x += out.coords[k] * sup.generators[k];
        out.member = (mat_exp(x) - a).cwiseAbs().maxCoeff() <= tol * rel(a);
      }
      return out;
    }
    case GroupKind::Cyclic: {
      const Mat& b = sup.generators[0];
      const long n = std::lround(std::log(std::abs(a.determinant())) / std::log(std::abs(b.determinant())));
      const ScaledMatrix p = scaled_power(b, n);
      out.member = (p.matrix * std::exp(p.log_scale) - a).cwiseAbs().maxCoeff() <= tol * rel(a);
      out.coords = {static_cast<double>(n)};
      return out;
    }
    case GroupKind::DiscreteFG:
      break;
  }
  throw NotSupported("subgroup tests do not support DiscreteFG groups");
}

int noncompact_rank(const GroupSpec& spec) {
  if (spec.kind == GroupKind::AbelianFlow) {
    return static_cast<int>(flow_coords(spec.generators, Mat::Zero(spec.dim, spec.dim), 1.0).coords.size());
  }
  return 1;
}

}  // namespace

CocompactResult subgroup_cocompact_test(const GroupSpec& sub, const GroupSpec& sup, const Tolerances& tol) {
  if (sub.kind == GroupKind::DiscreteFG || sup.kind == GroupKind::DiscreteFG) {
    throw NotSupported("subgroup tests need structured coordinate families");
  }
  if (sub.dim != sup.dim) throw ConfigurationError("groups act on different dimensions");
  const int d = sub.dim;
  CocompactResult r;
  std::vector<std::vector<double>> coords;

  auto algebra = [&](const Mat& x) {
    const auto m = algebra_member(sup, x, tol.subgroup);
    if (!m.member) {
      r.outcome = CocompactOutcome::NotSubgroup;
      r.witness_element = mat_exp(x);
      return false;
    }
    coords.push_back(m.coords);
    return true;
  };
  switch (sub.kind) {
    case GroupKind::Cyclic: {
      const auto m = group_member(sup, sub.generators[0], tol.subgroup);
      if (!m.member) {
        r.outcome = CocompactOutcome::NotSubgroup;
        r.witness_element = sub.generators[0];
        return r;
      }
      coords.push_back(m.coords);
      break;
    }
    case GroupKind::OneParameter:
    case GroupKind::AbelianFlow:
      for (const auto& x : sub.generators) {
        if (!algebra(x)) return r;
      }
      break;
    case GroupKind::ScalarSimilitude:
      if (!algebra(identity(d))) return r;
      break;
    case GroupKind::Similitude: {
      if (!algebra(identity(d))) return r;
      const Mat f = sub.frame_matrix();
      const Mat fi = inverse(f);
      for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
          Mat e = Mat::Zero(d, d);
          e(i, j) = 1.0;
          e(j, i) = -1.0;
          if (!algebra(fi * e * f)) return r;
        }
      }
      break;
    }
    case GroupKind::DiscreteFG:
      break;
  }

  const int n = noncompact_rank(sup);
  Eigen::MatrixXd c(static_cast<Eigen::Index>(coords.size()), n);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    for (int j = 0; j < n; ++j) c(static_cast<Eigen::Index>(i), j) = coords[i][static_cast<std::size_t>(j)];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
  const double top = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  int rank = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    if (svd.singularValues()(k) > 1e-8 * std::max(1.0, top)) ++rank;
  }
  r.rank_sub = rank;
  r.rank_sup = n;
  if (rank >= n) {
    r.outcome = CocompactOutcome::Cocompact;
    return r;
  }
  r.outcome = CocompactOutcome::NotCocompact;
  Eigen::VectorXd dir = svd.matrixV().col(rank);
  Eigen::Index idx;
  dir.cwiseAbs().maxCoeff(&idx);
  if (dir(idx) < 0) dir *= -1.0;
  r.witness_coords.assign(dir.data(), dir.data() + dir.size());
  Mat x = Mat::Zero(d, d);
  for (int k = 0; k < n; ++k) x += dir(k) * sup.generators[static_cast<std::size_t>(k)];
  r.witness_direction = x;
  return r;
}

// ---------------------------------------------------------------------------------------------
// Pipeline

EquivConfig EquivConfig::from(const RunConfig& rc) {
  EquivConfig c;
  c.window = rc.window;
  c.budget = rc.budget;
  c.coverage_samples = rc.coverage_samples;
  c.support_samples = rc.support_samples;
  c.seed = rc.seed;
  c.with_qi = rc.with_qi;
  c.with_norms = rc.with_norms;
  c.grid = rc.grid;
  c.p = rc.p;
  c.q = rc.q;
  c.tol = rc.tol;
  return c;
}

namespace {

CoverParams cover_params(const EquivConfig& cfg, int window) {
  CoverParams p;
  p.window = window;
  p.step = cfg.step;
  p.rotation_net = cfg.rotation_net;
  p.budget = cfg.budget;
  p.coverage_samples = cfg.coverage_samples;
  p.seed = cfg.seed;
  p.self_stats = false;
  p.word_cap = 100000;
  return p;
}

std::shared_ptr<InducedCover> build_with_context(const GroupSpec& spec, const CoverParams& p, const char* label) {
  try {
    return std::make_shared<InducedCover>(build_induced_cover(spec, p));
  } catch (const WitnessError& e) {
    throw CoverConstructionError(std::string("cover of group ") + label + ": " + e.what(), e.witness());
  }
}

std::string vec_string(const Vec& v) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (int k = 0; k < v.size(); ++k) os << (k ? ", " : "") << v(k);
  os << ")";
  return os.str();
}

}  // namespace

QIEvidence transition_qi(const InducedCover& target, const GroupSpec& source, const Vec& xi,
                         const std::vector<int>& windows, const EquivConfig& cfg) {
  if (windows.empty()) throw ConfigurationError("transition map needs windows");
  FamilyParams fp;
  fp.window = *std::max_element(windows.begin(), windows.end());
  fp.step = cfg.step;
  fp.rotation_net = cfg.rotation_net;
  fp.word_cap = 100000;
  const auto fam = enumerate_family(source, fp);
  const auto wa = GeneratingSet::default_for(source, cfg.step);
  const auto wb = GeneratingSet::default_for(target.spec, target.family.step);

  std::vector<std::size_t> image(fam.size());
  for (std::size_t i = 0; i < fam.size(); ++i) image[i] = quasi_inverse_orbit(target, orbit_map(fam.elements[i], xi)).element;

  QIEvidence ev;
  ev.xi = xi;
  ev.windows = windows;
  std::vector<QIWindow> qw;
  for (int w : windows) {
    QIWindow win;
    win.window = w;
    std::vector<std::size_t> dom;
    for (std::size_t i = 0; i < fam.size(); ++i) {
      if (fam.is_interior(i, w)) dom.push_back(i);
    }
    for (std::size_t x = 0; x < dom.size(); ++x) {
      for (std::size_t y = x + 1; y < dom.size(); ++y) {
        const auto dx = word_distance(source, wa, fam.elements[dom[x]], fam.elements[dom[y]]);
        const auto& ex = target.elements[image[dom[x]]];
        const auto& ey = target.elements[image[dom[y]]];
        const auto dy = word_distance(target.spec, wb, ex.transform, ey.transform);
        if (dx.infinite || dy.infinite) continue;
        win.pairs.push_back({dx.as_double(), dy.as_double(), fam.indices[dom[x]].at(0), fam.indices[dom[y]].at(0)});
      }
    }
    for (std::size_t j = 0; j < target.family.size(); ++j) {
      if (!target.family.is_interior(j, w / 2)) continue;
      double gap = std::numeric_limits<double>::infinity();
      for (std::size_t i : dom) {
        const auto d = word_distance(target.spec, wb, target.family.elements[j], target.elements[image[i]].transform);
        if (!d.infinite) gap = std::min(gap, d.as_double());
      }
      win.image_gaps.push_back(gap);
    }
    qw.push_back(std::move(win));
  }
  ev.certificate = fit_quasi_isometry(qw, cfg.tol.qi_min_pairs);
  return ev;
}

Verdict coorbit_equivalence(const GroupSpec& a, const GroupSpec& b, const EquivConfig& cfg) {
  if (cfg.window < 2) throw ConfigurationError("window K must be >= 2");
  for (const auto* s : {&a, &b}) {
    const auto adm = admissibility_precheck(*s);
    if (!adm.admissible) throw DomainError("group fails its admissibility precheck: " + adm.detail);
  }
  Verdict v;
  v.config = cfg;
  v.evidence.support = support_equality_test(a, b, cover_params(cfg, cfg.window), cfg.support_samples);
  if (!v.evidence.support.equal) {
    v.outcome = Outcome::NotEquivalent;
    v.witnesses.push_back("frequency " + vec_string(*v.evidence.support.witness) + " lies in the support of " +
                          v.evidence.support.witness_side + " only");
    return v;
  }

  const auto ws = cfg.windows();
  const auto ca = build_with_context(a, cover_params(cfg, ws.back()), "A");
  const auto cb = build_with_context(b, cover_params(cfg, ws.back()), "B");
  const auto weak = weak_equivalence_test(*ca, *cb, ws, cfg.budget);
  v.evidence.count_trends = weak.trends;
  switch (weak.outcome) {
    case WeakOutcome::WeaklyEquivalent:
      v.outcome = Outcome::Equivalent;
      break;
    case WeakOutcome::NotWeaklyEquivalent:
      v.outcome = Outcome::NotEquivalent;
      v.witnesses.push_back(weak.detail);
      break;
    case WeakOutcome::Inconclusive:
      v.outcome = Outcome::Inconclusive;
      v.witnesses.push_back(weak.detail);
      break;
  }

  if (a.kind == GroupKind::Cyclic && b.kind == GroupKind::Cyclic) {
    try {
      v.evidence.epsilon = epsilon_criterion(a.generators[0], b.generators[0], 32, cfg.tol);
    } catch (const DomainError&) {
      // precondition not met: no scalar criterion to report
    }
  }
  if (cfg.with_qi) {
    v.evidence.qi = transition_qi(*cb, a, ca->base.reference, {cfg.window, 2 * cfg.window}, cfg);
  }
  if (cfg.with_norms) {
    const double growth = std::abs(step_matrices(a, cfg.step).front().determinant());
    const auto battery = scale_battery(a.dim, 1.0, std::max(growth, 1.0 / growth), 5);
    v.evidence.norm_ratios = compare_norms({ca, cb}, battery, cfg.grid, cfg.p, cfg.q, cfg.tol);
  }
  return v;
}

TransportResult conjugation_transport(const GroupSpec& a, const GroupSpec& b, const Mat& m, const EquivConfig& cfg) {
  TransportResult r;
  r.original = coorbit_equivalence(a, b, cfg);
  r.conjugated = coorbit_equivalence(conjugate_spec(a, m), conjugate_spec(b, m), cfg);
  r.agree = r.original.outcome == r.conjugated.outcome;
  return r;
}

// ---------------------------------------------------------------------------------------------
// Reports

nlohmann::json Verdict::to_json() const {
  nlohmann::json trends = nlohmann::json::array();
  for (const auto& t : evidence.count_trends) {
    trends.push_back({{"window", t.window},
                      {"maxAB", t.max_ab},
                      {"maxBA", t.max_ba},
                      {"argmaxAB", t.lattice_ab},
                      {"argmaxBA", t.lattice_ba},
                      {"sampledRatio", t.sampled_ratio}});
  }
  const auto& s = evidence.support;
  nlohmann::json support{{"equal", s.equal},   {"samples", s.samples}, {"both", s.both},
                         {"onlyA", s.only_a},  {"onlyB", s.only_b},    {"neither", s.neither}};
  if (s.witness) {
    support["witness"] = to_vector(*s.witness);
    support["witnessSide"] = s.witness_side;
  }
  nlohmann::json ev{{"supportTest", support}, {"countTrends", trends}};
  if (evidence.epsilon) {
    const auto& e = *evidence.epsilon;
    nlohmann::json seq = nlohmann::json::array();
    for (std::size_t i = 0; i < e.k.size(); ++i) seq.push_back({{"k", e.k[i]}, {"logS", e.log_s[i]}});
    ev["epsilon"] = {{"epsilon", e.epsilon}, {"kMax", e.k_max}, {"bounded", e.bounded}, {"rate", e.rate}, {"sequence", seq}};
  }
  if (evidence.qi) {
    ev["qi"] = nlohmann::json::parse(qi_to_json(evidence.qi->certificate));
    ev["qi"]["xi"] = to_vector(evidence.qi->xi);
    ev["qi"]["windows"] = evidence.qi->windows;
  }
  if (evidence.norm_ratios) ev["normRatios"] = evidence.norm_ratios->to_json();

  RunConfig rc;
  rc.window = config.window;
  rc.budget = config.budget;
  rc.coverage_samples = config.coverage_samples;
  rc.support_samples = config.support_samples;
  rc.seed = config.seed;
  rc.grid = config.grid;
  rc.p = config.p;
  rc.q = config.q;
  rc.with_qi = config.with_qi;
  rc.with_norms = config.with_norms;
  rc.tol = config.tol;
  return {{"outcome", to_string(outcome)}, {"witnesses", witnesses}, {"evidence", ev}, {"config", coorbit::to_json(rc)}};
}

std::string Verdict::trends_csv() const {
  std::string out = "window,maxAB,maxBA\n";
  for (const auto& t : evidence.count_trends) {
    out += std::to_string(t.window) + "," + std::to_string(t.max_ab) + "," + std::to_string(t.max_ba) + "\n";
  }
  return out;
}

}  // namespace coorbit
