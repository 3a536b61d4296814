#include "coorbit/besov.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "coorbit/error.hpp"

namespace coorbit {

namespace {

std::size_t grid_size(int dim, int n) {
  std::size_t s = 1;
  for (int k = 0; k < dim; ++k) s *= static_cast<std::size_t>(n);
  return s;
}

void check_grid(int dim, int n, double extent) {
  if (dim < 1 || dim > 3) throw ConfigurationError("grid functions support 1 <= d <= 3");
  if (n < 4 || n > 256 || (n & (n - 1)) != 0) throw ConfigurationError("grid size must be a power of two <= 256");
  if (!(extent > 0.0) || !std::isfinite(extent)) throw ConfigurationError("grid extent must be positive");
}

// FFTW's planner is not thread-safe; execution on fresh arrays is.
fftw_plan plan_for(int dim, int n, int sign) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(dim, n, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  const std::size_t size = grid_size(dim, n);
  auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * size));
  int dims[3] = {n, n, n};
  fftw_plan p = fftw_plan_dft(dim, dims, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  if (!p) throw NumericalError("FFTW planning failed");
  plans.emplace(key, p);
  return p;
}

// (−1)^{k_1 + ... + k_d} for the flat index.
double parity(std::size_t flat, int dim, int n) {
  std::size_t s = 0;
  for (int k = 0; k < dim; ++k) {
    s += flat % static_cast<std::size_t>(n);
    flat /= static_cast<std::size_t>(n);
  }
  return (s & 1) ? -1.0 : 1.0;
}

double unit_weight(double det, double p) {
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  return std::pow(std::abs(det), 0.5 - inv_p);
}

// j-range outside which G^{jT} maps the annulus [lo, hi] off itself.
std::pair<long, long> orbit_range(const Mat& g, double lo, double hi) {
  const double ratio = hi / lo;
  auto escapes = [&](long j) {
    const ScaledMatrix m = scaled_power(g.transpose(), j);
    const double scale = std::exp(m.log_scale);
    return singular_value_min(m.matrix) * scale > ratio || spectral_norm(m.matrix) * scale < 1.0 / ratio;
  };
  long plus = 0;
  long minus = 0;
  for (long j = 1; j <= 400; ++j) {
    if (!escapes(j)) plus = j;
    if (!escapes(-j)) minus = j;
  }
  if (plus == 400 || minus == 400) throw DomainError("step matrix does not move the annulus off itself");
  return {-minus, plus};
}

std::vector<Mat> orbit_powers(const Mat& g, double lo, double hi, bool with_identity) {
  const auto [j0, j1] = orbit_range(g, lo, hi);
  std::vector<Mat> out;
  for (long j = j0; j <= j1; ++j) {
    if (j == 0 && !with_identity) continue;
    const ScaledMatrix m = scaled_power(g.transpose(), j);
    out.push_back(m.matrix * std::exp(m.log_scale));
  }
  return out;
}

std::vector<std::size_t> support_indices(const std::vector<Complex>& fhat) {
  double mx = 0.0;
  for (const auto& z : fhat) mx = std::max(mx, std::abs(z));
  std::vector<std::size_t> idx;
  if (mx == 0.0) return idx;
  for (std::size_t k = 0; k < fhat.size(); ++k) {
    if (std::abs(fhat[k]) > 1e-14 * mx) idx.push_back(k);
  }
  return idx;
}

// ‖ℱ^{-1}(field)‖_p for a batch of sparse frequency fields.
std::vector<double> sparse_lp_norms(const GridFunction& f, const std::vector<std::vector<std::pair<std::size_t, Complex>>>& fields,
                                    double p, Exec exec) {
  std::vector<double> out(fields.size(), 0.0);
  const std::size_t size = f.size();
  const double cell = std::pow(f.dx(), f.dim());
  const std::size_t batch = 8;
  for (std::size_t start = 0; start < fields.size(); start += batch) {
    const std::size_t stop = std::min(fields.size(), start + batch);
    std::vector<std::vector<Complex>> dense(stop - start, std::vector<Complex>(size));
    const auto m = static_cast<std::ptrdiff_t>(stop - start);
    auto build = [&](std::ptrdiff_t k) {
      auto& v = dense[static_cast<std::size_t>(k)];
      for (const auto& [i, z] : fields[start + static_cast<std::size_t>(k)]) v[i] = z;
      inverse_transform(f.dim(), f.n(), f.extent(), v);
    };
    if (exec == Exec::Serial) {
      for (std::ptrdiff_t k = 0; k < m; ++k) build(k);
    } else {
#pragma omp parallel for schedule(dynamic, 1)
      for (std::ptrdiff_t k = 0; k < m; ++k) build(k);
    }
    const auto norms = lp_norms(dense, p, cell, exec);
    std::copy(norms.begin(), norms.end(), out.begin() + static_cast<std::ptrdiff_t>(start));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// Grid functions

void forward_transform(int dim, int n, double extent, std::vector<Complex>& data) {
  check_grid(dim, n, extent);
  if (data.size() != grid_size(dim, n)) throw ConfigurationError("grid data has the wrong size");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan_for(dim, n, FFTW_FORWARD), buf, buf);
  const double scale = std::pow(2.0 * extent / n, dim);
  for (std::size_t k = 0; k < data.size(); ++k) data[k] *= scale * parity(k, dim, n);
}

void inverse_transform(int dim, int n, double extent, std::vector<Complex>& data) {
  check_grid(dim, n, extent);
  if (data.size() != grid_size(dim, n)) throw ConfigurationError("grid data has the wrong size");
  for (std::size_t k = 0; k < data.size(); ++k) data[k] *= parity(k, dim, n);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan_for(dim, n, FFTW_BACKWARD), buf, buf);
  const double scale = std::pow(1.0 / (2.0 * extent), dim);
  for (auto& z : data) z *= scale;
}

GridFunction::GridFunction(int dim, int n, double extent, Layout layout)
    : dim_(dim), n_(n), extent_(extent), layout_(layout) {
  check_grid(dim, n, extent);
  data_.assign(grid_size(dim, n), Complex(0.0, 0.0));
}

GridFunction GridFunction::from_spatial(int dim, int n, double extent, const std::function<Complex(const Vec&)>& f) {
  GridFunction g(dim, n, extent, Layout::Spatial);
  for (std::size_t k = 0; k < g.size(); ++k) g.data_[k] = f(g.spatial_point(k));
  return g;
}

GridFunction GridFunction::from_frequency(int dim, int n, double extent,
                                          const std::function<Complex(const Vec&)>& fhat) {
  GridFunction g(dim, n, extent, Layout::Frequency);
  for (std::size_t k = 0; k < g.size(); ++k) g.data_[k] = fhat(g.frequency_point(k));
  return g;
}

double GridFunction::cell() const { return std::pow(layout_ == Layout::Spatial ? dx() : dxi(), dim_); }

Vec GridFunction::spatial_point(std::size_t flat) const {
  Vec x(dim_);
  for (int a = dim_ - 1; a >= 0; --a) {
    x(a) = -extent_ + static_cast<double>(flat % static_cast<std::size_t>(n_)) * dx();
    flat /= static_cast<std::size_t>(n_);
  }
  return x;
}

Vec GridFunction::frequency_point(std::size_t flat) const {
  Vec xi(dim_);
  for (int a = dim_ - 1; a >= 0; --a) {
    long k = static_cast<long>(flat % static_cast<std::size_t>(n_));
    if (k >= n_ / 2) k -= n_;
    xi(a) = static_cast<double>(k) * dxi();
    flat /= static_cast<std::size_t>(n_);
  }
  return xi;
}

GridFunction GridFunction::to_frequency() const {
  GridFunction g = *this;
  if (layout_ == Layout::Frequency) return g;
  forward_transform(dim_, n_, extent_, g.data_);
  g.layout_ = Layout::Frequency;
  return g;
}

GridFunction GridFunction::to_spatial() const {
  GridFunction g = *this;
  if (layout_ == Layout::Spatial) return g;
  inverse_transform(dim_, n_, extent_, g.data_);
  g.layout_ = Layout::Spatial;
  return g;
}

double GridFunction::l2_norm() const {
  double acc = 0.0;
  for (const auto& z : data_) acc += std::norm(z);
  return std::sqrt(acc * cell());
}

GridFunction GridFunction::scaled(Complex c) const {
  GridFunction g = *this;
  for (auto& z : g.data_) z *= c;
  return g;
}

// ---------------------------------------------------------------------------------------------
// Partitions

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (t * (t * 6.0 - 15.0) + 10.0);
}

PartitionOfUnity::PartitionOfUnity(std::shared_ptr<const InducedCover> cover) : cover_(std::move(cover)) {
  if (!cover_->params.verify_coverage) {
    throw ConfigurationError("partition of unity needs a cover built with coverage verification");
  }
  ramp_ = 0.5 * cover_->min_best_margin;
  if (!(ramp_ > 0.0)) throw CoverConstructionError("cover has no positive interior margin", {});
  // same interior half of the log-annulus on which min_best_margin was measured
  const double mid = 0.5 * (std::log(cover_->r_min) + std::log(cover_->r_max));
  const double quarter = 0.25 * (std::log(cover_->r_max) - std::log(cover_->r_min));
  lo_ = std::exp(mid - quarter);
  hi_ = std::exp(mid + quarter);
}

double PartitionOfUnity::raw(std::size_t i, const Vec& xi) const {
  return smoothstep(cover_->margin(i, xi) / ramp_);
}

bool PartitionOfUnity::in_region(const Vec& xi) const {
  const double r = xi.norm();
  return r >= lo_ && r <= hi_ && cover_->spec.support.contains(xi);
}

std::vector<std::pair<std::size_t, double>> PartitionOfUnity::at(const Vec& xi) const {
  std::vector<std::pair<std::size_t, double>> out;
  double sum = 0.0;
  for (std::size_t i : cover_->containing(xi)) {
    const double b = raw(i, xi);
    if (b > 0.0) {
      out.emplace_back(i, b);
      sum += b;
    }
  }
  if (sum == 0.0) {
    if (in_region(xi)) throw CoverageGapError("partition of unity vanishes inside its region", to_vector(xi));
    return {};
  }
  for (auto& [i, v] : out) v /= sum;
  return out;
}

double aggregate(const std::vector<ElementMagnitude>& terms, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (const auto& t : terms) m = std::max(m, t.weight * t.magnitude);
    return m;
  }
  double acc = 0.0;
  for (const auto& t : terms) acc += std::pow(t.weight * t.magnitude, q);
  return std::pow(acc, 1.0 / q);
}

NormReport decomposition_norm(const GridFunction& f, const PartitionOfUnity& pou, double p, double q,
                              const Tolerances& tol, Exec exec) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw ConfigurationError("p and q must lie in [1, inf]");
  if (f.dim() != pou.cover().spec.dim) throw ConfigurationError("grid and cover dimensions differ");
  const GridFunction fh = f.to_frequency();
  NormReport r;
  r.p = p;
  r.q = q;

  std::map<std::size_t, std::vector<std::pair<std::size_t, Complex>>> pieces;
  double total = 0.0;
  double outside = 0.0;
  for (std::size_t k : support_indices(fh.data())) {
    const Vec xi = fh.frequency_point(k);
    const double m2 = std::norm(fh.data()[k]);
    total += m2;
    if (!pou.in_region(xi)) outside += m2;
    for (const auto& [i, phi] : pou.at(xi)) pieces[i].emplace_back(k, phi * fh.data()[k]);
  }
  r.tail = total > 0.0 ? std::sqrt(outside / total) : 0.0;
  r.tail_warning = r.tail > tol.tail_warning;

  std::vector<std::vector<std::pair<std::size_t, Complex>>> fields;
  for (auto& [i, field] : pieces) {
    const auto& e = pou.cover().elements[i];
    r.terms.push_back({i, e.lattice.empty() ? 0 : e.lattice[0], unit_weight(e.transform.matrix.determinant(), p), 0.0});
    fields.push_back(std::move(field));
  }
  const auto norms = sparse_lp_norms(fh, fields, p, exec);
  for (std::size_t t = 0; t < r.terms.size(); ++t) r.terms[t].magnitude = norms[t];
  r.norm = aggregate(r.terms, q);
  return r;
}

// ---------------------------------------------------------------------------------------------
// Cyclic partitions and anisotropic Besov norms

CyclicPartition::CyclicPartition(const Mat& a, int budget) : a_(a) {
  CoverParams params;
  params.window = 4;
  params.budget = budget;
  params.self_stats = false;
  auto cover = std::make_shared<InducedCover>(build_induced_cover(GroupSpec::cyclic(a), params));
  ramp_ = 0.5 * cover->min_best_margin;
  r_lo_ = cover->base.region.radial_lo();
  r_hi_ = cover->base.region.radial_hi();
  base_ = std::move(cover);
  orbit_ = orbit_powers(a_, r_lo_, r_hi_, false);
}

double CyclicPartition::raw(const Vec& xi) const {
  return smoothstep(base_->base.region.margin(xi, base_->log_half_thickness()) / ramp_);
}

double CyclicPartition::phi(const Vec& xi) const {
  const double b = raw(xi);
  if (b == 0.0) return 0.0;
  double sum = b;
  for (const auto& m : orbit_) {
    const Vec v = m * xi;
    const double r = v.norm();
    if (r >= r_lo_ && r <= r_hi_) sum += raw(v);
  }
  return b / sum;
}

std::pair<long, long> CyclicPartition::scale_range(double lo, double hi) const {
  long first = std::numeric_limits<long>::max();
  long last = std::numeric_limits<long>::min();
  for (long j = -400; j <= 400; ++j) {
    const ScaledMatrix m = scaled_power(a_.transpose(), j);
    const double s = std::exp(m.log_scale);
    const double rlo = r_lo_ * singular_value_min(m.matrix) * s;
    const double rhi = r_hi_ * spectral_norm(m.matrix) * s;
    if (rhi < lo || rlo > hi) continue;
    first = std::min(first, j);
    last = std::max(last, j);
  }
  if (first > last) return {0, -1};
  return {first, last};
}

NormReport anisotropic_besov_norm(const GridFunction& f, const Mat& a, double alpha, double p, double q, Exec exec) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw ConfigurationError("p and q must lie in [1, inf]");
  validate_matrix(a, "Besov dilation");
  if (a.rows() != f.dim()) throw ConfigurationError("dilation and grid dimensions differ");
  for (const auto& ev : eigenvalues(a)) {
    if (!(std::abs(ev) > 1.0 + 1e-9)) throw DomainError("Besov dilation must be expansive");
  }
  const CyclicPartition part(a);
  const GridFunction fh = f.to_frequency();
  const auto support = support_indices(fh.data());
  NormReport r;
  r.p = p;
  r.q = q;
  if (support.empty()) return r;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t k : support) {
    const double n = fh.frequency_point(k).norm();
    if (n == 0.0) continue;
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  const auto [j0, j1] = part.scale_range(lo, hi);
  const double log_det = std::log(std::abs(a.determinant()));

  std::vector<std::vector<std::pair<std::size_t, Complex>>> fields;
  for (long j = j0; j <= j1; ++j) {
    const ScaledMatrix m = scaled_power(a.transpose(), -j);
    const Mat mj = m.matrix * std::exp(m.log_scale);
    std::vector<std::pair<std::size_t, Complex>> field;
    for (std::size_t k : support) {
      const double phi = part.phi(mj * fh.frequency_point(k));
      if (phi > 0.0) field.emplace_back(k, phi * fh.data()[k]);
    }
    if (field.empty()) continue;
    r.terms.push_back({static_cast<std::size_t>(r.terms.size()), j, std::exp(alpha * static_cast<double>(j) * log_det), 0.0});
    fields.push_back(std::move(field));
  }
  const auto norms = sparse_lp_norms(fh, fields, p, exec);
  for (std::size_t t = 0; t < r.terms.size(); ++t) r.terms[t].magnitude = norms[t];
  r.norm = aggregate(r.terms, q);
  return r;
}

// ---------------------------------------------------------------------------------------------
// Analyzing windows and direct coorbit norms

AnalyzingWindow::AnalyzingWindow(std::function<double(const Vec&)> raw, const Mat& step, double weight,
                                 double support_lo, double support_hi)
    : raw_(std::move(raw)), step_(step), weight_(weight), lo_(support_lo), hi_(support_hi) {
  validate_matrix(step, "analyzing window step");
  if (!(weight > 0.0)) throw ConfigurationError("quadrature weight must be positive");
  if (!(support_lo > 0.0) || !(support_hi > support_lo)) throw ConfigurationError("window support must be an annulus");
  orbit_ = orbit_powers(step_, lo_, hi_, true);
}

AnalyzingWindow AnalyzingWindow::from_partition(const Mat& step, double weight) {
  auto part = std::make_shared<CyclicPartition>(step);
  CoverParams params;
  params.window = 1;
  params.verify_coverage = false;
  params.self_stats = false;
  const auto base = build_induced_cover(GroupSpec::cyclic(step), params).base.region;
  return AnalyzingWindow([part](const Vec& xi) { return std::sqrt(part->phi(xi)); }, step, weight, base.radial_lo(),
                         base.radial_hi());
}

double AnalyzingWindow::calderon_sum(const Vec& xi) const {
  double sum = 0.0;
  for (const auto& m : orbit_) {
    const Vec v = m * xi;
    const double r = v.norm();
    if (r < lo_ || r > hi_) continue;
    const double b = raw_(v);
    sum += weight_ * b * b;
  }
  return sum;
}

double AnalyzingWindow::operator()(const Vec& xi) const {
  const double r = xi.norm();
  if (r < lo_ || r > hi_) return 0.0;
  const double b = raw_(xi);
  if (b == 0.0) return 0.0;
  return b / std::sqrt(calderon_sum(xi));
}

double calderon_check(const AnalyzingWindow& psi, const Mat& a, const std::vector<Vec>& points) {
  validate_matrix(a, "Calderon dilation");
  for (const auto& ev : eigenvalues(a)) {
    if (!(std::abs(ev) > 1.0 + 1e-9)) throw DomainError("Calderon check needs an expansive matrix");
  }
  const auto orbit = orbit_powers(a, psi.support_lo(), psi.support_hi(), true);
  double worst = 0.0;
  for (const auto& xi : points) {
    double raw_sum = 0.0;
    double sum = 0.0;
    for (const auto& m : orbit) {
      const Vec v = m * xi;
      const double b = psi.raw(v);
      if (b == 0.0) continue;
      raw_sum += b * b;
      const double s = psi(v);
      sum += psi.weight() * s * s;
    }
    if (raw_sum == 0.0) throw InadmissibleWindowError("Calderon sum vanishes", to_vector(xi));
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

CoorbitQuadrature default_quadrature(const GroupSpec& spec, int window, double step) {
  CoorbitQuadrature qd;
  qd.window = window;
  switch (spec.kind) {
    case GroupKind::Cyclic:
      qd.step = spec.generators[0];
      qd.weight = 1.0;
      break;
    case GroupKind::OneParameter:
      qd.step = mat_exp(step * spec.generators[0]);
      qd.weight = step;
      break;
    case GroupKind::ScalarSimilitude:
      qd.step = std::exp(step) * identity(spec.dim);
      qd.weight = step;
      break;
    default:
      throw NotSupported("direct coorbit norms need a Cyclic, OneParameter or ScalarSimilitude group");
  }
  return qd;
}

double coorbit_norm_direct(const GridFunction& f, const AnalyzingWindow& psi, const CoorbitQuadrature& quad, double p,
                           double q, Exec exec) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw ConfigurationError("p and q must lie in [1, inf]");
  if (quad.window < 1) throw ConfigurationError("quadrature window must be >= 1");
  const GridFunction fh = f.to_frequency();
  const auto support = support_indices(fh.data());
  if (support.empty()) return 0.0;
  const int nodes = 2 * quad.window + 1;
  std::vector<Mat> hts;
  std::vector<double> dets;
  for (int j = -quad.window; j <= quad.window; ++j) {
    const ScaledMatrix m = scaled_power(quad.step, j);
    const Mat h = m.matrix * std::exp(m.log_scale);
    hts.push_back(h.transpose());
    dets.push_back(std::abs(h.determinant()));
  }
  // ψ̂(h^T ξ) = raw(h^T ξ) / sqrt(S(ξ)); S is the full orbit sum, so the end nodes must stay silent
  std::vector<std::vector<std::pair<std::size_t, Complex>>> fields(static_cast<std::size_t>(nodes));
  std::vector<std::pair<int, double>> hits;
  for (std::size_t k : support) {
    const Vec xi = fh.frequency_point(k);
    if (xi.norm() == 0.0) throw TruncationError("f has mass at the zero frequency");
    hits.clear();
    double s = 0.0;
    for (int t = 0; t < nodes; ++t) {
      const Vec v = hts[static_cast<std::size_t>(t)] * xi;
      const double r = v.norm();
      if (r < psi.support_lo() || r > psi.support_hi()) continue;
      const double b = psi.raw(v);
      if (b == 0.0) continue;
      s += psi.weight() * b * b;
      hits.emplace_back(t, b);
    }
    if (hits.empty() || hits.front().first == 0 || hits.back().first == nodes - 1) {
      throw TruncationError("quadrature window misses part of the frequency support");
    }
    for (const auto& [t, b] : hits) {
      const double val = b / std::sqrt(s) * std::sqrt(dets[static_cast<std::size_t>(t)]);
      fields[static_cast<std::size_t>(t)].emplace_back(k, fh.data()[k] * val);
    }
  }
  std::vector<std::vector<std::pair<std::size_t, Complex>>> active;
  std::vector<std::size_t> which;
  for (int t = 0; t < nodes; ++t) {
    if (fields[static_cast<std::size_t>(t)].empty()) continue;
    active.push_back(std::move(fields[static_cast<std::size_t>(t)]));
    which.push_back(static_cast<std::size_t>(t));
  }
  const auto norms = sparse_lp_norms(fh, active, p, exec);
  if (std::isinf(q)) return *std::max_element(norms.begin(), norms.end());
  double acc = 0.0;
  for (std::size_t a = 0; a < norms.size(); ++a) acc += quad.weight * std::pow(norms[a], q) / dets[which[a]];
  return std::pow(acc, 1.0 / q);
}

// ---------------------------------------------------------------------------------------------
// Batteries and norm comparison

Complex Packet::operator()(const Vec& xi) const {
  double s2 = 0.0;
  for (int k = 0; k < xi.size(); ++k) {
    const double t = (xi(k) - center(k)) / widths(k);
    s2 += t * t;
  }
  if (s2 >= 1.0) return {0.0, 0.0};
  const double amp = std::exp(1.0 - 1.0 / (1.0 - s2));
  const double phase = modulation.size() == 0 ? 0.0 : -2.0 * std::numbers::pi * modulation.dot(xi);
  return std::polar(amp, phase);
}

GridFunction Packet::sample(int n) const {
  const int d = static_cast<int>(center.size());
  if (widths.size() != d || (modulation.size() != 0 && modulation.size() != d)) {
    throw ConfigurationError("packet center, widths and modulation differ in dimension");
  }
  if ((widths.array() <= 0.0).any()) throw ConfigurationError("packet widths must be positive");
  const double reach = (center.cwiseAbs() + widths).maxCoeff();
  // four cells of clearance below the Nyquist frequency n/(4L)
  const double extent = (n / 4.0 - 2.0) / reach;
  if (2.0 * extent * widths.minCoeff() < 2.0) throw ConfigurationError("grid too coarse to resolve the packet");
  return GridFunction::from_frequency(d, n, extent, [this](const Vec& xi) { return (*this)(xi); });
}

std::vector<Packet> scale_battery(int dim, double c, double growth, int count, double rel_width) {
  std::vector<Packet> out;
  for (int j = 1; j <= count; ++j) {
    Packet pk;
    pk.center = Vec::Zero(dim);
    pk.center(0) = c * std::pow(growth, static_cast<double>(j) / dim);
    pk.widths = Vec::Constant(dim, rel_width * pk.center(0));
    pk.modulation = Vec::Zero(dim);
    pk.scale = j;
    out.push_back(pk);
  }
  return out;
}

NormCovers norm_covers(const GroupSpec& a, const GroupSpec& b, int window, int budget, std::uint64_t seed) {
  CoverParams params;
  params.window = window;
  params.budget = budget;
  params.seed = seed;
  params.self_stats = false;
  return {std::make_shared<InducedCover>(build_induced_cover(a, params)),
          std::make_shared<InducedCover>(build_induced_cover(b, params))};
}

RatioStats compare_norms(const NormCovers& covers, const std::vector<Packet>& battery, int grid, double p, double q,
                         const Tolerances& tol) {
  if (battery.empty()) throw ConfigurationError("empty test battery");
  const PartitionOfUnity pa(covers.a);
  const PartitionOfUnity pb(covers.b);
  RatioStats s;
  s.p = p;
  s.q = q;
  for (const auto& pk : battery) {
    const GridFunction g = pk.sample(grid);
    const auto ra = decomposition_norm(g, pa, p, q, tol);
    const auto rb = decomposition_norm(g, pb, p, q, tol);
    s.tail_warning = s.tail_warning || ra.tail_warning || rb.tail_warning;
    if (!(rb.norm > 0.0)) throw NumericalError("test function has zero norm for the second group");
    s.rows.push_back({pk.scale, ra.norm, rb.norm, ra.norm / rb.norm, 1.0});
  }
  std::stable_sort(s.rows.begin(), s.rows.end(), [](const auto& x, const auto& y) { return x.scale < y.scale; });
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t k = 0; k < s.rows.size(); ++k) {
    lo = std::min(lo, s.rows[k].ratio);
    hi = std::max(hi, s.rows[k].ratio);
    s.rows[k].spread = hi / lo;
    if (k + 1 == s.rows.size() || s.rows[k + 1].scale != s.rows[k].scale) s.spread_by_scale.push_back(hi / lo);
  }
  s.min = lo;
  s.max = hi;
  s.spread = hi / lo;
  s.increasing = s.spread_by_scale.size() >= 2;
  for (std::size_t k = 1; k < s.spread_by_scale.size(); ++k) {
    s.increasing = s.increasing && s.spread_by_scale[k] > s.spread_by_scale[k - 1] * (1.0 + 1e-12);
  }
  return s;
}

nlohmann::json RatioStats::to_json() const {
  nlohmann::json rows_j = nlohmann::json::array();
  for (const auto& r : rows) {
    rows_j.push_back({{"scale", r.scale}, {"normA", r.norm_a}, {"normB", r.norm_b}, {"ratio", r.ratio}, {"spread", r.spread}});
  }
  return {{"p", std::isinf(p) ? nlohmann::json("inf") : nlohmann::json(p)},
          {"q", std::isinf(q) ? nlohmann::json("inf") : nlohmann::json(q)},
          {"min", min},
          {"max", max},
          {"spread", spread},
          {"spreadByScale", spread_by_scale},
          {"spreadIncreasing", increasing},
          {"tailWarning", tail_warning},
          {"rows", rows_j}};
}

std::string RatioStats::to_csv() const {
  std::string out = "j,normA,normB,ratio\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", r.scale, r.norm_a, r.norm_b, r.ratio);
    out += buf;
  }
  return out;
}

nlohmann::json to_json(const NormReport& r) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : r.terms) {
    terms.push_back({{"element", t.element}, {"index", t.index}, {"weight", t.weight}, {"magnitude", t.magnitude}});
  }
  return {{"p", std::isinf(r.p) ? nlohmann::json("inf") : nlohmann::json(r.p)},
          {"q", std::isinf(r.q) ? nlohmann::json("inf") : nlohmann::json(r.q)},
          {"norm", r.norm},
          {"tail", r.tail},
          {"tailWarning", r.tail_warning},
          {"terms", terms}};
}

}  // namespace coorbit
