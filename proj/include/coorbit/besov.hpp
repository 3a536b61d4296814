#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coorbit/config.hpp"
#include "coorbit/cover.hpp"
#include "coorbit/kernels.hpp"

namespace coorbit {

using Complex = std::complex<double>;

/// Samples on the periodic grid x_m = −L + m·2L/N (per axis), or on the matching frequency grid
/// ξ_k = k/(2L), k = −N/2 .. N/2 − 1, stored in FFT order. f̂(ξ) = ∫ f(x) e^{−2πi x·ξ} dx.
class GridFunction {
 public:
  enum class Layout { Spatial, Frequency };

  GridFunction(int dim, int n, double extent, Layout layout);
  static GridFunction from_spatial(int dim, int n, double extent, const std::function<Complex(const Vec&)>& f);
  static GridFunction from_frequency(int dim, int n, double extent, const std::function<Complex(const Vec&)>& fhat);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double extent() const { return extent_; }
  Layout layout() const { return layout_; }
  std::size_t size() const { return data_.size(); }
  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }

  double dx() const { return 2.0 * extent_ / n_; }
  double dxi() const { return 1.0 / (2.0 * extent_); }
  double cell() const;  ///< quadrature cell of the current layout
  Vec spatial_point(std::size_t flat) const;
  Vec frequency_point(std::size_t flat) const;

  GridFunction to_frequency() const;
  GridFunction to_spatial() const;
  double l2_norm() const;
  GridFunction scaled(Complex c) const;

 private:
  int dim_;
  int n_;
  double extent_;
  Layout layout_;
  std::vector<Complex> data_;
};

/// In-place transforms between the two layouts (the same conventions as GridFunction).
void forward_transform(int dim, int n, double extent, std::vector<Complex>& data);
void inverse_transform(int dim, int n, double extent, std::vector<Complex>& data);

/// Quintic smoothstep on [0, 1], clamped outside.
double smoothstep(double t);

/// Sum-normalized smooth partition subordinate to an induced cover.
class PartitionOfUnity {
 public:
  explicit PartitionOfUnity(std::shared_ptr<const InducedCover> cover);

  const InducedCover& cover() const { return *cover_; }
  /// Raw bump b_i(ξ): smoothstep of the normalized margin over [0, ramp].
  double raw(std::size_t i, const Vec& xi) const;
  /// (i, φ_i(ξ)) for the nonzero members; empty off the covered set. Throws CoverageGapError
  /// inside the normalization region when every bump vanishes.
  std::vector<std::pair<std::size_t, double>> at(const Vec& xi) const;
  bool in_region(const Vec& xi) const;
  double ramp() const { return ramp_; }
  double region_lo() const { return lo_; }
  double region_hi() const { return hi_; }

 private:
  std::shared_ptr<const InducedCover> cover_;
  double ramp_;
  double lo_;
  double hi_;
};

struct ElementMagnitude {
  std::size_t element = 0;
  long index = 0;  ///< first lattice coordinate (j for cyclic groups)
  double weight = 1.0;
  double magnitude = 0.0;
};

struct NormReport {
  double p = 2.0;
  double q = 2.0;
  std::vector<ElementMagnitude> terms;
  double norm = 0.0;
  double tail = 0.0;  ///< relative L² mass of f̂ outside the normalization region
  bool tail_warning = false;
};

/// ℓ^q combination of weight·magnitude (max for q = ∞).
double aggregate(const std::vector<ElementMagnitude>& terms, double q);

NormReport decomposition_norm(const GridFunction& f, const PartitionOfUnity& pou, double p, double q,
                              const Tolerances& tol = {}, Exec exec = Exec::Parallel);

/// φ̂ for ⟨A⟩: b(ξ) / Σ_j b(A^{jT} ξ) with b the raw bump of the default base shell.
class CyclicPartition {
 public:
  explicit CyclicPartition(const Mat& a, int budget = 256);
  const Mat& matrix() const { return a_; }
  double phi(const Vec& xi) const;     ///< j = 0 member
  double raw(const Vec& xi) const;
  /// Scales j with φ̂(A^{−jT}ξ) possibly nonzero for |ξ| in [lo, hi].
  std::pair<long, long> scale_range(double lo, double hi) const;

 private:
  Mat a_;
  std::shared_ptr<const InducedCover> base_;
  double ramp_;
  double r_lo_;
  double r_hi_;
  std::vector<Mat> orbit_;  ///< A^{jT} for the j ≠ 0 that can map the base shell into itself
};

NormReport anisotropic_besov_norm(const GridFunction& f, const Mat& a, double alpha, double p, double q,
                                  Exec exec = Exec::Parallel);

/// ψ̂ = raw / sqrt(Σ_j w |raw(G^{jT}ξ)|²) for the step matrix G of a one-generator group.
class AnalyzingWindow {
 public:
  AnalyzingWindow(std::function<double(const Vec&)> raw, const Mat& step, double weight, double support_lo,
                  double support_hi);
  /// Window for ⟨G⟩ from the square root of the cyclic partition member.
  static AnalyzingWindow from_partition(const Mat& step, double weight = 1.0);

  double raw(const Vec& xi) const { return raw_(xi); }
  double calderon_sum(const Vec& xi) const;  ///< Σ_j w |raw(G^{jT}ξ)|², ξ in the support annulus
  double operator()(const Vec& xi) const;    ///< normalized ψ̂
  const Mat& step() const { return step_; }
  double weight() const { return weight_; }
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }

 private:
  std::function<double(const Vec&)> raw_;
  Mat step_;
  double weight_;
  double lo_;
  double hi_;
  std::vector<Mat> orbit_;  ///< G^{jT} over the orbit range, j = 0 included
};

/// Max over points of |Σ_j w |ψ̂(A^{jT}ξ)|² − 1| after normalization; InadmissibleWindowError
/// if the raw sum vanishes at a point.
double calderon_check(const AnalyzingWindow& psi, const Mat& a, const std::vector<Vec>& points);

/// Quadrature nodes and the step of a one-generator group (Cyclic, OneParameter, ScalarSimilitude).
struct CoorbitQuadrature {
  Mat step;
  double weight = 1.0;  ///< Haar mass per node
  int window = 16;
};
CoorbitQuadrature default_quadrature(const GroupSpec& spec, int window, double step = 0.6931471805599453);

double coorbit_norm_direct(const GridFunction& f, const AnalyzingWindow& psi, const CoorbitQuadrature& quad, double p,
                           double q, Exec exec = Exec::Parallel);

/// Frequency bump packet: f̂(ξ) = exp(1 − 1/(1 − s²)) · e^{−2πi⟨m, ξ⟩}, s = |(ξ − c)/w|.
struct Packet {
  Vec center;
  Vec widths;
  Vec modulation;
  int scale = 0;

  Complex operator()(const Vec& xi) const;
  /// Grid of size n whose extent resolves the packet with clearance from the Nyquist boundary.
  GridFunction sample(int n) const;
};

struct RatioRow {
  int scale = 0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  double ratio = 0.0;
  double spread = 1.0;  ///< max/min of the ratios over all rows with scale ≤ this one
};

struct RatioStats {
  double p = 1.0;
  double q = 1.0;
  std::vector<RatioRow> rows;
  double min = 0.0;
  double max = 0.0;
  double spread = 1.0;
  std::vector<double> spread_by_scale;
  bool increasing = false;  ///< spread strictly increases from scale to scale
  bool tail_warning = false;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

struct NormCovers {
  std::shared_ptr<const InducedCover> a;
  std::shared_ptr<const InducedCover> b;
};
NormCovers norm_covers(const GroupSpec& a, const GroupSpec& b, int window, int budget, std::uint64_t seed);

RatioStats compare_norms(const NormCovers& covers, const std::vector<Packet>& battery, int grid, double p, double q,
                         const Tolerances& tol = {});

/// Packets along e_1 at radii c·|det A|^{j/d}, j = 1..count. The default width gives a radial
/// span of ln 3, one full dilation period for steps up to 3.
std::vector<Packet> scale_battery(int dim, double c, double growth, int count, double rel_width = 0.5);

nlohmann::json to_json(const NormReport& r);

}  // namespace coorbit
