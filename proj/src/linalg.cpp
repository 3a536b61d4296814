#include "coorbit/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>

#include "coorbit/error.hpp"

namespace coorbit {

Mat identity(int d) { return Mat::Identity(d, d); }

bool all_finite(const Mat& m) { return m.allFinite(); }

void validate_matrix(const Mat& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1 || m.rows() > kMaxDim) {
    throw ConfigurationError(std::string(what) + ": matrix must be square with 1 <= d <= 4");
  }
  if (!all_finite(m)) throw ConfigurationError(std::string(what) + ": non-finite entry");
}

void require_invertible(const Mat& m, const char* what) {
  if (std::abs(m.determinant()) < kSingularDetTol) {
    throw InvalidGroupElement(std::string(what) + ": matrix is singular (|det| < 1e-12)");
  }
}

void require_nonsingular(const Mat& m, const char* what) {
  // row-equilibrated reciprocal condition: anisotropic group powers have tiny determinants and
  // nearly parallel rows without being degenerate
  Mat scaled = m;
  for (int i = 0; i < m.rows(); ++i) {
    const double r = m.row(i).cwiseAbs().maxCoeff();
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw InvalidGroupElement(std::string(what) + ": matrix has a zero or non-finite row");
    }
    scaled.row(i) /= r;
  }
  Eigen::JacobiSVD<Mat> svd(scaled);
  const auto& sv = svd.singularValues();
  if (!(sv(sv.size() - 1) >= kSingularDetTol * sv(0))) {
    throw InvalidGroupElement(std::string(what) + ": matrix is singular (reciprocal condition < 1e-12 after row scaling)");
  }
}

double spectral_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

double singular_value_min(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

double condition_number(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

Mat inverse(const Mat& m) {
  require_nonsingular(m, "inverse");
  return m.partialPivLu().inverse();
}

Mat mat_exp(const Mat& x) {
  const int d = static_cast<int>(x.rows());
  const double norm = x.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / 0.5))));
  const Mat a = x / std::ldexp(1.0, squarings);

  // Padé [6/6]: N(a) = Σ c_k a^k, D(a) = Σ c_k (−a)^k.
  constexpr int q = 6;
  Mat term = identity(d);
  Mat numer = identity(d);
  Mat denom = identity(d);
  double c = 1.0;
  bool positive = true;
  for (int k = 1; k <= q; ++k) {
    c = c * (q - k + 1) / (k * (2.0 * q - k + 1));
    term = a * term;
    numer += c * term;
    positive = !positive;
    denom += (positive ? c : -c) * term;
  }
  Mat e = denom.partialPivLu().solve(numer);
  for (int k = 0; k < squarings; ++k) e = e * e;
  return e;
}

bool mat_log_real(const Mat& a, Mat& out) {
  // The principal logarithm is real unless some eigenvalue lies on the closed negative axis.
  for (const auto& ev : eigenvalues(a)) {
    if (ev.real() <= 0.0 && std::abs(ev.imag()) < 1e-12) return false;
  }
  const Eigen::MatrixXd dense = a;
  const Eigen::MatrixXd l = dense.log();
  if (!l.allFinite()) return false;
  out = l;
  return true;
}

Vec solve_transpose(const Mat& h, const Vec& xi) {
  require_nonsingular(h, "dual_action");
  const Mat ht = h.transpose();
  return ht.partialPivLu().solve(xi);
}

std::vector<std::complex<double>> eigenvalues(const Mat& m) {
  Eigen::EigenSolver<Mat> solver(m, false);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue solver failed");
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

ScaledMatrix scaled_power(const Mat& a, long n) {
  const int d = static_cast<int>(a.rows());
  Mat base = n >= 0 ? a : inverse(a);
  long count = n >= 0 ? n : -n;
  ScaledMatrix acc{identity(d), 0.0};
  // Binary powering with renormalization after every product keeps entries O(1).
  ScaledMatrix sq{base, 0.0};
  while (count > 0) {
    if (count & 1) {
      acc.matrix = acc.matrix * sq.matrix;
      acc.log_scale += sq.log_scale;
      const double s = acc.matrix.cwiseAbs().maxCoeff();
      if (s > 0.0) {
        acc.matrix /= s;
        acc.log_scale += std::log(s);
      }
    }
    count >>= 1;
    if (count > 0) {
      sq.matrix = sq.matrix * sq.matrix;
      sq.log_scale *= 2.0;
      const double s = sq.matrix.cwiseAbs().maxCoeff();
      if (s > 0.0) {
        sq.matrix /= s;
        sq.log_scale += std::log(s);
      }
    }
  }
  return acc;
}

Mat from_rows(const std::vector<std::vector<double>>& rows) {
  const auto d = static_cast<int>(rows.size());
  if (d < 1 || d > kMaxDim) throw ConfigurationError("matrix dimension must be in [1, 4]");
  Mat m(d, d);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != d) {
      throw ConfigurationError("matrix must be square");
    }
    for (int j = 0; j < d; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

std::vector<std::vector<double>> to_rows(const Mat& m) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i) {
    rows[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(m.cols()));
    for (int j = 0; j < m.cols(); ++j) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  }
  return rows;
}

Vec from_vector(const std::vector<double>& v) {
  Vec out(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<int>(i)) = v[i];
  return out;
}

std::vector<double> to_vector(const Vec& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace coorbit
