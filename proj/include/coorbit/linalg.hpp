#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace coorbit {

inline constexpr int kMaxDim = 4;

/// Dense d×d real matrix, 1 ≤ d ≤ 4, stored row-major without heap allocation.
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor, kMaxDim, kMaxDim>;
/// Point or direction in ℝ^d.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using CVec = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

inline constexpr double kSingularDetTol = 1e-12;

Mat identity(int d);
bool all_finite(const Mat& m);

/// Throws ConfigurationError unless m is square, 1 ≤ d ≤ 4 and finite.
void validate_matrix(const Mat& m, const char* what);
/// Throws InvalidGroupElement when |det m| < 1e-12.
void require_invertible(const Mat& m, const char* what);
/// σ_min/σ_max < 1e-12 after row scaling, for products and powers of group elements.
void require_nonsingular(const Mat& m, const char* what);

double spectral_norm(const Mat& m);
double singular_value_min(const Mat& m);
/// ‖m‖·‖m⁻¹‖ in the spectral norm.
double condition_number(const Mat& m);

Mat inverse(const Mat& m);

/// exp(X) by scaling and squaring with a diagonal [6/6] Padé approximant.
Mat mat_exp(const Mat& x);

/// Principal real logarithm; false when the spectrum touches the closed negative real axis.
bool mat_log_real(const Mat& a, Mat& out);

/// h^{-T} ξ via an LU solve of h^T y = ξ.
Vec solve_transpose(const Mat& h, const Vec& xi);

std::vector<std::complex<double>> eigenvalues(const Mat& m);

/// A^n with periodic renormalization; returns the normalized matrix and the log of the scale
/// factor so that A^n = exp(log_scale) · result.
struct ScaledMatrix {
  Mat matrix;
  double log_scale = 0.0;
};
ScaledMatrix scaled_power(const Mat& a, long n);

Mat from_rows(const std::vector<std::vector<double>>& rows);
std::vector<std::vector<double>> to_rows(const Mat& m);
Vec from_vector(const std::vector<double>& v);
std::vector<double> to_vector(const Vec& v);

/// Operator-norm distance ‖a − b‖.
inline double distance(const Mat& a, const Mat& b) { return spectral_norm(a - b); }

}  // namespace coorbit
