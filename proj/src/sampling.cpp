#include "coorbit/sampling.hpp"

#include <cmath>
#include <numbers>

namespace coorbit {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined key
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) : engine_(mix_seed(seed, stream)) {}

double RandomStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double RandomStream::normal() {
  // Box–Muller on our own uniforms keeps the stream identical across standard libraries.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vec RandomStream::normal_vector(int d) {
  Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = normal();
  return v;
}

Vec RandomStream::unit_vector(int d) {
  Vec v = normal_vector(d);
  double n = v.norm();
  while (n < 1e-12) {
    v = normal_vector(d);
    n = v.norm();
  }
  return v / n;
}

double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

namespace {

double inverse_normal_cdf(double p) {
  // Acklam's rational approximation, refined with one Newton step on erfc.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  double x;
  if (p < 0.02425) {
    const double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p > 1 - 0.02425) {
    const double q = std::sqrt(-2 * std::log(1 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  }
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2 * std::numbers::pi) * std::exp(x * x / 2);
  return x - u / (1 + x * u / 2);
}

}  // namespace

std::vector<Vec> sphere_directions(int d, int count) {
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(count));
  if (d == 1) {
    for (int i = 0; i < count; ++i) {
      Vec v(1);
      v(0) = (i % 2 == 0) ? 1.0 : -1.0;
      out.push_back(v);
    }
    return out;
  }
  if (d == 2) {
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * std::numbers::pi * (i + 0.5) / count;
      Vec v(2);
      v << std::cos(a), std::sin(a);
      out.push_back(v);
    }
    return out;
  }
  if (d == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * i;
      Vec v(3);
      v << r * std::cos(phi), r * std::sin(phi), z;
      out.push_back(v);
    }
    return out;
  }
  static constexpr unsigned primes[] = {2, 3, 5, 7};
  for (int i = 0; i < count; ++i) {
    Vec v(d);
    for (int k = 0; k < d; ++k) {
      v(k) = inverse_normal_cdf(radical_inverse(static_cast<std::uint64_t>(i) + 1, primes[k]));
    }
    out.push_back(v / v.norm());
  }
  return out;
}

std::vector<Vec> great_circle_arc(const Vec& a, const Vec& b, int count) {
  std::vector<Vec> out;
  const double c = std::clamp(a.dot(b), -1.0, 1.0);
  const double theta = std::acos(c);
  if (count < 2) count = 2;
  Vec perp = b - c * a;
  const double pn = perp.norm();
  for (int i = 0; i < count; ++i) {
    const double t = theta * i / (count - 1);
    if (pn < 1e-14) {
      out.push_back(a);
    } else {
      out.push_back(std::cos(t) * a + std::sin(t) * perp / pn);
    }
  }
  return out;
}

}  // namespace coorbit
