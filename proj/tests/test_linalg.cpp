#include <cmath>
#include <numbers>

#include "coorbit/error.hpp"
#include "coorbit/linalg.hpp"
#include "coorbit/sampling.hpp"
#include "doctest.h"

using namespace coorbit;

namespace {
Mat diag(std::initializer_list<double> v) {
  Mat m = Mat::Zero(static_cast<int>(v.size()), static_cast<int>(v.size()));
  int k = 0;
  for (double x : v) m(k, k) = x, ++k;
  return m;
}
}  // namespace

TEST_CASE("exp of a diagonal matrix is entrywise exp") {
  const Mat e = mat_exp(diag({0.3, -1.7, 4.0}));
  CHECK(e(0, 0) == doctest::Approx(std::exp(0.3)).epsilon(1e-14));
  CHECK(e(1, 1) == doctest::Approx(std::exp(-1.7)).epsilon(1e-14));
  CHECK(e(2, 2) == doctest::Approx(std::exp(4.0)).epsilon(1e-14));
  CHECK(std::abs(e(0, 1)) < 1e-15);
}

TEST_CASE("exp of a rotation generator is the rotation") {
  for (double t : {0.1, 1.0, 3.0, 25.0}) {
    Mat x = Mat::Zero(2, 2);
    x(0, 1) = -t;
    x(1, 0) = t;
    const Mat r = mat_exp(x);
    CHECK(r(0, 0) == doctest::Approx(std::cos(t)).epsilon(1e-12));
    CHECK(r(1, 0) == doctest::Approx(std::sin(t)).epsilon(1e-12));
    CHECK(spectral_norm(r) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("real logarithm inverts exp near the identity") {
  RandomStream rng(7, 0);
  for (int trial = 0; trial < 20; ++trial) {
    Mat x(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) x(i, j) = 0.4 * rng.normal();
    Mat l;
    REQUIRE(mat_log_real(mat_exp(x), l));
    CHECK(distance(mat_exp(l), mat_exp(x)) < 1e-10 * spectral_norm(mat_exp(x)));
  }
  Mat l;
  CHECK_FALSE(mat_log_real(diag({-1.0, 2.0}), l));
}

TEST_CASE("scaled powers track the log scale without overflow") {
  const Mat a = diag({3.0, 2.0});
  for (long n : {-500L, -7L, 0L, 1L, 400L}) {
    const auto p = scaled_power(a, n);
    const double log_norm = std::log(spectral_norm(p.matrix)) + p.log_scale;
    const double oracle = n >= 0 ? n * std::log(3.0) : n * std::log(2.0);
    CHECK(log_norm == doctest::Approx(oracle).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("transpose solve and spectral quantities") {
  Mat h(2, 2);
  h << 2, 1, 0, 3;
  Vec xi(2);
  xi << 1, -2;
  const Vec y = solve_transpose(h, xi);
  CHECK((h.transpose() * y - xi).norm() < 1e-14);
  CHECK(spectral_norm(diag({-5.0, 2.0})) == doctest::Approx(5.0));
  CHECK(singular_value_min(diag({-5.0, 2.0})) == doctest::Approx(2.0));
  CHECK(condition_number(diag({-5.0, 2.0})) == doctest::Approx(2.5));
}

TEST_CASE("singularity test is row-scale free") {
  CHECK_NOTHROW(require_nonsingular(diag({std::ldexp(1.0, 60), std::ldexp(1.0, -60)}), "t"));
  Mat s(2, 2);
  s << 1, 1, 1, 1;
  CHECK_THROWS_AS(require_nonsingular(s, "t"), InvalidGroupElement);
  Mat bad = identity(2);
  bad(0, 1) = std::nan("");
  CHECK_THROWS_AS(validate_matrix(bad, "t"), ConfigurationError);
}

TEST_CASE("row conversions round trip") {
  const Mat m = from_rows({{1.5, -2}, {0.25, 1e-17}});
  CHECK(from_rows(to_rows(m)) == m);
  CHECK(to_vector(from_vector({1, 2, 3})) == std::vector<double>{1, 2, 3});
}

TEST_CASE("random streams are reproducible and directions are unit") {
  RandomStream a(42, 3);
  RandomStream b(42, 3);
  for (int k = 0; k < 10; ++k) CHECK(a.uniform() == b.uniform());
  for (int d = 1; d <= 4; ++d) {
    for (const auto& u : sphere_directions(d, 64)) CHECK(u.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(radical_inverse(1, 2) == 0.5);
  CHECK(radical_inverse(3, 2) == 0.75);
}
