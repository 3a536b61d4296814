#include <cmath>

#include "coorbit/error.hpp"
#include "coorbit/matgroup.hpp"
#include "doctest.h"

using namespace coorbit;

namespace {
Mat diag2(double a, double b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}
}  // namespace

TEST_CASE("one-parameter admissibility follows the eigenvalue real parts") {
  const auto bad = check_one_parameter_admissible(diag2(1, -1));
  CHECK_FALSE(bad.admissible);
  CHECK(bad.witness.real() == doctest::Approx(-1.0));
  Mat x = identity(2);
  x(0, 1) = -1;
  x(1, 0) = 1;
  const auto good = check_one_parameter_admissible(x);
  CHECK(good.admissible);
  CHECK(good.sign == 1);
  CHECK(admissibility_precheck(GroupSpec::cyclic(2 * identity(2))).admissible);
  CHECK_FALSE(admissibility_precheck(GroupSpec::cyclic(diag2(2, 0.5))).admissible);
}

TEST_CASE("cyclic family enumerates the powers") {
  FamilyParams fp;
  fp.window = 4;
  const auto fam = enumerate_family(GroupSpec::cyclic(2 * identity(2)), fp);
  REQUIRE(fam.size() == 9);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const int k = fam.indices[i][0];
    CHECK(fam.elements[i].matrix(0, 0) == doctest::Approx(std::ldexp(1.0, k)));
    CHECK(fam.elements[i].matrix(0, 1) == 0.0);
  }
}

TEST_CASE("word metric axioms and left invariance on a one-parameter window") {
  const auto spec = GroupSpec::one_parameter(identity(2));
  FamilyParams fp;
  fp.window = 6;
  fp.step = 0.3;
  const auto fam = enumerate_family(spec, fp);
  const auto w = GeneratingSet::box(0.45);
  const auto shift = make_element(spec, {0.9});
  int violations = 0;
  for (std::size_t a = 0; a < fam.size(); ++a) {
    CHECK(word_distance(spec, w, fam.elements[a], fam.elements[a]).value == 0);
    for (std::size_t b = 0; b < fam.size(); ++b) {
      const auto dab = word_distance(spec, w, fam.elements[a], fam.elements[b]);
      const auto dba = word_distance(spec, w, fam.elements[b], fam.elements[a]);
      violations += dab.value != dba.value;
      // oracle: ⌈|t_a − t_b| / δ⌉
      const double dt = std::abs((*fam.elements[a].coords)[0] - (*fam.elements[b].coords)[0]);
      violations += dab.value != static_cast<long>(std::ceil(dt / 0.45 - 1e-9));
      const auto ga = make_element(spec, {(*shift.coords)[0] + (*fam.elements[a].coords)[0]});
      const auto gb = make_element(spec, {(*shift.coords)[0] + (*fam.elements[b].coords)[0]});
      violations += word_distance(spec, w, ga, gb).value != dab.value;
      for (std::size_t c = 0; c < fam.size(); ++c) {
        const auto dac = word_distance(spec, w, fam.elements[a], fam.elements[c]);
        const auto dcb = word_distance(spec, w, fam.elements[c], fam.elements[b]);
        violations += dab.value > dac.value + dcb.value;
      }
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("discrete word metric on Z^2 is the l1 exponent distance") {
  const auto spec = GroupSpec::discrete({diag2(2, 1), diag2(1, 3)});
  const auto w = GeneratingSet::default_for(spec, 1.0);
  const GroupElement id{identity(2), std::nullopt};
  for (int a = -3; a <= 3; ++a) {
    for (int b = -2; b <= 2; ++b) {
      const GroupElement g{diag2(std::pow(2.0, a), std::pow(3.0, b)), std::nullopt};
      CHECK(word_distance(spec, w, id, g).value == std::abs(a) + std::abs(b));
    }
  }
}

TEST_CASE("similitude chart has determinant e^{d s}") {
  const auto spec = GroupSpec::similitude(2);
  const Mat m = chart(spec, {0.7, 1.2});
  CHECK(m.determinant() == doctest::Approx(std::exp(1.4)));
  CHECK(haar_weight(spec, make_element(spec, {0.7, 1.2})) == 1.0);
}

TEST_CASE("conjugation transforms generators") {
  Mat a(2, 2);
  a << 1, 2, 0, 1;
  const auto spec = conjugate_spec(GroupSpec::cyclic(diag2(2, 3)), a);
  CHECK(distance(spec.generators[0], inverse(a) * diag2(2, 3) * a) < 1e-14);
  CHECK_THROWS_AS(GroupSpec::abelian_flow({diag2(1, 0), Mat(from_rows({{0, 1}, {0, 0}}))}), ConfigurationError);
  CHECK_THROWS_AS(group_kind_from_string("Lattice"), ConfigurationError);
}
