#include <cmath>

#include "coorbit/equiv.hpp"
#include "coorbit/error.hpp"
#include "doctest.h"

using namespace coorbit;

namespace {
Mat diag(std::initializer_list<double> v) {
  Vec d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) d(k++) = x;
  return d.asDiagonal();
}

EquivConfig quick() {
  EquivConfig c;
  c.window = 8;
  c.coverage_samples = 1024;
  c.support_samples = 512;
  return c;
}
}  // namespace

TEST_CASE("epsilon criterion for the anisotropic pair") {
  const auto e = epsilon_criterion(diag({3.0, 2.0, 2.0}), diag({2.0, 2.0, 3.0}), 16);
  CHECK(e.epsilon == doctest::Approx(1.0));
  CHECK_FALSE(e.bounded);
  // oracle: A^{-k} B^{k} = diag((2/3)^k, 1, (3/2)^k)
  for (long k = -16; k <= 16; ++k) CHECK(e.s(k) == doctest::Approx(std::pow(1.5, std::abs(k))).epsilon(1e-12));
  CHECK(e.s(5) == doctest::Approx(7.59375).epsilon(1e-12));
  CHECK(e.rate == doctest::Approx(std::log(1.5)).epsilon(1e-9));
}

TEST_CASE("epsilon criterion is bounded for powers of one matrix") {
  Mat a(2, 2);
  a << 2, 1, 0, 2;
  const auto e = epsilon_criterion(a, a * a, 12);
  CHECK(e.epsilon == doctest::Approx(0.5));
  CHECK(e.bounded);
  CHECK_THROWS_AS(epsilon_criterion(diag({2.0, 0.5}), a, 8), DomainError);
  CHECK_THROWS_AS(epsilon_criterion(a, inverse(a), 8), DomainError);
}

TEST_CASE("rotation generator is isotropic") {
  Mat x(2, 2);
  x << 1, -1, 1, 1;
  const auto r = one_param_isotropy_test(x);
  CHECK(r.equivalent_to_scalar);
  CHECK(r.s == doctest::Approx(1.0));
  CHECK(r.max_norm == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("diagonal generator has no irreducible partner") {
  const double l3 = std::log(3.0);
  const double l2 = std::log(2.0);
  const auto r = irreducible_partner_test(diag({l3, l2, l2}));
  CHECK_FALSE(r.isotropy.equivalent_to_scalar);
  // oracle: Y = X − (tr X / 3) I has top eigenvalue ln 3 − ln 12 / 3
  CHECK(r.isotropy.rate == doctest::Approx(l3 - std::log(12.0) / 3.0).epsilon(0.01));
  CHECK(r.no_irreducible_partner);
  REQUIRE(r.invariant_subspace.has_value());
  REQUIRE(r.invariant_subspace->basis.cols() == 1);
  CHECK(std::abs(r.invariant_subspace->basis(0, 0)) == doctest::Approx(1.0));
  CHECK(r.invariant_subspace->eigenvalue == doctest::Approx(l3));
}

TEST_CASE("cocompactness in the scalar and flow settings") {
  const auto sc = subgroup_cocompact_test(GroupSpec::cyclic(2 * identity(2)), GroupSpec::scalar_similitude(2));
  CHECK(sc.outcome == CocompactOutcome::Cocompact);
  const auto fl = subgroup_cocompact_test(GroupSpec::one_parameter(identity(2)),
                                          GroupSpec::abelian_flow({diag({1.0, 0.0}), diag({0.0, 1.0})}));
  CHECK(fl.outcome == CocompactOutcome::NotCocompact);
  REQUIRE(fl.witness_coords.size() == 2);
  // oracle: the missed direction is orthogonal to (1, 1)
  CHECK(fl.witness_coords[0] + fl.witness_coords[1] == doctest::Approx(0.0).scale(1.0));
  const auto ns = subgroup_cocompact_test(GroupSpec::cyclic(diag({2.0, 3.0})), GroupSpec::cyclic(diag({3.0, 2.0})));
  CHECK(ns.outcome == CocompactOutcome::NotSubgroup);
  CHECK(ns.witness_element.has_value());
}

TEST_CASE("weak equivalence detects growing anisotropic counts") {
  CoverParams p;
  p.window = 32;
  p.self_stats = false;
  const auto ca = build_induced_cover(GroupSpec::cyclic(diag({3.0, 2.0, 2.0})), p);
  const auto cb = build_induced_cover(GroupSpec::cyclic(diag({2.0, 2.0, 3.0})), p);
  const auto r = weak_equivalence_test(ca, cb, {8, 16, 32});
  CHECK(r.outcome == WeakOutcome::NotWeaklyEquivalent);
  REQUIRE(r.trends.size() == 3);
  CHECK(r.trends[0].max_ab < r.trends[1].max_ab);
  CHECK(r.trends[1].max_ab < r.trends[2].max_ab);
  const auto self = weak_equivalence_test(ca, ca, {8, 16, 32});
  CHECK(self.outcome == WeakOutcome::WeaklyEquivalent);
}

TEST_CASE("coorbit equivalence verdicts") {
  const auto cfg = quick();
  const auto ex = coorbit_equivalence(GroupSpec::cyclic(diag({3.0, 2.0, 2.0})), GroupSpec::cyclic(diag({2.0, 2.0, 3.0})), cfg);
  CHECK(ex.outcome == Outcome::NotEquivalent);
  CHECK_FALSE(ex.witnesses.empty());
  CHECK(ex.evidence.epsilon.has_value());

  Mat t(2, 2);
  t << 1, -1, 1, 1;
  const auto th = coorbit_equivalence(GroupSpec::cyclic(t), GroupSpec::scalar_similitude(2), cfg);
  CHECK(th.outcome == Outcome::Equivalent);

  const auto j = ex.to_json();
  CHECK(j.at("outcome") == "NotEquivalent");
  CHECK(j.at("evidence").at("countTrends").size() == 3);
  CHECK(ex.trends_csv().rfind("window,maxAB,maxBA\n", 0) == 0);
}

TEST_CASE("conjugation preserves the verdict") {
  Mat m(2, 2);
  m << 2, 1, 0.5, 1;
  const auto r = conjugation_transport(GroupSpec::cyclic(2 * identity(2)), GroupSpec::scalar_similitude(2), m, quick());
  CHECK(r.agree);
  CHECK(r.original.outcome == Outcome::Equivalent);
}
