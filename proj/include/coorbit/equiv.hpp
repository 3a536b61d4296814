#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coorbit/besov.hpp"
#include "coorbit/config.hpp"
#include "coorbit/cover.hpp"
#include "coorbit/metric.hpp"

namespace coorbit {

enum class Outcome { Equivalent, NotEquivalent, Inconclusive };
enum class WeakOutcome { WeaklyEquivalent, NotWeaklyEquivalent, Inconclusive };

std::string to_string(Outcome o);
std::string to_string(WeakOutcome o);

struct CountTrend {
  int window = 0;
  int max_ab = 0;
  int max_ba = 0;
  std::vector<int> lattice_ab;  ///< source index realizing max_ab
  std::vector<int> lattice_ba;
  double sampled_ratio = 0.0;   ///< fraction of pair decisions that came from sampling
};

struct WeakEquivalenceResult {
  WeakOutcome outcome = WeakOutcome::Inconclusive;
  std::vector<CountTrend> trends;
  std::optional<int> max_count;
  std::string detail;
};

/// Both covers must have been built with window ≥ max(windows). Sources have index radius ≤ w/2,
/// targets ≤ w.
WeakEquivalenceResult weak_equivalence_test(const InducedCover& a, const InducedCover& b,
                                            const std::vector<int>& windows, int budget = 256);

struct EpsilonCriterion {
  double epsilon = 0.0;
  long k_max = 0;
  std::vector<long> k;
  std::vector<double> log_s;  ///< log ‖A^{−k} B^{⌊εk⌋}‖
  bool bounded = false;
  double rate = 0.0;          ///< fitted growth of log s_k per unit |k| (0 when bounded)

  double s(long kk) const;
};

/// s_k for k in [−K, K]; DomainError unless |det A|, |det B| ≠ 1 and both are expansive or both
/// contractive.
EpsilonCriterion epsilon_criterion(const Mat& a, const Mat& b, long k_max = 32, const Tolerances& tol = {});

struct IsotropyResult {
  bool equivalent_to_scalar = false;
  double s = 0.0;
  Mat y;
  std::vector<double> t;
  std::vector<double> norms;  ///< ‖exp(tY)‖
  double max_norm = 0.0;
  double rate = 0.0;
};

IsotropyResult one_param_isotropy_test(const Mat& x, double t_max = 50.0, int samples = 200, const Tolerances& tol = {});

struct Eigenspace {
  double eigenvalue = 0.0;
  Mat basis;  ///< columns
};

struct PartnerResult {
  bool no_irreducible_partner = false;
  std::string reason;
  IsotropyResult isotropy;
  std::vector<Eigenspace> eigenspaces;  ///< of X^T, when real and diagonalizable
  std::optional<Eigenspace> invariant_subspace;
};

PartnerResult irreducible_partner_test(const Mat& x, const Tolerances& tol = {});

enum class CocompactOutcome { Cocompact, NotCocompact, NotSubgroup };
std::string to_string(CocompactOutcome o);

struct CocompactResult {
  CocompactOutcome outcome = CocompactOutcome::NotSubgroup;
  std::optional<Mat> witness_element;     ///< NotSubgroup
  std::optional<Mat> witness_direction;   ///< NotCocompact: Lie algebra direction missed by the subgroup
  std::vector<double> witness_coords;     ///< the same direction in the super-chart
  int rank_sub = 0;
  int rank_sup = 0;
};

CocompactResult subgroup_cocompact_test(const GroupSpec& sub, const GroupSpec& sup, const Tolerances& tol = {});

struct EquivConfig {
  int window = 8;  ///< K
  int budget = 256;
  int coverage_samples = 4096;
  int support_samples = 1024;
  std::uint64_t seed = 1;
  double step = 0.6931471805599453;
  int rotation_net = 8;
  bool with_qi = false;
  bool with_norms = false;
  int grid = 32;
  double p = 1.0;
  double q = 1.0;
  Tolerances tol;

  static EquivConfig from(const RunConfig& rc);
  std::vector<int> windows() const { return {window, 2 * window, 4 * window}; }
};

struct QIEvidence {
  QICertificate certificate;
  Vec xi;
  std::vector<int> windows;
};

struct Evidence {
  SupportComparison support;
  std::vector<CountTrend> count_trends;
  std::optional<EpsilonCriterion> epsilon;
  std::optional<QIEvidence> qi;
  std::optional<RatioStats> norm_ratios;
};

struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  std::vector<std::string> witnesses;
  Evidence evidence;
  EquivConfig config;

  nlohmann::json to_json() const;
  std::string trends_csv() const;
};

/// Support test, covers at 4K, weak equivalence; QI and norm evidence are reported alongside.
Verdict coorbit_equivalence(const GroupSpec& a, const GroupSpec& b, const EquivConfig& cfg);

struct TransportResult {
  Verdict original;
  Verdict conjugated;
  bool agree = false;
};

TransportResult conjugation_transport(const GroupSpec& a, const GroupSpec& b, const Mat& m, const EquivConfig& cfg);

/// Fits the map h ↦ p^{(2)}_*(p^{(1)}(h)) (h^{-T}ξ, then the lowest B-element containing it) on
/// A-family windows; `target` must cover the images.
QIEvidence transition_qi(const InducedCover& target, const GroupSpec& source, const Vec& xi,
                         const std::vector<int>& windows, const EquivConfig& cfg);

}  // namespace coorbit
