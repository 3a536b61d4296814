#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "coorbit/linalg.hpp"

namespace coorbit {

/// Nonnegative integer or +∞.
struct ExtendedDistance {
  std::int64_t value = 0;
  bool infinite = false;

  static ExtendedDistance finite(std::int64_t v) { return {v, false}; }
  static ExtendedDistance inf() { return {0, true}; }
  double as_double() const { return infinite ? std::numeric_limits<double>::infinity() : static_cast<double>(value); }
  friend bool operator==(const ExtendedDistance&, const ExtendedDistance&) = default;
};

/// Membership predicate for the claimed frequency support 𝒪, evaluated as base(T·ξ).
struct SupportOracle {
  enum class Kind {
    Punctured,           ///< ℝ^d \ {0}
    HalfSpace,           ///< {ξ : ⟨n, ξ⟩ > 0}
    NonzeroCoordinates,  ///< complement of the coordinate hyperplanes
  };
  Kind kind = Kind::Punctured;
  Vec normal;     ///< HalfSpace only
  Mat transform;  ///< empty means identity

  bool contains(const Vec& xi) const;
  /// Oracle of {ξ : t·ξ ∈ 𝒪}.
  SupportOracle pulled_back(const Mat& t) const;
  bool is_default() const { return kind == Kind::Punctured && transform.size() == 0; }
};

enum class GroupKind { OneParameter, Cyclic, AbelianFlow, ScalarSimilitude, Similitude, DiscreteFG };

std::string to_string(GroupKind k);
GroupKind group_kind_from_string(const std::string& s);

/// A closed matrix group from the supported families.
///
/// Generators hold X (OneParameter), A (Cyclic), X_1..X_k (AbelianFlow) or the generator list
/// (DiscreteFG). The frame F records conjugations: a Similitude group is F⁻¹·(ℝ⁺·SO(d))·F,
/// and base sets for every kind are shaped as F^T applied to a Euclidean shell.
struct GroupSpec {
  GroupKind kind = GroupKind::ScalarSimilitude;
  int dim = 1;
  std::vector<Mat> generators;
  Mat frame;  ///< empty means identity

  Mat frame_matrix() const { return frame.size() == 0 ? identity(dim) : frame; }
  SupportOracle support;

  static GroupSpec one_parameter(const Mat& generator);
  static GroupSpec cyclic(const Mat& matrix);
  static GroupSpec abelian_flow(const std::vector<Mat>& generators);
  static GroupSpec scalar_similitude(int dim);
  static GroupSpec similitude(int dim);
  static GroupSpec discrete(const std::vector<Mat>& generators);

  /// Number of chart coordinates (0 for DiscreteFG).
  int chart_dim() const;
  bool is_coordinate_family() const { return kind != GroupKind::DiscreteFG; }
};

using Coords = std::vector<double>;

struct GroupElement {
  Mat matrix;
  std::optional<Coords> coords;
};

/// Chart evaluation: coordinates to matrix.
Mat chart(const GroupSpec& spec, const Coords& coords);
GroupElement make_element(const GroupSpec& spec, const Coords& coords);
GroupElement identity_element(const GroupSpec& spec);

/// Symmetric unit neighbourhood W: a coordinate box of half-width δ, or an explicit generator
/// list (closed under inverses, identity included) for DiscreteFG.
struct GeneratingSet {
  double half_width = 1.0;
  std::vector<Mat> generators;
  int max_radius = 64;             ///< BFS cap for DiscreteFG
  std::size_t max_nodes = 200000;  ///< hash-table cap for DiscreteFG

  static GeneratingSet box(double delta);
  /// W = {g, g⁻¹ : g ∈ gens} ∪ {id}.
  static GeneratingSet from_generators(const std::vector<Mat>& gens, int max_radius = 64);
  static GeneratingSet default_for(const GroupSpec& spec, double delta);
};

struct FamilyParams {
  int window = 4;             ///< index radius K
  double step = 0.6931471805599453;  ///< chart step δ (ln 2)
  int rotation_net = 8;       ///< rotations per scale for Similitude
  std::optional<std::size_t> word_cap;  ///< required for DiscreteFG
};

/// Lattice samples h_i of the coordinate chart inside an index window.
struct WellSpreadFamily {
  GroupSpec spec;
  std::vector<GroupElement> elements;
  std::vector<std::vector<int>> indices;  ///< lattice index per element
  double step = 1.0;
  double discreteness = 1.0;
  double density = 1.0;
  int window = 0;

  std::size_t size() const { return elements.size(); }
  /// Elements whose lattice index lies in the inner half (|index|_∞ ≤ window/2).
  bool is_interior(std::size_t i, int radius) const;
};

struct OneParameterAdmissibility {
  bool admissible = false;
  int sign = 0;  ///< +1 / −1 when admissible
  std::complex<double> witness;  ///< offending eigenvalue when not admissible
  std::vector<std::complex<double>> eigenvalues;
};

struct AdmissibilityReport {
  bool admissible = false;
  std::string detail;
  std::optional<std::complex<double>> witness;
  std::vector<std::string> unchecked_assumptions;
};

Mat mat_exp_checked(const Mat& x);
Vec dual_action(const GroupElement& h, const Vec& xi);
Vec dual_action(const Mat& h, const Vec& xi);

OneParameterAdmissibility check_one_parameter_admissible(const Mat& x, double tol = 1e-9);
AdmissibilityReport admissibility_precheck(const GroupSpec& spec);

ExtendedDistance word_distance(const GroupSpec& spec, const GeneratingSet& w, const GroupElement& g,
                               const GroupElement& h);

WellSpreadFamily enumerate_family(const GroupSpec& spec, const FamilyParams& params);

GroupSpec conjugate_spec(const GroupSpec& spec, const Mat& a);

double haar_weight(const GroupSpec& spec, const GroupElement& h);

/// Matrices whose single lattice steps generate the family (used to size base shells).
std::vector<Mat> step_matrices(const GroupSpec& spec, double step);

/// Rotation angle in [0, π] of an orthogonal matrix with det +1 (d = 2, 3).
double rotation_angle(const Mat& r);

}  // namespace coorbit
