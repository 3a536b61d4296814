#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "coorbit/geometry.hpp"

namespace coorbit {

struct InducedCover;

/// Serial kernels are the reference; parallel ones must produce identical output.
enum class Exec { Serial, Parallel };

using IndexPair = std::pair<std::size_t, std::size_t>;

/// intersects(a.elements[i], b.elements[j]) for every listed pair, with a radial prefilter.
std::vector<IntersectStatus> intersect_pairs(const InducedCover& a, const InducedCover& b,
                                             const std::vector<IndexPair>& pairs, const IntersectOptions& opts,
                                             Exec exec = Exec::Parallel);

/// Number of cover elements containing each point (open membership).
std::vector<int> coverage_counts(const InducedCover& cover, const std::vector<Vec>& points,
                                 Exec exec = Exec::Parallel);

/// L^p quadrature ‖·‖_p = (Σ |v|^p · cell)^{1/p} of several sampled fields (p = ∞ gives max |v|).
std::vector<double> lp_norms(const std::vector<std::vector<std::complex<double>>>& fields, double p, double cell,
                             Exec exec = Exec::Parallel);

}  // namespace coorbit
