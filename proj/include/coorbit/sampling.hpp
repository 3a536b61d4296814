#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "coorbit/linalg.hpp"

namespace coorbit {

/// Deterministic per-purpose random stream. Streams are keyed by (seed, stream id) so that
/// parallel tasks draw identical numbers regardless of scheduling.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream);

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  Vec normal_vector(int d);
  Vec unit_vector(int d);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// i-th element of the van der Corput sequence in the given base.
double radical_inverse(std::uint64_t i, unsigned base);

/// Low-discrepancy directions on S^{d-1}: equispaced angles (d = 2), a Fibonacci lattice
/// (d = 3), Halton points pushed through the Gaussian map (d = 4) and {±1} for d = 1.
std::vector<Vec> sphere_directions(int d, int count);

/// Points on the great-circle arc from a to b (both unit), endpoints included.
std::vector<Vec> great_circle_arc(const Vec& a, const Vec& b, int count);

}  // namespace coorbit
