#pragma once

#include <cstdint>
#include <random>
#include <utility>

namespace sg {

/// Random stream keyed by (master seed, stream id). Identical keys reproduce
/// identical sequences regardless of how many other streams exist or in what
/// order they are consumed. All variates are produced by code in this library,
/// so sequences do not depend on the standard library's distribution objects.
class SeededRng {
 public:
  SeededRng(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on [0, 2pi).
  double angle();
  /// Pair of independent standard normals (Box-Muller).
  std::pair<double, double> normal_pair();
  double normal() { return normal_pair().first; }
  /// Poisson variate: inversion below mean 10, transformed rejection (PTRS) above.
  std::uint64_t poisson(double mean);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace sg
