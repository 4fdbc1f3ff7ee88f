#pragma once

#include <cstdint>

#include "rho/density.hpp"

namespace rho {

/// Counter-based generator: draw k of stream s under seed is
/// splitmix64_mix(key(seed, s) + k * 0x9E3779B97F4A7C15). Streams are
/// independent of evaluation order, so replicate r always sees the same
/// numbers however replicates are scheduled.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  double normal();
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

/// One draw from p. Pathological densities are sampled as their Gaussian
/// counterparts (they differ on a null set); exp-family densities use an
/// inverse CDF tabulated on 4096 cells.
double draw(const Density1D& p, CounterRng& rng);

}  // namespace rho
