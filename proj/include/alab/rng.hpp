#pragma once

#include <cstdint>

namespace alab {

// Counter-based substream derivation: every (seed, stream_id, counter)
// triple yields an independent, reproducible generator. Replicate k of a
// Monte Carlo run owns the stream (seed, stream_id, k), so results do not
// depend on thread scheduling.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id,
               std::uint64_t counter);

  std::uint64_t next_u64();

  // Uniform draw on the open interval (0, 1).
  double next_unit();

  // Standard normal via inverse-transform sampling.
  double next_gaussian();

 private:
  std::uint64_t state_[4];
};

// Inverse of the standard normal CDF, accurate to ~1e-15 relative error.
double inverse_normal_cdf(double p);

}  // namespace alab
