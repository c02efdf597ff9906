#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "alab/game.hpp"

namespace alab {

// Monte Carlo budget and stream namespace. Replicate k always runs on the
// substream (seed, stream_id, k); estimators that need several independent
// passes use consecutive stream_id values, so callers should space the ids
// they hand out (see kStreamStride).
struct McParams {
  std::int64_t replicates = 10000;
  std::uint64_t seed = 1;
  std::uint64_t stream_id = 0;

  void validate() const;
  McParams with_stream(std::uint64_t id) const;
};

// Stream-id distance between logically independent estimator calls; no
// single estimator consumes more than this many consecutive ids.
inline constexpr std::uint64_t kStreamStride = 16;

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t replicates = 0;
};

// Sender-loss decomposition: total = information loss + persuasion term.
struct LossBreakdown {
  Estimate info_loss;
  Estimate persuasion_term;
  Estimate total;
};

// Mean with standard error, pairwise-summed in index order.
Estimate mean_estimate(std::span<const double> values);

// Sample variance with a fourth-moment standard error.
Estimate variance_estimate(std::span<const double> values);

// One sent-anecdote value per replicate, each drawn on its own substream.
// Deterministic for any parallelism level.
std::vector<double> sent_values(const TargetingScheme& scheme,
                                const GameConfig& config, const McParams& mc);

// E[sent - theta]: the bias of the scheme.
Estimate estimate_bias(const TargetingScheme& scheme, const GameConfig& config,
                       const McParams& mc);

// E[z] with z = sent - posterior_mean - r for targeting(r).
Estimate estimate_H(double r, const GameConfig& config, const McParams& mc);

// Variance of the sent anecdote (theta fixed at 0).
Estimate estimate_anecdote_variance(const TargetingScheme& scheme,
                                    const GameConfig& config,
                                    const McParams& mc);

// Receiver loss when playing the best-response shift against the scheme's
// bias, the bias being estimated first on an independent substream.
Estimate estimate_receiver_loss(const TargetingScheme& scheme,
                                const GameConfig& config, const McParams& mc);

// Sender loss against a receiver who debiases by bias_perceived. info_loss
// and total come from the evaluation stream; the actual bias entering the
// persuasion term comes from an independent substream.
LossBreakdown estimate_sender_loss(const TargetingScheme& scheme_actual,
                                   double bias_perceived,
                                   const GameConfig& config,
                                   const McParams& mc);

}  // namespace alab
