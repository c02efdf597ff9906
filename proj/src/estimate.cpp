#include "alab/estimate.hpp"

#include <cmath>
#include <stdexcept>

#include "alab/parallel.hpp"

namespace alab {

void McParams::validate() const {
  if (replicates < 2) {
    throw std::invalid_argument("McParams: replicates must be >= 2");
  }
}

McParams McParams::with_stream(std::uint64_t id) const {
  McParams out = *this;
  out.stream_id = id;
  return out;
}

Estimate mean_estimate(std::span<const double> values) {
  const auto n = static_cast<std::int64_t>(values.size());
  if (n < 2) throw std::invalid_argument("mean_estimate: need >= 2 values");
  const double mean = pairwise_sum(values.data(), n) / static_cast<double>(n);
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - mean;
    sq[i] = d * d;
  }
  const double var =
      pairwise_sum(sq.data(), n) / static_cast<double>(n - 1);
  return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

Estimate variance_estimate(std::span<const double> values) {
  const auto n = static_cast<std::int64_t>(values.size());
  if (n < 2) throw std::invalid_argument("variance_estimate: need >= 2 values");
  const double mean = pairwise_sum(values.data(), n) / static_cast<double>(n);
  std::vector<double> sq(values.size());
  std::vector<double> quart(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - mean;
    sq[i] = d * d;
    quart[i] = sq[i] * sq[i];
  }
  const double m2 = pairwise_sum(sq.data(), n) / static_cast<double>(n);
  const double m4 = pairwise_sum(quart.data(), n) / static_cast<double>(n);
  const double var = m2 * static_cast<double>(n) / static_cast<double>(n - 1);
  // Asymptotic standard error of the sample variance.
  const double se_sq = std::max(0.0, m4 - m2 * m2) / static_cast<double>(n);
  return {var, std::sqrt(se_sq), n};
}

std::vector<double> sent_values(const TargetingScheme& scheme,
                                const GameConfig& config, const McParams& mc) {
  config.validate();
  mc.validate();
  std::vector<double> out(static_cast<std::size_t>(mc.replicates));
  parallel_for(mc.replicates, [&](std::int64_t k) {
    RandomStream stream(mc.seed, mc.stream_id, static_cast<std::uint64_t>(k));
    const RoundDraw round = draw_round(config, stream);
    out[static_cast<std::size_t>(k)] = select_anecdote(scheme, round).second;
  });
  return out;
}

Estimate estimate_bias(const TargetingScheme& scheme, const GameConfig& config,
                       const McParams& mc) {
  // theta = 0 in production draws, so sent - theta is just sent.
  return mean_estimate(sent_values(scheme, config, mc));
}

Estimate estimate_H(double r, const GameConfig& config, const McParams& mc) {
  config.validate();
  mc.validate();
  const TargetingScheme scheme = TargetingScheme::targeting(r);
  std::vector<double> z(static_cast<std::size_t>(mc.replicates));
  parallel_for(mc.replicates, [&](std::int64_t k) {
    RandomStream stream(mc.seed, mc.stream_id, static_cast<std::uint64_t>(k));
    const RoundDraw round = draw_round(config, stream);
    const double sent = select_anecdote(scheme, round).second;
    z[static_cast<std::size_t>(k)] = sent - round.posterior_mean - r;
  });
  return mean_estimate(z);
}

Estimate estimate_anecdote_variance(const TargetingScheme& scheme,
                                    const GameConfig& config,
                                    const McParams& mc) {
  return variance_estimate(sent_values(scheme, config, mc));
}

Estimate estimate_receiver_loss(const TargetingScheme& scheme,
                                const GameConfig& config, const McParams& mc) {
  // Pass 1: perceived bias on its own substream namespace.
  const Estimate bias =
      estimate_bias(scheme, config, mc.with_stream(mc.stream_id + 1));
  const ActionRule rule{best_response_shift(config, bias.value)};

  // Pass 2: play the round and score the receiver.
  config.validate();
  std::vector<double> loss(static_cast<std::size_t>(mc.replicates));
  parallel_for(mc.replicates, [&](std::int64_t k) {
    RandomStream stream(mc.seed, mc.stream_id, static_cast<std::uint64_t>(k));
    const RoundDraw round = draw_round(config, stream);
    const double sent = select_anecdote(scheme, round).second;
    const double action = receiver_action(rule, sent);
    loss[static_cast<std::size_t>(k)] =
        -quadratic_utility(action, round.theta, config.m_receiver);
  });
  return mean_estimate(loss);
}

LossBreakdown estimate_sender_loss(const TargetingScheme& scheme_actual,
                                   double bias_perceived,
                                   const GameConfig& config,
                                   const McParams& mc) {
  const Estimate bias_actual =
      estimate_bias(scheme_actual, config, mc.with_stream(mc.stream_id + 1));
  const ActionRule rule{config.m_receiver - bias_perceived};

  config.validate();
  std::vector<double> sent(static_cast<std::size_t>(mc.replicates));
  std::vector<double> total(static_cast<std::size_t>(mc.replicates));
  parallel_for(mc.replicates, [&](std::int64_t k) {
    RandomStream stream(mc.seed, mc.stream_id, static_cast<std::uint64_t>(k));
    const RoundDraw round = draw_round(config, stream);
    const double x = select_anecdote(scheme_actual, round).second;
    const double action = receiver_action(rule, x);
    sent[static_cast<std::size_t>(k)] = x;
    total[static_cast<std::size_t>(k)] =
        -quadratic_utility(action, round.theta, config.m_sender);
  });

  LossBreakdown out;
  out.info_loss = variance_estimate(sent);
  out.total = mean_estimate(total);
  const double bracket =
      (config.m_receiver - config.m_sender) + (bias_actual.value - bias_perceived);
  // First-order error propagation through the square.
  out.persuasion_term = {bracket * bracket,
                         std::abs(2.0 * bracket) * bias_actual.std_error,
                         bias_actual.replicates};
  return out;
}

}  // namespace alab
