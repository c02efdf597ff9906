#include "alab/game.hpp"

#include <cmath>
#include <stdexcept>

namespace alab {

void GameConfig::validate() const {
  if (n < 1) throw std::invalid_argument("GameConfig: n must be >= 1");
  if (!std::isfinite(m_sender) || !std::isfinite(m_receiver)) {
    throw std::invalid_argument("GameConfig: preferences must be finite");
  }
}

TargetingScheme TargetingScheme::targeting(double offset) {
  if (!std::isfinite(offset)) {
    throw std::invalid_argument("targeting offset must be finite");
  }
  return {Kind::targeting, offset};
}

TargetingScheme TargetingScheme::minimum() { return {Kind::minimum, 0.0}; }
TargetingScheme TargetingScheme::maximum() { return {Kind::maximum, 0.0}; }

RoundDraw draw_round(const GameConfig& config, RandomStream& stream) {
  return draw_round_at(config, 0.0, stream);
}

RoundDraw draw_round_at(const GameConfig& config, double theta,
                        RandomStream& stream) {
  RoundDraw round;
  round.theta = theta;
  round.anecdotes.resize(static_cast<std::size_t>(config.n));
  for (double& x : round.anecdotes) x = theta + sample(config.noise, stream);
  round.y = theta;  // only meaningful (and used) in foresight mode
  round.posterior_mean =
      posterior_mean(config.noise, round.anecdotes, config.mode, round.y);
  return round;
}

std::pair<int, double> select_anecdote(const TargetingScheme& scheme,
                                       const RoundDraw& round) {
  const auto& x = round.anecdotes;
  if (x.empty()) throw std::invalid_argument("select_anecdote: empty round");

  double target;
  switch (scheme.kind) {
    case TargetingScheme::Kind::targeting:
      target = round.posterior_mean + scheme.offset;
      break;
    case TargetingScheme::Kind::minimum:
    case TargetingScheme::Kind::maximum: {
      int best = 0;
      for (int i = 1; i < static_cast<int>(x.size()); ++i) {
        const bool better = scheme.kind == TargetingScheme::Kind::minimum
                                ? x[i] < x[best]
                                : x[i] > x[best];
        if (better) best = i;
      }
      return {best, x[best]};
    }
    default:
      throw std::logic_error("unknown scheme kind");
  }

  int best = 0;
  double best_dist = std::abs(x[0] - target);
  for (int i = 1; i < static_cast<int>(x.size()); ++i) {
    const double d = std::abs(x[i] - target);
    if (d < best_dist || (d == best_dist && x[i] < x[best])) {
      best = i;
      best_dist = d;
    }
  }
  return {best, x[best]};
}

double receiver_action(const ActionRule& rule, double sent) {
  return sent + rule.shift;
}

double quadratic_utility(double action, double theta, double preference) {
  const double gap = action - (theta + preference);
  return -gap * gap;
}

double best_response_shift(const GameConfig& config, double scheme_bias) {
  return config.m_receiver - scheme_bias;
}

}  // namespace alab
