#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "alab/noise.hpp"
#include "alab/rng.hpp"

namespace alab {

// One game instance: anecdote count, both players' personal preferences,
// the noise law, and the sender's information mode.
struct GameConfig {
  int n = 1;
  double m_sender = 0.0;
  double m_receiver = 0.0;
  NoiseDistribution noise = NoiseDistribution::gaussian(1.0);
  PosteriorMode mode = PosteriorMode::foresight;

  // Preference misalignment; derived, never stored.
  double delta() const { return m_sender - m_receiver; }

  void validate() const;
};

// Sender strategy: send the anecdote closest to posterior mean + offset,
// or one of the two extreme anecdotes.
struct TargetingScheme {
  enum class Kind { targeting, minimum, maximum };
  Kind kind = Kind::targeting;
  double offset = 0.0;

  static TargetingScheme targeting(double offset);
  static TargetingScheme minimum();
  static TargetingScheme maximum();
};

// Receiver strategy: a translation of the received anecdote.
struct ActionRule {
  double shift = 0.0;
};

// A single realization of nature's draw plus the sender's posterior mean.
struct RoundDraw {
  double theta = 0.0;
  std::vector<double> anecdotes;
  double y = 0.0;
  double posterior_mean = 0.0;
};

RoundDraw draw_round(const GameConfig& config, RandomStream& stream);

// Equivalent of draw_round at an arbitrary state value; production paths
// always use theta = 0 (diffuse-prior reduction), this exists so the
// translation-equivariance tests can shift the state.
RoundDraw draw_round_at(const GameConfig& config, double theta,
                        RandomStream& stream);

// Index and value of the anecdote the scheme sends. Equidistant ties go to
// the smaller anecdote value.
std::pair<int, double> select_anecdote(const TargetingScheme& scheme,
                                       const RoundDraw& round);

double receiver_action(const ActionRule& rule, double sent);

// -(action - (theta + preference))^2
double quadratic_utility(double action, double theta, double preference);

// Receiver's best-response shift against a scheme of the given bias.
double best_response_shift(const GameConfig& config, double scheme_bias);

}  // namespace alab
