#pragma once

#include <span>

#include "alab/rng.hpp"

namespace alab {

enum class NoiseKind { gaussian, laplace, uniform };

// Zero-centered symmetric anecdote noise law. `scale` is the standard
// deviation parameter for gaussian, the diversity parameter b for laplace,
// and the halfwidth for uniform.
struct NoiseDistribution {
  NoiseKind kind;
  double scale;

  static NoiseDistribution gaussian(double scale);
  static NoiseDistribution laplace(double scale);
  static NoiseDistribution uniform(double halfwidth);
};

// Sender side information: either the state is known exactly (foresight)
// or the side signal carries no information (no foresight).
enum class PosteriorMode { foresight, no_foresight };

double pdf(const NoiseDistribution& dist, double x);
double cdf(const NoiseDistribution& dist, double x);

// Inverse CDF; u must lie in (0, 1).
double quantile(const NoiseDistribution& dist, double u);

double sample(const NoiseDistribution& dist, RandomStream& stream);

// Posterior mean of the state under a diffuse prior given the anecdotes
// (and the side signal y in foresight mode, where it equals the state).
// Gaussian and uniform use closed forms; laplace uses deterministic
// quadrature with node doubling to relative tolerance 1e-8.
double posterior_mean(const NoiseDistribution& dist,
                      std::span<const double> anecdotes, PosteriorMode mode,
                      double y);

}  // namespace alab
