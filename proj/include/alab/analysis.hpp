#pragma once

#include <vector>

#include "alab/equilibrium.hpp"

namespace alab {

struct CommitmentResult {
  std::vector<double> grid;
  std::vector<Estimate> variance_at;
  double argmin_offset = 0.0;
  Estimate min_variance;
};

// Gumbel norming constants and limit moments for the extreme anecdote.
struct ExtremeValueStats {
  double a_n = 0.0;
  double b_n = 0.0;
  double gumbel_mean = 0.0;
  double gumbel_variance = 0.0;
};

enum class PreferredSender { aligned, expert, tie };

struct ComparisonResult {
  Estimate loss_aligned;
  Estimate loss_expert;
  PreferredSender preferred = PreferredSender::tie;
};

// Mean squared error of the unbiased scheme with three uniform(1/2)
// anecdotes, via the tail integral of the middle order statistic. Equals
// the r = 0 case of the targeted loss below.
double three_uniform_unbiased_loss();

// Mean squared error E[(sent - theta - r)^2] of the targeting scheme with
// offset r in the three-uniform setting, by deterministic quadrature of the
// piecewise tail CDF. Requires 0 <= r <= 1/2.
double three_uniform_targeted_loss(double r);

// Sent-anecdote variance per offset; the commitment-optimal scheme is the
// grid argmin.
CommitmentResult commitment_scan(const GameConfig& config,
                                 const std::vector<double>& r_grid,
                                 const McParams& mc);

// Leading term 1 / (2 n^2 f(delta)^2) of the commitment loss.
double asymptotic_commit_loss(const NoiseDistribution& dist, int n,
                              double delta);

// Gumbel norming constants for the extreme of n draws; gaussian and laplace
// only.
ExtremeValueStats extreme_value_params(const NoiseDistribution& dist, int n);

// Variance of the anecdote closest to the state. Exact 2 s^2 / n^2 for
// laplace (minimum-of-exponentials identity); Monte Carlo otherwise.
Estimate closest_of_n_variance(const NoiseDistribution& dist, int n,
                               const McParams& mc);

// Debiased receiver losses of an aligned poorly-informed sender (playing
// the unbiased targeting scheme) versus an expert playing expert_scheme.
ComparisonResult expert_compare(const GameConfig& aligned,
                                const GameConfig& expert, const McParams& mc,
                                const TargetingScheme& expert_scheme);

}  // namespace alab
