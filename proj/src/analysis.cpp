#include "alab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "alab/parallel.hpp"
#include "alab/quadrature.hpp"

namespace alab {

namespace {

// CDF of the sent anecdote in the three-uniform setting with samples on
// [0, 1] (state at 1/2): the targeting scheme sends the middle order
// statistic when x2 > x1 + 2r, else the maximum.
double three_uniform_sent_cdf(double w, double r) {
  if (w <= 0.0) return 0.0;
  if (w >= 1.0) return 1.0;
  double p_gap = 0.0;  // P[two uniforms on [0, w] are > 2r apart]
  if (w > 2.0 * r) {
    const double t = (w - 2.0 * r) / w;
    p_gap = t * t;
  }
  return w * w * w + 3.0 * w * w * (1.0 - w) * p_gap;
}

// Tail probability P[|sent - (1/2 + r)| > z].
double three_uniform_tail(double z, double r) {
  if (z >= 0.5 + r) return 0.0;
  const double lower = three_uniform_sent_cdf(0.5 + r - z, r);
  if (z >= 0.5 - r) return lower;
  return lower + 1.0 - three_uniform_sent_cdf(0.5 + r + z, r);
}

}  // namespace

double three_uniform_targeted_loss(double r) {
  if (!(r >= 0.0 && r <= 0.5)) {
    throw std::domain_error("three_uniform_targeted_loss: r must be in [0, 1/2]");
  }
  // E[d^2] = integral over z of P[d^2 > z], i.e. P[d > sqrt(z)].
  const double upper = (0.5 + r) * (0.5 + r);
  return adaptive_simpson(
      [r](double z) { return three_uniform_tail(std::sqrt(z), r); }, 0.0,
      upper, 1e-10);
}

double three_uniform_unbiased_loss() { return three_uniform_targeted_loss(0.0); }

CommitmentResult commitment_scan(const GameConfig& config,
                                 const std::vector<double>& r_grid,
                                 const McParams& mc) {
  if (r_grid.empty()) {
    throw std::invalid_argument("commitment_scan: empty grid");
  }
  CommitmentResult out;
  out.grid = r_grid;
  out.variance_at.reserve(r_grid.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    const McParams sub = mc.with_stream(
        mc.stream_id + kStreamStride * static_cast<std::uint64_t>(i));
    out.variance_at.push_back(estimate_anecdote_variance(
        TargetingScheme::targeting(r_grid[i]), config, sub));
    if (out.variance_at[i].value < out.variance_at[best].value) best = i;
  }
  out.argmin_offset = r_grid[best];
  out.min_variance = out.variance_at[best];
  return out;
}

double asymptotic_commit_loss(const NoiseDistribution& dist, int n,
                              double delta) {
  const double f = pdf(dist, delta);
  if (!(f > 0.0)) {
    std::ostringstream msg;
    msg << "asymptotic_commit_loss: zero density at delta=" << delta;
    throw std::domain_error(msg.str());
  }
  const double nn = static_cast<double>(n);
  return 1.0 / (2.0 * nn * nn * f * f);
}

ExtremeValueStats extreme_value_params(const NoiseDistribution& dist, int n) {
  if (n < 2) {
    throw std::domain_error("extreme_value_params: n must be >= 2");
  }
  constexpr double kEulerGamma = 0.57721566490153286;
  ExtremeValueStats out;
  const double nn = static_cast<double>(n);
  switch (dist.kind) {
    case NoiseKind::laplace:
      out.a_n = 1.0 / dist.scale;
      out.b_n = dist.scale * std::log(nn / 2.0);
      break;
    case NoiseKind::gaussian: {
      const double root = std::sqrt(2.0 * std::log(nn));
      out.a_n = root / dist.scale;
      out.b_n = dist.scale *
                (root - (std::log(std::log(nn)) + std::log(4.0 * M_PI)) /
                            (2.0 * root));
      break;
    }
    case NoiseKind::uniform:
      throw std::domain_error(
          "extreme_value_params: uniform noise is not in the Gumbel domain");
  }
  out.gumbel_mean = out.b_n + kEulerGamma / out.a_n;
  out.gumbel_variance = M_PI * M_PI / (6.0 * out.a_n * out.a_n);
  return out;
}

Estimate closest_of_n_variance(const NoiseDistribution& dist, int n,
                               const McParams& mc) {
  if (n < 1) throw std::invalid_argument("closest_of_n_variance: n must be >= 1");
  if (dist.kind == NoiseKind::laplace) {
    // |x_i|/s is exponential; the minimum of n such is Exp(n), so the
    // signed closest anecdote has second moment 2 s^2 / n^2 about 0.
    const double s = dist.scale;
    return {2.0 * s * s / (static_cast<double>(n) * static_cast<double>(n)),
            0.0, 0};
  }
  mc.validate();
  std::vector<double> closest(static_cast<std::size_t>(mc.replicates));
  parallel_for(mc.replicates, [&](std::int64_t k) {
    RandomStream stream(mc.seed, mc.stream_id, static_cast<std::uint64_t>(k));
    double best = sample(dist, stream);
    for (int i = 1; i < n; ++i) {
      const double x = sample(dist, stream);
      if (std::abs(x) < std::abs(best)) best = x;
    }
    closest[static_cast<std::size_t>(k)] = best;
  });
  return variance_estimate(closest);
}

ComparisonResult expert_compare(const GameConfig& aligned,
                                const GameConfig& expert, const McParams& mc,
                                const TargetingScheme& expert_scheme) {
  if (aligned.delta() != 0.0) {
    throw std::invalid_argument("expert_compare: aligned config must have Delta = 0");
  }
  ComparisonResult out;
  out.loss_aligned = estimate_anecdote_variance(TargetingScheme::targeting(0.0),
                                                aligned, mc);
  out.loss_expert = estimate_anecdote_variance(
      expert_scheme, expert, mc.with_stream(mc.stream_id + kStreamStride));
  const double gap = out.loss_aligned.value - out.loss_expert.value;
  const double se = std::hypot(out.loss_aligned.std_error,
                               out.loss_expert.std_error);
  if (gap < -3.0 * se) {
    out.preferred = PreferredSender::aligned;
  } else if (gap > 3.0 * se) {
    out.preferred = PreferredSender::expert;
  } else {
    out.preferred = PreferredSender::tie;
  }
  return out;
}

}  // namespace alab
