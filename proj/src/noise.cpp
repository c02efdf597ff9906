#include "alab/noise.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace alab {

namespace {

void check_scale(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("noise scale must be positive and finite");
  }
}

}  // namespace

NoiseDistribution NoiseDistribution::gaussian(double scale) {
  check_scale(scale);
  return {NoiseKind::gaussian, scale};
}

NoiseDistribution NoiseDistribution::laplace(double scale) {
  check_scale(scale);
  return {NoiseKind::laplace, scale};
}

NoiseDistribution NoiseDistribution::uniform(double halfwidth) {
  check_scale(halfwidth);
  return {NoiseKind::uniform, halfwidth};
}

double pdf(const NoiseDistribution& dist, double x) {
  const double s = dist.scale;
  switch (dist.kind) {
    case NoiseKind::gaussian:
      return std::exp(-0.5 * (x / s) * (x / s)) / (s * std::sqrt(2.0 * M_PI));
    case NoiseKind::laplace:
      return std::exp(-std::abs(x) / s) / (2.0 * s);
    case NoiseKind::uniform:
      return std::abs(x) <= s ? 0.5 / s : 0.0;
  }
  return 0.0;
}

double cdf(const NoiseDistribution& dist, double x) {
  const double s = dist.scale;
  switch (dist.kind) {
    case NoiseKind::gaussian:
      return 0.5 * std::erfc(-x / (s * std::sqrt(2.0)));
    case NoiseKind::laplace:
      return x < 0.0 ? 0.5 * std::exp(x / s) : 1.0 - 0.5 * std::exp(-x / s);
    case NoiseKind::uniform:
      if (x <= -s) return 0.0;
      if (x >= s) return 1.0;
      return 0.5 * (x / s + 1.0);
  }
  return 0.0;
}

double quantile(const NoiseDistribution& dist, double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("quantile argument must be in (0, 1)");
  }
  const double s = dist.scale;
  switch (dist.kind) {
    case NoiseKind::gaussian:
      return s * inverse_normal_cdf(u);
    case NoiseKind::laplace:
      return u < 0.5 ? s * std::log(2.0 * u) : -s * std::log(2.0 * (1.0 - u));
    case NoiseKind::uniform:
      return s * (2.0 * u - 1.0);
  }
  return 0.0;
}

double sample(const NoiseDistribution& dist, RandomStream& stream) {
  return quantile(dist, stream.next_unit());
}

namespace {

// Diffuse-prior posterior mean for laplace noise. The likelihood is
// exp(-sum_i |x_i - t| / s); both moments are integrated on a grid centered
// at the sample median, doubling the Simpson node count until the mean is
// stable to 1e-8 relative change. The grid is split at the sample points,
// where the integrand has kinks, so Simpson keeps its O(h^4) rate.
double laplace_posterior_mean(std::span<const double> x, double scale) {
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = n % 2 == 1
                            ? sorted[n / 2]
                            : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  const double spread = sorted.back() - sorted.front();
  const double halfwidth = spread + 10.0 * scale;
  const double lo = median - halfwidth;
  const double hi = median + halfwidth;

  std::vector<double> panels{lo};
  for (const double xi : sorted) {
    if (xi > panels.back() && xi < hi) panels.push_back(xi);
  }
  panels.push_back(hi);

  const auto neg_loglik = [&](double t) {
    double s = 0.0;
    for (const double xi : sorted) s += std::abs(xi - t);
    return s / scale;
  };
  const double offset = neg_loglik(median);  // peak of the likelihood

  double prev = std::numeric_limits<double>::quiet_NaN();
  const int max_nodes = 1 << 16;
  for (int nodes = 16; nodes <= max_nodes; nodes *= 2) {
    // Composite Simpson with `nodes` intervals per panel (nodes even).
    double num = 0.0;
    double den = 0.0;
    for (std::size_t p = 0; p + 1 < panels.size(); ++p) {
      const double a = panels[p];
      const double h = (panels[p + 1] - a) / nodes;
      for (int i = 0; i <= nodes; ++i) {
        const double t = a + i * h;
        const double w = h * std::exp(offset - neg_loglik(t));
        const double coeff = (i == 0 || i == nodes) ? 1.0
                             : (i % 2 == 1)         ? 4.0
                                                    : 2.0;
        den += coeff * w;
        num += coeff * w * (t - median);
      }
    }
    const double mean = median + num / den;
    if (std::isfinite(prev)) {
      // Relative to the problem scale so symmetric samples (mean near 0)
      // still terminate.
      const double denom = std::max(std::abs(mean), scale);
      if (std::abs(mean - prev) / denom < 1e-8) return mean;
    }
    prev = mean;
  }
  std::ostringstream msg;
  msg << "laplace posterior mean quadrature did not converge: n=" << n
      << " scale=" << scale << " grid=[" << lo << "," << hi
      << "] last=" << prev << " nodes=" << max_nodes;
  throw std::runtime_error(msg.str());
}

}  // namespace

double posterior_mean(const NoiseDistribution& dist,
                      std::span<const double> anecdotes, PosteriorMode mode,
                      double y) {
  if (anecdotes.empty()) {
    throw std::invalid_argument("posterior_mean requires at least one anecdote");
  }
  if (mode == PosteriorMode::foresight) return y;
  switch (dist.kind) {
    case NoiseKind::gaussian: {
      double s = 0.0;
      for (const double xi : anecdotes) s += xi;
      return s / static_cast<double>(anecdotes.size());
    }
    case NoiseKind::uniform: {
      // Posterior is uniform on [max - w, min + w].
      const auto [mn, mx] =
          std::minmax_element(anecdotes.begin(), anecdotes.end());
      if (*mx - *mn > 2.0 * dist.scale) {
        std::ostringstream msg;
        msg << "uniform posterior support is empty: spread " << (*mx - *mn)
            << " exceeds 2*halfwidth " << 2.0 * dist.scale;
        throw std::domain_error(msg.str());
      }
      return 0.5 * (*mn + *mx);
    }
    case NoiseKind::laplace:
      return laplace_posterior_mean(anecdotes, dist.scale);
  }
  throw std::logic_error("unreachable noise kind");
}

}  // namespace alab
