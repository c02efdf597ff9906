#include "alab/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace alab {

void SolverParams::validate() const {
  if (!(tol_r > 0.0)) throw std::invalid_argument("SolverParams: tol_r must be > 0");
  if (max_iter < 1) throw std::invalid_argument("SolverParams: max_iter must be >= 1");
  mc.validate();
  if (bracket_lo > bracket_hi) {
    throw std::invalid_argument("SolverParams: bracket_lo > bracket_hi");
  }
}

BiasCurve scan_H(const GameConfig& config, const std::vector<double>& r_grid,
                 const McParams& mc) {
  for (std::size_t i = 1; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > r_grid[i - 1])) {
      throw std::invalid_argument("scan_H: grid must be strictly increasing");
    }
  }
  BiasCurve curve;
  curve.points.reserve(r_grid.size());
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    const McParams sub =
        mc.with_stream(mc.stream_id + kStreamStride * static_cast<std::uint64_t>(i));
    curve.points.push_back({r_grid[i], estimate_H(r_grid[i], config, sub)});
  }
  return curve;
}

namespace {

struct Evaluator {
  const GameConfig& config;
  const McParams& base;
  std::uint64_t eval_count = 0;
  BiasCurve history;

  // g(r) = H(r) + Delta on a fresh substream with the given budget.
  Estimate eval(double r, std::int64_t replicates) {
    McParams mc = base.with_stream(base.stream_id + kStreamStride * (++eval_count));
    mc.replicates = std::max<std::int64_t>(2, replicates);
    Estimate h = estimate_H(r, config, mc);
    history.points.push_back({r, h});
    h.value += config.delta();
    return h;
  }
};

std::string curve_summary(const BiasCurve& curve) {
  std::ostringstream os;
  os << " evaluated points:";
  for (const auto& p : curve.points) {
    os << " (r=" << p.r << ", H=" << p.h.value << "+-" << p.h.std_error << ")";
  }
  return os.str();
}

}  // namespace

EquilibriumResult solve_equilibrium(const GameConfig& config,
                                    const SolverParams& params) {
  config.validate();
  params.validate();
  const double delta = config.delta();

  double lo = params.bracket_lo;
  double hi = params.bracket_hi;
  if (!(lo < hi)) {
    const double span =
        5.0 * config.noise.scale * (1.0 + std::log(static_cast<double>(config.n)));
    lo = delta - span;
    hi = delta + span;
  }

  Evaluator ev{config, params.mc};
  const std::int64_t probe_budget =
      std::max<std::int64_t>(2, params.mc.replicates / 16);

  // g is decreasing in expectation: g(lo) > 0 > g(hi) at a valid bracket,
  // since H(r) -> +-inf as r -> -+inf.
  Estimate g_lo = ev.eval(lo, probe_budget);
  Estimate g_hi = ev.eval(hi, probe_budget);
  const double mid0 = 0.5 * (lo + hi);
  double width = hi - lo;
  for (int expand = 0; expand < 10 && !(g_lo.value > 0.0 && g_hi.value < 0.0);
       ++expand) {
    width *= 2.0;
    if (g_lo.value <= 0.0) {
      lo = mid0 - 0.5 * width;
      g_lo = ev.eval(lo, probe_budget);
    }
    if (g_hi.value >= 0.0) {
      hi = mid0 + 0.5 * width;
      g_hi = ev.eval(hi, probe_budget);
    }
  }
  if (!(g_lo.value > 0.0 && g_hi.value < 0.0)) {
    std::ostringstream msg;
    msg << "solve_equilibrium: no sign change of H(r)+Delta on ["
        << lo << ", " << hi << "] after bracket expansion;"
        << curve_summary(ev.history);
    throw BracketingError(msg.str(), ev.history);
  }
  // Endpoints that contradict the expected signs by more than noise would
  // indicate an inconsistent (non-monotone) objective.
  if (g_lo.value < -3.0 * g_lo.std_error || g_hi.value > 3.0 * g_hi.std_error) {
    std::ostringstream msg;
    msg << "solve_equilibrium: bracket endpoint signs inconsistent beyond 3 "
           "std errors;"
        << curve_summary(ev.history);
    throw BracketingError(msg.str(), ev.history);
  }

  // Budget schedule: reach the full budget roughly when the bracket reaches
  // tol_r, growing by 1.5x per bisection step.
  const int expected_iters = std::max(
      1, static_cast<int>(std::ceil(std::log2((hi - lo) / params.tol_r))));
  double budget = static_cast<double>(params.mc.replicates) /
                  std::pow(1.5, expected_iters);
  budget = std::max(budget, 1000.0);

  int iterations = 0;
  while (hi - lo > params.tol_r && iterations < params.max_iter) {
    ++iterations;
    const double mid = 0.5 * (lo + hi);
    const Estimate g_mid =
        ev.eval(mid, std::min<std::int64_t>(params.mc.replicates,
                                            static_cast<std::int64_t>(budget)));
    if (g_mid.value > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    budget *= 1.5;
  }

  EquilibriumResult result;
  result.iterations = iterations;
  result.offset_r = 0.5 * (lo + hi);

  // Terminal quantities at the full budget on fresh substreams.
  const std::uint64_t term = params.mc.stream_id +
                             kStreamStride * (ev.eval_count + 2);
  const Estimate h_final =
      estimate_H(result.offset_r, config, params.mc.with_stream(term));
  result.bias_delta = result.offset_r + h_final.value;
  result.receiver_shift = config.m_receiver - result.bias_delta;
  result.residual = h_final.value + delta;
  result.residual_std_error = h_final.std_error;
  result.sender_loss = estimate_sender_loss(
      TargetingScheme::targeting(result.offset_r), result.bias_delta, config,
      params.mc.with_stream(term + kStreamStride));
  result.receiver_loss = estimate_receiver_loss(
      TargetingScheme::targeting(result.offset_r), config,
      params.mc.with_stream(term + 2 * kStreamStride));
  return result;
}

std::vector<ScanPoint> equilibrium_scan(const GameConfig& config_base,
                                        const std::vector<double>& delta_grid,
                                        const SolverParams& params) {
  std::vector<ScanPoint> out;
  out.reserve(delta_grid.size());
  for (std::size_t i = 0; i < delta_grid.size(); ++i) {
    ScanPoint point;
    point.delta = delta_grid[i];
    GameConfig config = config_base;
    config.m_sender = config.m_receiver + delta_grid[i];
    SolverParams sub = params;
    sub.mc.stream_id =
        params.mc.stream_id + 1024 * static_cast<std::uint64_t>(i + 1);
    // Re-anchor the default bracket at each grid point.
    sub.bracket_lo = 0.0;
    sub.bracket_hi = 0.0;
    try {
      point.result = solve_equilibrium(config, sub);
    } catch (const std::exception& e) {
      point.error = e.what();
    }
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace alab
