#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alab/estimate.hpp"

namespace alab {

struct SolverParams {
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double tol_r = 0.01;
  int max_iter = 60;
  McParams mc;

  // When lo >= hi the solver falls back to the default bracket anchored at
  // the misalignment: delta +- 5 * scale * (1 + ln n).
  void validate() const;
};

struct EquilibriumResult {
  double offset_r = 0.0;       // r*
  double bias_delta = 0.0;     // delta* = r* + H(r*)
  double receiver_shift = 0.0; // m_receiver - delta*
  double residual = 0.0;       // H(r*) + Delta
  double residual_std_error = 0.0;
  LossBreakdown sender_loss;
  Estimate receiver_loss;
  int iterations = 0;
};

struct BiasCurve {
  struct Point {
    double r;
    Estimate h;
  };
  std::vector<Point> points;
};

// Raised when no sign change of H(r) + Delta is found after bracket
// expansion, or when the bracket endpoints contradict the expected signs
// beyond Monte Carlo noise. Carries the evaluated curve for diagnostics.
class BracketingError : public std::runtime_error {
 public:
  BracketingError(const std::string& what, BiasCurve curve)
      : std::runtime_error(what), curve(std::move(curve)) {}
  BiasCurve curve;
};

// One H estimate per grid point, on disjoint substreams.
BiasCurve scan_H(const GameConfig& config, const std::vector<double>& r_grid,
                 const McParams& mc);

// Bisection for H(r) = -Delta on the Monte Carlo estimate, with a
// geometrically growing per-iteration replicate budget and fresh substreams
// for every evaluation. Terminal quantities use the full budget.
EquilibriumResult solve_equilibrium(const GameConfig& config,
                                    const SolverParams& params);

struct ScanPoint {
  double delta = 0.0;
  std::optional<EquilibriumResult> result;
  std::string error;  // nonempty when the solve failed at this point
};

// One equilibrium solve per misalignment value, holding m_receiver fixed
// and varying m_sender. Solver failures are recorded per point.
std::vector<ScanPoint> equilibrium_scan(const GameConfig& config_base,
                                        const std::vector<double>& delta_grid,
                                        const SolverParams& params);

}  // namespace alab
