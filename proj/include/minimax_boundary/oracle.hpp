#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "minimax_boundary/kernel_risk.hpp"
#include "minimax_boundary/least_favorable.hpp"

namespace minimax_boundary {

/// Grid version of: minimize the integral of f^2 over [0, horizon] subject to
/// f(0) = boundary_value and |f''| <= curvature_bound, optionally with f'(0) = 0.
struct DiscretizedProblem {
  double horizon = 4.0;
  int grid_count = 4000;
  double boundary_value = 1.0;
  bool constrain_initial_slope_zero = false;
  double curvature_bound = 1.0;

  double step() const { return horizon / grid_count; }
};

struct OracleResult {
  double horizon = 0.0;
  int grid_count = 0;
  bool constrained_slope = false;
  double min_norm_sq = 0.0;
  std::vector<double> solution_values;  // f at t_j = j * step, j = 0..N
  std::vector<double> curvatures;       // per-cell f'', j = 0..N-1
  double initial_slope = 0.0;
  double recovered_support = 0.0;
  int iterations = 0;
  double kkt_residual = 0.0;

  double step() const { return horizon / grid_count; }
};

/// Non-convergence; carries the last iterate.
class OracleError : public std::runtime_error {
 public:
  OracleError(const std::string& what, OracleResult last) : std::runtime_error(what), last_iterate(std::move(last)) {}
  OracleResult last_iterate;
};

/// Accelerated projected gradient on the (initial slope, per-cell curvature)
/// parametrization. Curvatures are clamped to the bound, so every iterate is
/// feasible. Default support threshold is 1e-4 |f(0)|.
OracleResult solve_discretized(const DiscretizedProblem& problem, int max_iters = 400000,
                               double tol = 1e-9);

/// Last grid time with |f| >= threshold; the horizon if f never decays.
double recovered_support(const OracleResult& result, double threshold);

/// recovered_support applied to `shape` sampled on the grid j * horizon / grid_count.
double sampled_support(const PiecewiseQuadratic& shape, double horizon, int grid_count, double threshold);

/// Fraction of cells in [0, support) whose curvature sits within `slack` of the bound.
double constraint_activity(const OracleResult& result, double bound, double support, double slack = 1e-6);

/// Largest |oracle f - shape| over the oracle grid.
double sup_distance(const OracleResult& result, const PiecewiseQuadratic& shape);

struct ModulusCheck {
  double delta = 0.0;
  double b_oracle = 0.0;
  double b_closed_form = 0.0;
};

/// For each delta, bisects on b until the discretized minimal norm equals
/// delta^2. The horizon grows like sqrt(b / C) so the grid resolves the same
/// relative shape for every b.
std::vector<ModulusCheck> verify_modulus_curve(const std::vector<double>& deltas, SmoothnessParams params,
                                               double norm_sq_star, int grid_count = 1000);

struct DeltaSearch {
  double delta = 0.0;
  double risk = 0.0;
};

/// Direct maximization of sigma^2 b(delta)^2 / (sigma^2 + delta^2) over
/// delta in (1e-3 sigma, 1e3 sigma) with the closed-form modulus.
DeltaSearch verify_delta_star(NoiseModel noise, SmoothnessParams params, double norm_sq_star);

struct SplitSearch {
  double a_star = 0.0;
  double value = 0.0;
};

/// Minimizes |a|^{5/2} + |a - b|^{5/2} over a.
SplitSearch verify_rd_split(double b);

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 50);

/// Squared L2 norm of a piecewise quadratic by adaptive Simpson over its support.
double quadrature_norm_sq(const PiecewiseQuadratic& f, double tol = 1e-14);

}  // namespace minimax_boundary
