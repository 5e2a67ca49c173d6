#pragma once

#include "minimax_boundary/piecewise_quadratic.hpp"

namespace minimax_boundary {

/// Curvature bound C of the second-order Hoelder class: |f''| <= C.
struct SmoothnessParams {
  double lipschitz_constant = 1.0;

  explicit SmoothnessParams(double c = 1.0);
};

struct ScalarSolve {
  double argmin = 0.0;
  double value = 0.0;
};

/// Interior (zero initial slope) minimal-norm solution with f(0) = 1, |f''| <= 1.
/// Alternating unit curvatures on geometrically shrinking knots.
struct InteriorSolution {
  double k0 = 0.0;
  PiecewiseQuadratic shape;
  double norm_sq = 0.0;
  double truncation_tol = 0.0;
};

/// Boundary family member g_y: a unit-curvature parabola from 1 down to depth y
/// with zero slope at the junction s = sqrt(2(1 - y)), followed by the interior
/// solution rescaled to start at y.
struct BoundarySolution {
  double y = 0.0;
  double junction = 0.0;
  PiecewiseQuadratic shape;
  double norm_sq = 0.0;
  double support_end = 0.0;

  double initial_slope() const { return shape.derivative(0.0); }
};

/// b * f(sqrt(C / b) t), the minimal-norm function with f(0) = b, |f''| <= C.
struct ScaledSolution {
  double b = 0.0;
  SmoothnessParams params;
  double amplitude = 0.0;
  double time_factor = 0.0;
  PiecewiseQuadratic shape;
  double norm_sq = 0.0;
};

/// The two support candidates for the optimal boundary solution. `display` is
/// sqrt(2(1-y)) + sqrt(-y)(k0 + (1+q)/(1-q)); `recursion` sums the interior
/// knot increments, sqrt(2(1-y)) + sqrt(-y) k0 (1 + (1+q)/(1-q)); q = sqrt(k0^2 - 1).
struct SupportCandidates {
  double display = 0.0;
  double recursion = 0.0;
};

struct SolutionConstants {
  double k0 = 0.0;
  double interior_norm_sq = 0.0;  // I0*
  double y_star = 0.0;
  double norm_sq = 0.0;  // I*
  double initial_slope = 0.0;
  SupportCandidates support;
  double constructed_support = 0.0;
};

/// Ratio whose minimum over (1, sqrt 2) gives the interior knot scale:
/// (23/30 k^5 - 2 k^3 + 2 k) / (1 - (k^2 - 1)^{5/2}).
double interior_objective(double k0);

ScalarSolve solve_k0(double search_tol = 1e-10);

InteriorSolution build_interior_solution(double k0, double truncation_tol = 1e-12);

/// Closed-form squared norm of g_y:
/// sqrt(2(1-y)) (3 + 4y + 8y^2) / 15 + I0 |y|^{5/2}.
double y_objective(double y, double interior_norm_sq);

ScalarSolve solve_y_star(double interior_norm_sq, double search_tol = 1e-10);

BoundarySolution build_boundary_solution(double y, const InteriorSolution& interior);

double support_end(const BoundarySolution& solution);

SupportCandidates support_candidates(double k0, double y);

ScaledSolution scale_solution(const BoundarySolution& base, double b, SmoothnessParams params);

/// Everything above solved at the default tolerances.
struct LeastFavorable {
  InteriorSolution interior;
  BoundarySolution boundary;
  SolutionConstants constants;
};

LeastFavorable solve_least_favorable(double search_tol = 1e-10, double truncation_tol = 1e-12);

}  // namespace minimax_boundary
