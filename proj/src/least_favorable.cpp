#include "minimax_boundary/least_favorable.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "minimax_boundary/scalar_search.hpp"

namespace minimax_boundary {

namespace {

// Brackets for the two scalar problems. The k0 ratio is singular at sqrt 2 and
// the g_y norm grows like |y|^{5/2} for y <= -1.
constexpr double kK0Lo = 1.0 + 1e-9;
constexpr double kK0Hi = 1.4;
constexpr double kYLo = -0.9;
constexpr double kYHi = 0.5;

constexpr int kMaxInteriorPieces = 400;

}  // namespace

SmoothnessParams::SmoothnessParams(double c) : lipschitz_constant(c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument(fmt::format("curvature bound C must be positive, got {}", c));
  }
}

double interior_objective(double k0) {
  const double q2 = k0 * k0 - 1.0;
  const double numerator = 23.0 / 30.0 * std::pow(k0, 5) - 2.0 * k0 * k0 * k0 + 2.0 * k0;
  const double denominator = 1.0 - std::sqrt(std::pow(q2, 5));
  return numerator / denominator;
}

ScalarSolve solve_k0(double search_tol) {
  if (!(search_tol > 0.0 && search_tol <= 1e-4)) {
    throw std::invalid_argument(fmt::format("solve_k0: search_tol must lie in (0, 1e-4], got {}", search_tol));
  }
  const ScalarMinimum m = minimize_unimodal(interior_objective, kK0Lo, kK0Hi, search_tol);
  return {m.argmin, m.value};
}

InteriorSolution build_interior_solution(double k0, double truncation_tol) {
  if (!(k0 > 1.0 && k0 < std::sqrt(2.0))) {
    throw std::invalid_argument(
        fmt::format("invalid k0 = {}: knot increments converge only for k0 in (1, sqrt 2)", k0));
  }
  if (!(truncation_tol > 0.0 && truncation_tol <= 1e-8)) {
    throw std::invalid_argument(
        fmt::format("truncation_tol must lie in (0, 1e-8], got {}", truncation_tol));
  }
  const double q = std::sqrt(k0 * k0 - 1.0);

  std::vector<double> knots{0.0};
  std::vector<QuadraticPiece> pieces;
  double value = 1.0;
  double slope = 0.0;
  double curvature = -1.0;
  double length = k0;
  for (int k = 1;; ++k) {
    if (k > kMaxInteriorPieces) {
      throw std::invalid_argument(fmt::format("invalid k0 = {}: knot sequence does not converge", k0));
    }
    // extremum of this piece sits where the slope vanishes
    const double vertex = -slope / curvature;
    const double amplitude =
        (vertex >= 0.0 && vertex < length) ? std::abs(value + 0.5 * slope * vertex) : std::abs(value);
    // the zero tail must glue to both value and slope
    if (amplitude < truncation_tol && std::abs(slope) < truncation_tol) break;

    const QuadraticPiece piece{value, slope, curvature};
    pieces.push_back(piece);
    knots.push_back(knots.back() + length);
    value = piece.value_at(length);
    slope = piece.slope_at(length);
    curvature = -curvature;
    length = k0 * (1.0 + q) * std::pow(q, k - 1);
  }

  InteriorSolution out;
  out.k0 = k0;
  out.shape = PiecewiseQuadratic(std::move(knots), std::move(pieces), 0.0);
  out.norm_sq = norm_sq(out.shape);
  out.truncation_tol = truncation_tol;
  return out;
}

double y_objective(double y, double interior_norm_sq) {
  if (!(y < 1.0)) throw std::domain_error(fmt::format("y_objective: y must be < 1, got {}", y));
  return std::sqrt(2.0 * (1.0 - y)) * (3.0 + 4.0 * y + 8.0 * y * y) / 15.0 +
         interior_norm_sq * std::pow(std::abs(y), 2.5);
}

ScalarSolve solve_y_star(double interior_norm_sq, double search_tol) {
  if (!(search_tol > 0.0 && search_tol <= 1e-6)) {
    throw std::invalid_argument(
        fmt::format("solve_y_star: search_tol must lie in (0, 1e-6], got {}", search_tol));
  }
  const ScalarMinimum m = minimize_unimodal(
      [&](double y) { return y_objective(y, interior_norm_sq); }, kYLo, kYHi, search_tol);
  return {m.argmin, m.value};
}

BoundarySolution build_boundary_solution(double y, const InteriorSolution& interior) {
  if (!(y < 1.0)) throw std::domain_error(fmt::format("boundary solution needs y < 1, got {}", y));
  const double junction = std::sqrt(2.0 * (1.0 - y));
  const PiecewiseQuadratic descent({0.0, junction}, {{1.0, -junction, 1.0}}, y);

  BoundarySolution out;
  out.y = y;
  out.junction = junction;
  if (y == 0.0) {
    // y f0(. / sqrt|y|) degenerates to zero
    out.shape = concatenate(descent, PiecewiseQuadratic::zero());
  } else {
    out.shape = concatenate(descent, interior.shape.rescaled(y, 1.0 / std::sqrt(std::abs(y))));
  }
  out.norm_sq = norm_sq(out.shape);
  out.support_end = out.shape.support_end();
  return out;
}

double support_end(const BoundarySolution& solution) { return solution.support_end; }

SupportCandidates support_candidates(double k0, double y) {
  const double q = std::sqrt(k0 * k0 - 1.0);
  const double junction = std::sqrt(2.0 * (1.0 - y));
  const double depth = std::sqrt(std::abs(y));
  const double ratio = (1.0 + q) / (1.0 - q);
  return {junction + depth * (k0 + ratio), junction + depth * k0 * (1.0 + ratio)};
}

ScaledSolution scale_solution(const BoundarySolution& base, double b, SmoothnessParams params) {
  ScaledSolution out;
  out.b = b;
  out.params = params;
  if (b == 0.0) return out;  // zero function

  const double c = params.lipschitz_constant;
  out.amplitude = b;
  out.time_factor = std::sqrt(c / std::abs(b));
  out.shape = base.shape.rescaled(b, out.time_factor);
  out.norm_sq = std::pow(std::abs(b), 2.5) / std::sqrt(c) * base.norm_sq;
  return out;
}

LeastFavorable solve_least_favorable(double search_tol, double truncation_tol) {
  LeastFavorable out;
  const ScalarSolve k0 = solve_k0(std::min(search_tol, 1e-4));
  out.interior = build_interior_solution(k0.argmin, truncation_tol);
  const ScalarSolve y = solve_y_star(out.interior.norm_sq, std::min(search_tol, 1e-6));
  out.boundary = build_boundary_solution(y.argmin, out.interior);

  SolutionConstants& c = out.constants;
  c.k0 = k0.argmin;
  c.interior_norm_sq = out.interior.norm_sq;
  c.y_star = y.argmin;
  c.norm_sq = out.boundary.norm_sq;
  c.initial_slope = out.boundary.initial_slope();
  c.support = support_candidates(c.k0, c.y_star);
  c.constructed_support = out.boundary.support_end;
  return out;
}

}  // namespace minimax_boundary
