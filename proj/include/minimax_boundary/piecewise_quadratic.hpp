#pragma once

#include <span>
#include <vector>

namespace minimax_boundary {

/// One quadratic segment, parametrized at its left knot `a`:
/// f(t) = value + slope * (t - a) + curvature * (t - a)^2 / 2.
struct QuadraticPiece {
  double value = 0.0;
  double slope = 0.0;
  double curvature = 0.0;

  double value_at(double offset) const { return value + offset * (slope + 0.5 * curvature * offset); }
  double slope_at(double offset) const { return slope + curvature * offset; }
};

/// Piecewise quadratic function on [0, inf).
///
/// Piece k covers [knots[k], knots[k+1]); beyond the last knot the function
/// equals `tail_value`. The knot vector therefore has one more entry than the
/// piece vector. An empty piece list with knots {0} is the constant tail.
class PiecewiseQuadratic {
 public:
  PiecewiseQuadratic();
  PiecewiseQuadratic(std::vector<double> knots, std::vector<QuadraticPiece> pieces,
                     double tail_value = 0.0);

  static PiecewiseQuadratic zero() { return {}; }

  /// Quadratic a + b t + c t^2 / 2 on [0, end), zero afterwards.
  static PiecewiseQuadratic quadratic(double value, double slope, double curvature, double end);

  double operator()(double t) const;
  double derivative(double t) const;

  std::span<const double> knots() const { return knots_; }
  std::span<const QuadraticPiece> pieces() const { return pieces_; }
  double tail_value() const { return tail_value_; }
  double support_end() const { return knots_.back(); }
  bool empty() const { return pieces_.empty(); }

  /// t -> amplitude * f(time_factor * t). Requires time_factor > 0.
  PiecewiseQuadratic rescaled(double amplitude, double time_factor) const;

  double max_abs_curvature() const;

  /// Largest value / slope jump over interior knots, including the jump into
  /// the tail at the last knot.
  struct GluingMismatch {
    double value = 0.0;
    double slope = 0.0;
  };
  GluingMismatch gluing_mismatch() const;

 private:
  std::size_t piece_index(double t) const;

  std::vector<double> knots_;
  std::vector<QuadraticPiece> pieces_;
  double tail_value_ = 0.0;
};

double eval(const PiecewiseQuadratic& shape, double t);

/// Appends `tail` (defined on [0, inf) with knots starting at 0) after the last
/// knot of `head`. The resulting tail value is the tail's.
PiecewiseQuadratic concatenate(const PiecewiseQuadratic& head, const PiecewiseQuadratic& tail);

/// Exact integral of f * g over [0, inf). Throws if the product has a nonzero
/// constant tail.
double inner_product(const PiecewiseQuadratic& f, const PiecewiseQuadratic& g);
double norm_sq(const PiecewiseQuadratic& f);

}  // namespace minimax_boundary
