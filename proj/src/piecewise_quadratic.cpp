#include "minimax_boundary/piecewise_quadratic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace minimax_boundary {

PiecewiseQuadratic::PiecewiseQuadratic() : knots_{0.0} {}

PiecewiseQuadratic::PiecewiseQuadratic(std::vector<double> knots, std::vector<QuadraticPiece> pieces,
                                       double tail_value)
    : knots_(std::move(knots)), pieces_(std::move(pieces)), tail_value_(tail_value) {
  if (knots_.empty() || knots_.front() != 0.0) {
    throw std::invalid_argument("PiecewiseQuadratic: knots must start at 0");
  }
  if (knots_.size() != pieces_.size() + 1) {
    throw std::invalid_argument("PiecewiseQuadratic: need exactly one more knot than pieces");
  }
  for (std::size_t k = 1; k < knots_.size(); ++k) {
    if (!(knots_[k] > knots_[k - 1])) {
      throw std::invalid_argument("PiecewiseQuadratic: knots must be strictly increasing");
    }
  }
}

PiecewiseQuadratic PiecewiseQuadratic::quadratic(double value, double slope, double curvature,
                                                 double end) {
  return PiecewiseQuadratic({0.0, end}, {{value, slope, curvature}}, 0.0);
}

std::size_t PiecewiseQuadratic::piece_index(double t) const {
  // first knot strictly greater than t, minus one
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  return static_cast<std::size_t>(it - knots_.begin()) - 1;
}

double PiecewiseQuadratic::operator()(double t) const {
  if (t < 0.0) throw std::domain_error("PiecewiseQuadratic: evaluation at negative time");
  if (t >= knots_.back()) return tail_value_;
  const std::size_t k = piece_index(t);
  return pieces_[k].value_at(t - knots_[k]);
}

double PiecewiseQuadratic::derivative(double t) const {
  if (t < 0.0) throw std::domain_error("PiecewiseQuadratic: evaluation at negative time");
  if (t >= knots_.back()) return 0.0;
  const std::size_t k = piece_index(t);
  return pieces_[k].slope_at(t - knots_[k]);
}

PiecewiseQuadratic PiecewiseQuadratic::rescaled(double amplitude, double time_factor) const {
  if (!(time_factor > 0.0)) throw std::invalid_argument("rescaled: time factor must be positive");
  std::vector<double> knots(knots_.size());
  std::transform(knots_.begin(), knots_.end(), knots.begin(),
                 [&](double a) { return a / time_factor; });
  knots.front() = 0.0;
  std::vector<QuadraticPiece> pieces(pieces_.size());
  std::transform(pieces_.begin(), pieces_.end(), pieces.begin(), [&](const QuadraticPiece& p) {
    return QuadraticPiece{amplitude * p.value, amplitude * time_factor * p.slope,
                          amplitude * time_factor * time_factor * p.curvature};
  });
  return PiecewiseQuadratic(std::move(knots), std::move(pieces), amplitude * tail_value_);
}

double PiecewiseQuadratic::max_abs_curvature() const {
  double m = 0.0;
  for (const auto& p : pieces_) m = std::max(m, std::abs(p.curvature));
  return m;
}

PiecewiseQuadratic::GluingMismatch PiecewiseQuadratic::gluing_mismatch() const {
  GluingMismatch out;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const double h = knots_[k + 1] - knots_[k];
    const double end_value = pieces_[k].value_at(h);
    const double end_slope = pieces_[k].slope_at(h);
    const bool last = k + 1 == pieces_.size();
    const double next_value = last ? tail_value_ : pieces_[k + 1].value;
    const double next_slope = last ? 0.0 : pieces_[k + 1].slope;
    out.value = std::max(out.value, std::abs(end_value - next_value));
    out.slope = std::max(out.slope, std::abs(end_slope - next_slope));
  }
  return out;
}

double eval(const PiecewiseQuadratic& shape, double t) { return shape(t); }

PiecewiseQuadratic concatenate(const PiecewiseQuadratic& head, const PiecewiseQuadratic& tail) {
  std::vector<double> knots(head.knots().begin(), head.knots().end());
  std::vector<QuadraticPiece> pieces(head.pieces().begin(), head.pieces().end());
  const double shift = head.support_end();
  for (std::size_t k = 0; k < tail.pieces().size(); ++k) {
    pieces.push_back(tail.pieces()[k]);
    knots.push_back(shift + tail.knots()[k + 1]);
  }
  return PiecewiseQuadratic(std::move(knots), std::move(pieces), tail.tail_value());
}

namespace {

// Quadratic re-expanded at a point x inside its piece: c0 + c1 u + c2 u^2, u = t - x.
std::array<double, 3> local_coefficients(const QuadraticPiece& p, double offset) {
  return {p.value_at(offset), p.slope_at(offset), 0.5 * p.curvature};
}

struct Cursor {
  const PiecewiseQuadratic& f;
  std::size_t k = 0;

  // coefficients valid on [x, next breakpoint of f)
  std::array<double, 3> at(double x) {
    const auto knots = f.knots();
    while (k < f.pieces().size() && knots[k + 1] <= x) ++k;
    if (k >= f.pieces().size()) return {f.tail_value(), 0.0, 0.0};
    return local_coefficients(f.pieces()[k], x - knots[k]);
  }
};

double integrate_product(const std::array<double, 3>& p, const std::array<double, 3>& q, double h) {
  // coefficients of the degree-4 product, integrated over [0, h] by Horner
  const double c0 = p[0] * q[0];
  const double c1 = p[0] * q[1] + p[1] * q[0];
  const double c2 = p[0] * q[2] + p[1] * q[1] + p[2] * q[0];
  const double c3 = p[1] * q[2] + p[2] * q[1];
  const double c4 = p[2] * q[2];
  return h * (c0 + h * (c1 / 2.0 + h * (c2 / 3.0 + h * (c3 / 4.0 + h * c4 / 5.0))));
}

}  // namespace

double inner_product(const PiecewiseQuadratic& f, const PiecewiseQuadratic& g) {
  if (f.tail_value() != 0.0 && g.tail_value() != 0.0) {
    throw std::domain_error("inner_product: both functions have a nonzero constant tail");
  }
  // past the last breakpoint both are constant tails and one of them is zero
  std::vector<double> breaks(f.knots().begin(), f.knots().end());
  breaks.insert(breaks.end(), g.knots().begin(), g.knots().end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  Cursor cf{f};
  Cursor cg{g};
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double x = breaks[i];
    total += integrate_product(cf.at(x), cg.at(x), breaks[i + 1] - x);
  }
  return total;
}

double norm_sq(const PiecewiseQuadratic& f) {
  if (f.tail_value() != 0.0) throw std::domain_error("norm_sq: nonzero constant tail");
  return inner_product(f, f);
}

}  // namespace minimax_boundary
