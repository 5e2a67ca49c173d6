#include <cmath>
#include <vector>

#include "doctest.h"
#include "minimax_boundary/least_favorable.hpp"
#include "minimax_boundary/oracle.hpp"
#include "minimax_boundary/scalar_search.hpp"
#include "reference_values.hpp"

using namespace minimax_boundary;

namespace {

const LeastFavorable& solved() {
  static const LeastFavorable lf = solve_least_favorable();
  return lf;
}

// Extremum magnitudes of each piece (vertex inside the piece, or t = 0 for the first).
std::vector<double> extremum_amplitudes(const PiecewiseQuadratic& f) {
  std::vector<double> out;
  const auto knots = f.knots();
  const auto pieces = f.pieces();
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto& p = pieces[k];
    const double vertex = -p.slope / p.curvature;
    if (vertex >= 0.0 && vertex < knots[k + 1] - knots[k]) out.push_back(std::abs(p.value_at(vertex)));
  }
  return out;
}

void check_shape_invariants(const PiecewiseQuadratic& f, double bound) {
  const auto mismatch = f.gluing_mismatch();
  CHECK(mismatch.value < 1e-9);
  CHECK(mismatch.slope < 1e-9);
  CHECK(f.max_abs_curvature() <= bound * (1.0 + 1e-12));
  const auto knots = f.knots();
  for (std::size_t i = 1; i < knots.size(); ++i) CHECK(knots[i] > knots[i - 1]);
}

}  // namespace

TEST_CASE("solve_k0 reproduces the interior constants") {
  const ScalarSolve k0 = solve_k0(1e-10);
  CHECK(std::abs(k0.argmin - 1.02889) < 1e-4);
  CHECK(std::abs(k0.value - 0.76402) < 1e-4);
  CHECK(std::abs(k0.argmin - reference::kK0) < 1e-8);
  CHECK(std::abs(k0.value - reference::kI0) < 1e-12);
  CHECK(interior_objective(1.0) == doctest::Approx(23.0 / 30.0).epsilon(1e-15));
  CHECK_THROWS_AS(solve_k0(1e-3), std::invalid_argument);
  CHECK_THROWS_AS(solve_k0(0.0), std::invalid_argument);
}

TEST_CASE("interior solution matches the knot recursion") {
  const auto& interior = solved().interior;
  const double k0 = interior.k0;
  const double q = std::sqrt(k0 * k0 - 1.0);
  const auto knots = interior.shape.knots();
  const auto pieces = interior.shape.pieces();

  CHECK(knots[1] == doctest::Approx(k0).epsilon(1e-15));
  CHECK(std::abs(interior.shape(knots[1]) - reference::kFirstKnotValue) < 1e-8);
  CHECK(std::abs(interior.norm_sq - 0.76402) < 5e-4);
  CHECK(std::abs(interior.norm_sq - solve_k0().value) < 5e-4);
  CHECK(eval(interior.shape, 0.0) == 1.0);
  CHECK(interior.shape.derivative(0.0) == 0.0);

  REQUIRE(pieces.size() >= 6);
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    CHECK(pieces[k].curvature == (k % 2 == 0 ? -1.0 : 1.0));
  }
  for (std::size_t k = 2; k < knots.size(); ++k) {
    const double expected = k0 * (1.0 + q) * std::pow(q, static_cast<double>(k) - 2.0);
    CHECK(knots[k] - knots[k - 1] == doctest::Approx(expected).epsilon(1e-13));
  }
  check_shape_invariants(interior.shape, 1.0);
}

TEST_CASE("interior extrema decay geometrically by k0^2 - 1") {
  const auto& interior = solved().interior;
  const double ratio = interior.k0 * interior.k0 - 1.0;
  const auto amps = extremum_amplitudes(interior.shape);
  REQUIRE(amps.size() >= 4);
  CHECK(amps[0] == 1.0);
  int checked = 0;
  for (std::size_t i = 1; i < amps.size(); ++i) {
    if (amps[i] < 1e-6) break;  // ratios of tiny amplitudes carry cancellation error
    CHECK(std::abs(amps[i] / amps[i - 1] - ratio) < 1e-9);
    ++checked;
  }
  CHECK(checked >= 3);
}

TEST_CASE("interior builder rejects bad inputs") {
  CHECK_THROWS_AS(build_interior_solution(1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_interior_solution(std::sqrt(2.0)), std::invalid_argument);
  CHECK_THROWS_AS(build_interior_solution(1.02, 1e-6), std::invalid_argument);
}

TEST_CASE("y objective closed form and its minimizer") {
  const double i0 = solved().constants.interior_norm_sq;
  CHECK(y_objective(0.0, i0) == doctest::Approx(std::sqrt(2.0) / 5.0).epsilon(1e-15));
  CHECK(std::abs(y_objective(-0.12455, i0) - 0.26672) < 1e-4);
  CHECK(std::abs(y_objective(-0.12455, reference::kI0) - 0.266720395988511) < 1e-12);
  CHECK(std::abs(y_objective(-0.5, reference::kI0) - 0.481470658749353) < 1e-12);
  CHECK_THROWS_AS(y_objective(1.0, i0), std::domain_error);

  const ScalarSolve y = solve_y_star(i0, 1e-10);
  CHECK(y.argmin < 0.0);
  CHECK(std::abs(y.argmin - (-0.12455)) < 1e-4);
  CHECK(std::abs(y.value - 0.26672) < 1e-4);
  CHECK(std::abs(y.argmin - reference::kYStar) < 1e-8);
  CHECK(std::abs(y.value - reference::kIStar) < 1e-12);
  CHECK(y.value <= y_objective(0.0, i0));
  CHECK(y.value <= y_objective(-0.5, i0));
  for (double h : {1e-3, 1e-2, 1e-1}) {
    CHECK(y.value <= y_objective(y.argmin + h, i0));
    CHECK(y.value <= y_objective(y.argmin - h, i0));
  }
  CHECK_THROWS_AS(solve_y_star(i0, 1e-5), std::invalid_argument);
}

TEST_CASE("closed-form y objective matches quadrature of the construction") {
  const auto& lf = solved();
  for (double y : {-0.5, -0.12455, -0.01, 0.0, 0.3, 0.9}) {
    const BoundarySolution g = build_boundary_solution(y, lf.interior);
    const double closed = y_objective(y, lf.interior.norm_sq);
    CHECK(std::abs(quadrature_norm_sq(g.shape) - closed) < 1e-6);
    CHECK(std::abs(g.norm_sq - closed) < 1e-8);
  }
}

TEST_CASE("boundary family invariants") {
  const auto& lf = solved();
  for (double y : {-0.9, -0.5, -0.12455, -0.01, 0.0, 0.3, 0.9}) {
    CAPTURE(y);
    const BoundarySolution g = build_boundary_solution(y, lf.interior);
    CHECK(eval(g.shape, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.junction == doctest::Approx(std::sqrt(2.0 * (1.0 - y))));
    CHECK(g.shape(g.junction) == doctest::Approx(y).epsilon(1e-14).scale(1.0));
    CHECK(std::abs(g.shape.derivative(g.junction)) < 1e-14);
    CHECK(g.initial_slope() == doctest::Approx(-std::sqrt(2.0 * (1.0 - y))).epsilon(1e-15));
    CHECK(g.shape(g.support_end) == 0.0);
    CHECK(g.shape(g.support_end + 1.0) == 0.0);
    check_shape_invariants(g.shape, 1.0);
  }
  CHECK_THROWS_AS(build_boundary_solution(1.0, lf.interior), std::domain_error);
}

TEST_CASE("y = 0 degenerates to the bare parabola") {
  const BoundarySolution g0 = build_boundary_solution(0.0, solved().interior);
  CHECK(g0.norm_sq == doctest::Approx(std::sqrt(2.0) / 5.0).epsilon(1e-14));
  CHECK(support_end(g0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(eval(g0.shape, std::sqrt(2.0)) == 0.0);
}

TEST_CASE("optimal boundary solution constants") {
  const auto& c = solved().constants;
  CHECK(std::abs(c.y_star - reference::kYStar) < 1e-8);
  CHECK(std::abs(c.norm_sq - reference::kIStar) < 1e-11);
  CHECK(std::abs(c.initial_slope - (-1.4997)) < 1e-3);
  CHECK(std::abs(c.initial_slope - reference::kInitialSlope) < 1e-8);
  CHECK(std::abs(c.support.display - 2.44121) < 1e-5);
  CHECK(std::abs(c.support.display - reference::kSupportDisplay) < 1e-6);
  CHECK(std::abs(c.support.recursion - reference::kSupportRecursion) < 1e-6);
  // the built shape stops where the recursion says, up to the truncated tail
  CHECK(std::abs(c.constructed_support - c.support.recursion) < 1e-5);
  CHECK(c.constructed_support < c.support.recursion);
}

TEST_CASE("scaling laws on the 3x3 grid") {
  const auto& lf = solved();
  const double istar = lf.constants.norm_sq;
  for (double b : {0.5, 1.0, 2.0}) {
    for (double c : {0.5, 1.0, 2.0}) {
      CAPTURE(b);
      CAPTURE(c);
      const ScaledSolution s = scale_solution(lf.boundary, b, SmoothnessParams(c));
      const double law = std::pow(b, 2.5) / std::sqrt(c) * istar;
      CHECK(eval(s.shape, 0.0) == doctest::Approx(b).epsilon(1e-15));
      CHECK(s.norm_sq == doctest::Approx(law).epsilon(1e-14));
      CHECK(std::abs(quadrature_norm_sq(s.shape) / law - 1.0) < 1e-6);
      CHECK(std::abs(norm_sq(s.shape) / law - 1.0) < 1e-8);
      check_shape_invariants(s.shape, c);
    }
  }
}

TEST_CASE("scaling examples") {
  const auto& lf = solved();
  const ScaledSolution unit = scale_solution(lf.boundary, 1.0, SmoothnessParams(1.0));
  CHECK(unit.norm_sq == doctest::Approx(lf.constants.norm_sq).epsilon(1e-15));
  const ScaledSolution two = scale_solution(lf.boundary, 2.0, SmoothnessParams(1.0));
  CHECK(std::abs(two.norm_sq - reference::kNormAtB2) < 1e-10);
  const ScaledSolution neg = scale_solution(lf.boundary, -1.0, SmoothnessParams(1.0));
  CHECK(neg.norm_sq == doctest::Approx(lf.constants.norm_sq).epsilon(1e-15));
  for (double t : {0.0, 0.3, 1.0, 1.7, 2.2, 2.45}) CHECK(neg.shape(t) == -unit.shape(t));
  const ScaledSolution zero = scale_solution(lf.boundary, 0.0, SmoothnessParams(1.0));
  CHECK(zero.norm_sq == 0.0);
  CHECK(zero.shape(0.5) == 0.0);
  CHECK_THROWS_AS(SmoothnessParams(0.0), std::invalid_argument);
  CHECK_THROWS_AS(SmoothnessParams(-1.0), std::invalid_argument);
}

TEST_CASE("scalar search reports bracketing failures") {
  CHECK_THROWS_AS(minimize_unimodal([](double x) { return x; }, 0.0, 1.0, 1e-8), BracketError);
  CHECK_THROWS_AS(minimize_unimodal([](double x) { return std::cos(6.0 * x); }, 0.0, 6.0, 1e-8), BracketError);
  const auto m = minimize_unimodal([](double x) { return (x - 0.3) * (x - 0.3); }, -1.0, 1.0, 1e-12);
  CHECK(m.argmin == doctest::Approx(0.3).epsilon(1e-9));
}
