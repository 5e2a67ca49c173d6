#include "minimax_boundary/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "minimax_boundary/scalar_search.hpp"

namespace minimax_boundary {

namespace {

// Trapezoidal norm of the grid function obtained by integrating a per-cell
// curvature twice from (f(0), f'(0)). Linear part of the map is A, so the
// objective is ||W^{1/2} (f0 1 + A x)||^2 and its Hessian 2 A^T W A.
class GridQuadratic {
 public:
  GridQuadratic(int cells, double step) : n_(cells), h_(step), weights_(cells + 1, step) {
    weights_.front() = weights_.back() = 0.5 * step;
    values_.resize(cells + 1);
  }

  int cells() const { return n_; }

  // f_j for given boundary value, slope and curvatures
  const std::vector<double>& forward(double f0, double slope, const std::vector<double>& u) {
    double f = f0;
    double s = slope;
    values_[0] = f;
    for (int j = 0; j < n_; ++j) {
      f += h_ * s + 0.5 * h_ * h_ * u[j];
      s += h_ * u[j];
      values_[j + 1] = f;
    }
    return values_;
  }

  double objective() const {
    double total = 0.0;
    for (int j = 0; j <= n_; ++j) total += weights_[j] * values_[j] * values_[j];
    return total;
  }

  // gradient of objective() at the last forward() point
  double backward(std::vector<double>& grad_u) {
    double df = 2.0 * weights_[n_] * values_[n_];  // dJ/df_{j+1}, accumulated
    double ds = 0.0;                               // dJ/ds_{j+1}
    for (int j = n_ - 1; j >= 0; --j) {
      grad_u[j] = 0.5 * h_ * h_ * df + h_ * ds;
      ds += h_ * df;
      df += 2.0 * weights_[j] * values_[j];
    }
    return ds;  // dJ/d slope
  }

  double slope_curvature() const {
    double total = 0.0;
    for (int j = 0; j <= n_; ++j) {
      const double t = j * h_;
      total += 2.0 * weights_[j] * t * t;
    }
    return total;
  }

 private:
  int n_;
  double h_;
  std::vector<double> weights_;
  std::vector<double> values_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Largest eigenvalue of the Hessian of the homogeneous problem in the
// variables (w, u) with slope = kappa * w.
double hessian_eigenvalue(GridQuadratic& q, double kappa, int iterations) {
  std::vector<double> z(q.cells(), 1.0);
  std::vector<double> hz(q.cells());
  double w = kappa > 0.0 ? 1.0 : 0.0;
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const double norm = std::sqrt(dot(z, z) + w * w);
    for (double& v : z) v /= norm;
    w /= norm;
    q.forward(0.0, kappa * w, z);
    const double hw = kappa * q.backward(hz);
    lambda = dot(z, hz) + w * hw;
    z.swap(hz);
    w = hw;
  }
  return lambda;
}

}  // namespace

OracleResult solve_discretized(const DiscretizedProblem& problem, int max_iters, double tol) {
  if (problem.grid_count < 500) throw std::invalid_argument("solve_discretized: need N >= 500");
  if (!(problem.horizon >= 3.0)) throw std::invalid_argument("solve_discretized: need T >= 3");
  if (!(tol > 0.0 && tol <= 1e-6)) throw std::invalid_argument("solve_discretized: tol must lie in (0, 1e-6]");
  if (!(problem.curvature_bound > 0.0)) throw std::invalid_argument("solve_discretized: bound must be positive");

  const int n = problem.grid_count;
  const double bound = problem.curvature_bound;
  const double f0 = problem.boundary_value;
  const bool free_slope = !problem.constrain_initial_slope_zero;
  GridQuadratic q(n, problem.step());

  // Rescale the slope variable (slope = kappa * w) so its curvature matches
  // the curvature block; the clamp projection is unaffected.
  const double lambda_u = hessian_eigenvalue(q, 0.0, 80);
  const double kappa = free_slope ? std::sqrt(lambda_u / q.slope_curvature()) : 0.0;
  const double lipschitz = 1.05 * hessian_eigenvalue(q, kappa, 200);
  const double step = 1.0 / lipschitz;

  auto project = [bound](double v) { return std::clamp(v, -bound, bound); };

  std::vector<double> x_u(n, 0.0), y_u(n, 0.0), next_u(n), grad_u(n);
  double x_w = 0.0;
  double y_w = 0.0;
  double momentum = 1.0;

  auto gradient_at = [&](double w, const std::vector<double>& u, std::vector<double>& g) {
    q.forward(f0, kappa * w, u);
    return kappa * q.backward(g);
  };
  auto objective_at = [&](double w, const std::vector<double>& u) {
    q.forward(f0, kappa * w, u);
    return q.objective();
  };
  auto kkt_at = [&](double w, const std::vector<double>& u) {
    std::vector<double> g(n);
    const double gw = gradient_at(w, u, g);
    double total = gw * gw;
    for (int j = 0; j < n; ++j) {
      const double r = (u[j] - project(u[j] - step * g[j])) / step;
      total += r * r;
    }
    return std::sqrt(total);
  };

  const double kkt0 = kkt_at(x_w, x_u);
  double obj_checkpoint = objective_at(x_w, x_u);
  constexpr int kCheckEvery = 100;

  OracleResult result;
  result.horizon = problem.horizon;
  result.grid_count = n;
  result.constrained_slope = problem.constrain_initial_slope_zero;

  auto finalize = [&](int iterations, double kkt) {
    q.forward(f0, kappa * x_w, x_u);
    result.min_norm_sq = q.objective();
    result.solution_values = q.forward(f0, kappa * x_w, x_u);
    result.curvatures = x_u;
    result.initial_slope = kappa * x_w;
    result.iterations = iterations;
    result.kkt_residual = kkt;
    result.recovered_support = recovered_support(result, 1e-4 * std::abs(f0));
  };

  for (int iter = 1; iter <= max_iters; ++iter) {
    const double gw = gradient_at(y_w, y_u, grad_u);
    const double next_w = free_slope ? y_w - step * gw : 0.0;
    for (int j = 0; j < n; ++j) next_u[j] = project(y_u[j] - step * grad_u[j]);

    // adaptive restart when the momentum step points uphill
    double restart_test = (y_w - next_w) * (next_w - x_w);
    for (int j = 0; j < n; ++j) restart_test += (y_u[j] - next_u[j]) * (next_u[j] - x_u[j]);
    const double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    const double beta = restart_test > 0.0 ? 0.0 : (momentum - 1.0) / next_momentum;
    momentum = restart_test > 0.0 ? 1.0 : next_momentum;

    y_w = next_w + beta * (next_w - x_w);
    for (int j = 0; j < n; ++j) y_u[j] = next_u[j] + beta * (next_u[j] - x_u[j]);
    x_w = next_w;
    x_u.swap(next_u);

    if (iter % kCheckEvery == 0) {
      const double obj = objective_at(x_w, x_u);
      const double decrease = (obj_checkpoint - obj) / std::max(obj, 1e-300);
      obj_checkpoint = obj;
      if (decrease < tol) {
        const double kkt = kkt_at(x_w, x_u);
        if (kkt < tol * kkt0) {
          finalize(iter, kkt);
          return result;
        }
      }
    }
  }
  finalize(max_iters, kkt_at(x_w, x_u));
  throw OracleError(fmt::format("solve_discretized: no convergence in {} iterations (kkt residual {:.3e}, "
                                "target {:.3e})",
                                max_iters, result.kkt_residual, tol * kkt0),
                    std::move(result));
}

double recovered_support(const OracleResult& result, double threshold) {
  const auto& f = result.solution_values;
  for (std::size_t j = f.size(); j-- > 0;) {
    if (std::abs(f[j]) >= threshold) {
      if (j + 1 == f.size()) return result.horizon;
      return static_cast<double>(j) * result.step();
    }
  }
  return 0.0;
}

double sampled_support(const PiecewiseQuadratic& shape, double horizon, int grid_count, double threshold) {
  OracleResult grid;
  grid.horizon = horizon;
  grid.grid_count = grid_count;
  grid.solution_values.resize(static_cast<std::size_t>(grid_count) + 1);
  for (int j = 0; j <= grid_count; ++j) grid.solution_values[static_cast<std::size_t>(j)] = shape(j * grid.step());
  return recovered_support(grid, threshold);
}

double constraint_activity(const OracleResult& result, double bound, double support, double slack) {
  const double h = result.step();
  int inside = 0;
  int active = 0;
  for (std::size_t j = 0; j < result.curvatures.size(); ++j) {
    if (static_cast<double>(j) * h >= support) break;
    ++inside;
    if (std::abs(std::abs(result.curvatures[j]) - bound) <= slack) ++active;
  }
  return inside == 0 ? 0.0 : static_cast<double>(active) / inside;
}

double sup_distance(const OracleResult& result, const PiecewiseQuadratic& shape) {
  double worst = 0.0;
  const double h = result.step();
  for (std::size_t j = 0; j < result.solution_values.size(); ++j) {
    worst = std::max(worst, std::abs(result.solution_values[j] - shape(static_cast<double>(j) * h)));
  }
  return worst;
}

std::vector<ModulusCheck> verify_modulus_curve(const std::vector<double>& deltas, SmoothnessParams params,
                                               double norm_sq_star, int grid_count) {
  const double c = params.lipschitz_constant;
  auto min_norm = [&](double b) {
    DiscretizedProblem p;
    p.horizon = std::max(4.0, 4.0 * std::sqrt(b / c));
    p.grid_count = grid_count;
    p.boundary_value = b;
    p.curvature_bound = c;
    return solve_discretized(p, 400000, 1e-7).min_norm_sq;
  };

  std::vector<ModulusCheck> out;
  for (double delta : deltas) {
    if (!(delta > 0.0)) throw std::invalid_argument("verify_modulus_curve: deltas must be positive");
    const double target = delta * delta;
    // bracket in log b by doubling from b = 1
    double lo = 1.0;
    double hi = 1.0;
    double f_lo = min_norm(lo) - target;
    if (f_lo > 0.0) {
      for (int i = 0; f_lo > 0.0; ++i) {
        if (i > 60) throw BracketError(fmt::format("modulus bisection: no lower bracket for delta = {}", delta));
        hi = lo;
        lo /= 2.0;
        f_lo = min_norm(lo) - target;
      }
    } else {
      double f_hi = f_lo;
      for (int i = 0; f_hi <= 0.0; ++i) {
        if (i > 60) throw BracketError(fmt::format("modulus bisection: no upper bracket for delta = {}", delta));
        lo = hi;
        hi *= 2.0;
        f_hi = min_norm(hi) - target;
      }
    }
    const double log_b =
        bisect_root([&](double lb) { return min_norm(std::exp(lb)) - target; }, std::log(lo), std::log(hi), 1e-5);
    out.push_back({delta, std::exp(log_b), modulus(delta, params, norm_sq_star).b_value});
  }
  return out;
}

DeltaSearch verify_delta_star(NoiseModel noise, SmoothnessParams params, double norm_sq_star) {
  const double s2 = noise.sigma * noise.sigma;
  auto objective = [&](double log_delta) {
    const double delta = std::exp(log_delta);
    const double b = modulus(delta, params, norm_sq_star).b_value;
    return s2 * b * b / (s2 + delta * delta);
  };
  const double lo = std::log(1e-3 * noise.sigma);
  const double hi = std::log(1e3 * noise.sigma);
  const ScalarMinimum m = maximize_unimodal(objective, lo, hi, 1e-12, 256);
  return {std::exp(m.argmin), m.value};
}

SplitSearch verify_rd_split(double b) {
  if (!(b > 0.0)) throw std::invalid_argument("verify_rd_split: b must be positive");
  auto objective = [b](double a) { return std::pow(std::abs(a), 2.5) + std::pow(std::abs(a - b), 2.5); };
  const ScalarMinimum m = minimize_unimodal(objective, -b, 2.0 * b, 1e-12 * b);
  return {m.argmin, m.value};
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa, double m, double fm,
                    double b, double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return simpson_step(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, fa, m, fm, b, fb, whole, tol, max_depth);
}

double quadrature_norm_sq(const PiecewiseQuadratic& f, double tol) {
  if (f.tail_value() != 0.0) throw std::domain_error("quadrature_norm_sq: nonzero constant tail");
  // split into a few panels so the initial Simpson estimate sees the shape
  const double end = f.support_end();
  constexpr int kPanels = 16;
  double total = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double a = end * i / kPanels;
    const double b = end * (i + 1) / kPanels;
    total += adaptive_simpson([&](double t) { const double v = f(t); return v * v; }, a, b, tol / kPanels);
  }
  return total;
}

}  // namespace minimax_boundary
