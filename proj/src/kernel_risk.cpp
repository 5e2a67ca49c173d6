#include "minimax_boundary/kernel_risk.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace minimax_boundary {

NoiseModel::NoiseModel(double s) : sigma(s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::invalid_argument(fmt::format("noise scale sigma must be positive, got {}", s));
  }
}

double KernelSpec::operator()(double t) const {
  if (t >= 0.0) return amplitude * shape(time_rescale * t);
  if (side == KernelSide::boundary) return 0.0;
  return -amplitude * shape(-time_rescale * t);
}

ModulusPoint modulus(double delta, SmoothnessParams params, double norm_sq_star) {
  if (!(delta > 0.0)) throw std::invalid_argument(fmt::format("modulus: delta must be positive, got {}", delta));
  const double b = std::pow(params.lipschitz_constant, 0.2) * std::pow(norm_sq_star, -0.4) *
                   std::pow(delta, 0.8);
  return {delta, b};
}

ModulusPoint rd_modulus(double delta, SmoothnessParams params, double norm_sq_star) {
  ModulusPoint m = modulus(delta, params, norm_sq_star);
  m.b_value *= std::pow(2.0, 0.6);
  return m;
}

double optimal_delta(NoiseModel noise) { return 2.0 * noise.sigma; }

KernelSpec boundary_kernel(NoiseModel noise, SmoothnessParams params, const BoundarySolution& solution) {
  const double c = params.lipschitz_constant;
  const double sigma = noise.sigma;
  const double norm = solution.norm_sq;
  KernelSpec k;
  k.amplitude = std::pow(2.0, 1.6) * std::pow(norm, -0.8) / 5.0 * std::pow(c, 0.4) * std::pow(sigma, -0.4);
  k.time_rescale = std::pow(norm * c * c / (4.0 * sigma * sigma), 0.2);
  k.shape = solution.shape;
  k.side = KernelSide::boundary;
  return k;
}

KernelSpec rd_kernel(NoiseModel noise, SmoothnessParams params, const BoundarySolution& solution) {
  const double c = params.lipschitz_constant;
  const double sigma = noise.sigma;
  const double norm = solution.norm_sq;
  KernelSpec k;
  k.amplitude = std::pow(2.0, 1.8) * std::pow(norm, -0.8) / 5.0 * std::pow(c, 0.4) * std::pow(sigma, -0.4);
  k.time_rescale = std::pow(norm * c * c / (2.0 * sigma * sigma), 0.2);
  k.shape = solution.shape;
  k.side = KernelSide::rd_antisymmetric;
  return k;
}

PiecewiseQuadratic assembled_boundary_kernel(NoiseModel noise, SmoothnessParams params,
                                             const BoundarySolution& solution) {
  const double sigma = noise.sigma;
  const double delta = optimal_delta(noise);
  const double b = modulus(delta, params, solution.norm_sq).b_value;
  const ScaledSolution f = scale_solution(solution, b, params);
  const double weight = b / (sigma * sigma + delta * delta);
  return f.shape.rescaled(weight, 1.0);
}

PiecewiseQuadratic assembled_rd_kernel(NoiseModel noise, SmoothnessParams params,
                                       const BoundarySolution& solution) {
  const double sigma = noise.sigma;
  const double delta = optimal_delta(noise);
  const double b = rd_modulus(delta, params, solution.norm_sq).b_value;
  const ScaledSolution f = scale_solution(solution, b / 2.0, params);
  const double weight = b / (sigma * sigma + delta * delta);
  return f.shape.rescaled(weight, 1.0);
}

namespace {

RiskReport closed_form_risk(NoiseModel noise, SmoothnessParams params, double b_star, double prefactor,
                            double psi_norm_sq_per_side, int sides) {
  const double sigma = noise.sigma;
  const double c = params.lipschitz_constant;
  const double delta = optimal_delta(noise);
  const double s2 = sigma * sigma;
  const double shrink = s2 + delta * delta;

  RiskReport r;
  r.sigma = sigma;
  r.c = c;
  r.delta_star = delta;
  r.b_star = b_star;
  r.risk = prefactor / 5.0 * std::pow(c, 0.4) * std::pow(sigma, 1.6);
  r.bias_sq = b_star * b_star * s2 * s2 / (shrink * shrink);
  r.variance = sides * s2 * psi_norm_sq_per_side;
  r.paper_constant_without_fifth = prefactor;
  return r;
}

}  // namespace

RiskReport minimax_risk(NoiseModel noise, SmoothnessParams params, double norm_sq_star) {
  const double delta = optimal_delta(noise);
  const double b = modulus(delta, params, norm_sq_star).b_value;
  const double weight = b / (noise.sigma * noise.sigma + delta * delta);
  // ||f*_{b,C}||^2 = delta^2 by construction of b(delta)
  const double psi_norm_sq = weight * weight * delta * delta;
  const double prefactor = std::pow(2.0, 1.6) * std::pow(norm_sq_star, -0.8);
  return closed_form_risk(noise, params, b, prefactor, psi_norm_sq, 1);
}

RiskReport rd_minimax_risk(NoiseModel noise, SmoothnessParams params, double norm_sq_star) {
  const double delta = optimal_delta(noise);
  const double b = rd_modulus(delta, params, norm_sq_star).b_value;
  const double weight = b / (noise.sigma * noise.sigma + delta * delta);
  // each side carries half of the RD norm budget delta^2
  const double psi_norm_sq = weight * weight * delta * delta / 2.0;
  const double prefactor = std::pow(2.0, 2.8) * std::pow(norm_sq_star, -0.8);
  return closed_form_risk(noise, params, b, prefactor, psi_norm_sq, 2);
}

RiskDecomposition analytic_risk(const KernelSpec& kernel, const PiecewiseQuadratic& f, double f_at_0,
                                NoiseModel noise) {
  const PiecewiseQuadratic psi = kernel.positive_part();
  RiskDecomposition r;
  r.bias = inner_product(psi, f) - f_at_0;
  r.bias_sq = r.bias * r.bias;
  r.variance = noise.sigma * noise.sigma * norm_sq(psi);
  return r;
}

RiskDecomposition analytic_rd_risk(const KernelSpec& kernel, const PiecewiseQuadratic& f_plus,
                                   const PiecewiseQuadratic& f_minus, double jump, NoiseModel noise) {
  const PiecewiseQuadratic psi = kernel.positive_part();
  RiskDecomposition r;
  r.bias = inner_product(psi, f_plus) - inner_product(psi, f_minus) - jump;
  r.bias_sq = r.bias * r.bias;
  r.variance = 2.0 * noise.sigma * noise.sigma * norm_sq(psi);
  return r;
}

namespace {

double weighted_sum(const KernelSpec& kernel, std::span<const Increment> increments) {
  if (increments.size() < 2) throw GridError("estimator needs at least two grid cells");
  if (std::abs(increments.front().time) > 0.0) {
    throw GridError(fmt::format("grid must start at t = 0, starts at {}", increments.front().time));
  }
  const double step = increments[1].time - increments[0].time;
  if (!(step > 0.0)) throw GridError("grid step must be positive");

  const double tol = 1e-6 * step;
  const PiecewiseQuadratic psi = kernel.positive_part();
  double sum = 0.0;
  for (std::size_t i = 0; i < increments.size(); ++i) {
    const double t = increments[i].time;
    if (std::abs(t - static_cast<double>(i) * step) > tol) {
      throw GridError(fmt::format("nonuniform grid: cell {} at t = {:.17g}, expected {:.17g}", i, t,
                                  static_cast<double>(i) * step));
    }
    sum += psi(t) * increments[i].dy;
  }
  const double covered = static_cast<double>(increments.size()) * step;
  if (covered < kernel.support_end() * (1.0 - 1e-12)) {
    throw CoverageError(fmt::format("grid covers [0, {:.6g}) but the kernel support ends at {:.6g}",
                                    covered, kernel.support_end()));
  }
  return sum;
}

}  // namespace

double apply_estimator(const KernelSpec& kernel, std::span<const Increment> increments) {
  return weighted_sum(kernel, increments);
}

double apply_estimator(const KernelSpec& kernel, const TwoSidedIncrements& increments) {
  if (kernel.side != KernelSide::rd_antisymmetric) {
    throw ConfigurationError("two-sided data requires an antisymmetric RD kernel");
  }
  return weighted_sum(kernel, increments.plus) - weighted_sum(kernel, increments.minus);
}

std::vector<KernelSample> tabulate_kernel(const KernelSpec& kernel, int cells) {
  if (cells < 1) throw std::invalid_argument("tabulate_kernel: need at least one cell");
  const double end = kernel.support_end();
  const double step = end / cells;
  std::vector<KernelSample> out;
  if (kernel.side == KernelSide::rd_antisymmetric) {
    for (int j = cells; j >= 1; --j) {
      const double t = -j * step;
      out.push_back({t, kernel(t)});
    }
  }
  for (int j = 0; j <= cells; ++j) {
    const double t = j * step;
    out.push_back({t, kernel(t)});
  }
  return out;
}

}  // namespace minimax_boundary
