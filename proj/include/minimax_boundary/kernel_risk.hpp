#pragma once

#include <span>
#include <vector>

#include "minimax_boundary/errors.hpp"
#include "minimax_boundary/least_favorable.hpp"
#include "minimax_boundary/piecewise_quadratic.hpp"

namespace minimax_boundary {

/// Noise scale sigma of dY = f dt + sigma dW.
struct NoiseModel {
  double sigma = 1.0;

  explicit NoiseModel(double s = 1.0);
};

struct ModulusPoint {
  double delta = 0.0;
  double b_value = 0.0;
};

enum class KernelSide { boundary, rd_antisymmetric };

/// psi(t) = amplitude * shape(time_rescale * t) for t >= 0. The RD kernel is
/// extended to t < 0 by psi(-t) = -psi(t); at t = 0 it takes the right limit.
struct KernelSpec {
  double amplitude = 0.0;
  double time_rescale = 1.0;
  PiecewiseQuadratic shape;
  KernelSide side = KernelSide::boundary;

  double operator()(double t) const;
  double support_end() const { return shape.support_end() / time_rescale; }
  /// psi on [0, inf) as a re-knotted piecewise quadratic.
  PiecewiseQuadratic positive_part() const { return shape.rescaled(amplitude, time_rescale); }
};

struct RiskDecomposition {
  double bias = 0.0;
  double bias_sq = 0.0;
  double variance = 0.0;
  double total() const { return bias_sq + variance; }
};

/// Closed-form minimax risk plus its bias/variance split at the least
/// favorable function. `paper_constant_without_fifth` is the same prefactor
/// expression without the division by 5.
struct RiskReport {
  double sigma = 0.0;
  double c = 0.0;
  double delta_star = 0.0;
  double b_star = 0.0;
  double risk = 0.0;
  double bias_sq = 0.0;
  double variance = 0.0;
  double paper_constant_without_fifth = 0.0;
};

/// b(delta) = C^{1/5} I*^{-2/5} delta^{4/5}.
ModulusPoint modulus(double delta, SmoothnessParams params, double norm_sq_star);
/// b_RD(delta) = 2^{3/5} b(delta).
ModulusPoint rd_modulus(double delta, SmoothnessParams params, double norm_sq_star);

double optimal_delta(NoiseModel noise);

KernelSpec boundary_kernel(NoiseModel noise, SmoothnessParams params, const BoundarySolution& solution);
KernelSpec rd_kernel(NoiseModel noise, SmoothnessParams params, const BoundarySolution& solution);

/// The same kernels assembled the long way: b(delta*) / (sigma^2 + delta*^2)
/// times the scaled least favorable function at b(delta*) (boundary) or at
/// b_RD(delta*) / 2 (RD).
PiecewiseQuadratic assembled_boundary_kernel(NoiseModel noise, SmoothnessParams params,
                                             const BoundarySolution& solution);
PiecewiseQuadratic assembled_rd_kernel(NoiseModel noise, SmoothnessParams params,
                                       const BoundarySolution& solution);

RiskReport minimax_risk(NoiseModel noise, SmoothnessParams params, double norm_sq_star);
RiskReport rd_minimax_risk(NoiseModel noise, SmoothnessParams params, double norm_sq_star);

/// Exact risk of the kernel at f: (<psi, f> - f(0))^2 + sigma^2 ||psi||^2.
RiskDecomposition analytic_risk(const KernelSpec& kernel, const PiecewiseQuadratic& f, double f_at_0,
                                NoiseModel noise);
/// RD analogue: (<psi, f+> - <psi, f-> - jump)^2 + 2 sigma^2 ||psi||^2.
RiskDecomposition analytic_rd_risk(const KernelSpec& kernel, const PiecewiseQuadratic& f_plus,
                                   const PiecewiseQuadratic& f_minus, double jump, NoiseModel noise);

/// Observation increment dY over the grid cell [time, time + step).
struct Increment {
  double time = 0.0;
  double dy = 0.0;
};

/// Two-sided data: `minus` holds the increments of the negative half-line
/// mapped through t -> -t, so both halves carry nonnegative cell times.
struct TwoSidedIncrements {
  std::vector<Increment> plus;
  std::vector<Increment> minus;
};

/// sum psi(t_i) dY_i over a uniform grid starting at 0 that covers the kernel
/// support. Throws CoverageError / GridError.
double apply_estimator(const KernelSpec& kernel, std::span<const Increment> increments);
/// sum psi(t_i) dY(t_i) - sum psi(t_i) dY(-t_i). Requires an RD kernel.
double apply_estimator(const KernelSpec& kernel, const TwoSidedIncrements& increments);

struct KernelSample {
  double t = 0.0;
  double psi = 0.0;
};

/// Uniform tabulation with `cells` steps over the support; RD kernels are
/// tabulated over [-support, support].
std::vector<KernelSample> tabulate_kernel(const KernelSpec& kernel, int cells = 2048);

}  // namespace minimax_boundary
