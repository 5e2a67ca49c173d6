#pragma once

#include <cstdint>
#include <vector>

#include "minimax_boundary/kernel_risk.hpp"
#include "minimax_boundary/least_favorable.hpp"

namespace minimax_boundary {

enum class PathSides { positive_axis, two_sided };

/// Uniform observation grid t_i = i * step, i = 0 .. cells() - 1, covering [0, horizon).
struct PathConfig {
  double step = 1e-3;
  double horizon = 3.0;
  std::uint64_t seed = 0;
  PathSides sides = PathSides::positive_axis;

  int cells() const;
  void validate() const;
};

/// Grid with step = support / 4096 and horizon = 1.1 * support of the kernel.
PathConfig default_path_config(const KernelSpec& kernel, std::uint64_t seed, PathSides sides);

struct RDScenario {
  PiecewiseQuadratic f_plus;
  PiecewiseQuadratic f_minus;
  double jump = 0.0;
};

/// Scenario with jump = f_plus(0) - f_minus(0).
RDScenario make_rd_scenario(PiecewiseQuadratic f_plus, PiecewiseQuadratic f_minus);

/// Least favorable odd pair f_plus = -f_minus = f*_{b/2, C}.
RDScenario build_rd_scenario(double b, SmoothnessParams params, const BoundarySolution& solution);

struct SimulationReport {
  int replications = 0;
  double empirical_mse = 0.0;
  double mse_stderr = 0.0;
  double empirical_bias = 0.0;
  double bias_stderr = 0.0;
  double analytic_risk = 0.0;
  std::uint64_t seed = 0;
  double delta_t = 0.0;
  double horizon = 0.0;
};

/// dY_i = f(t_i) step + sigma sqrt(step) xi_i, with xi_i drawn from the
/// counter-based stream keyed by (seed, replicate, i). sigma may be 0.
std::vector<Increment> sample_increments(const PiecewiseQuadratic& f, double sigma, const PathConfig& config,
                                         std::uint64_t replicate = 0);

/// Both half-lines of the RD model; the negative side is returned mirrored
/// (t -> -t) and draws from an independent stream.
TwoSidedIncrements sample_rd_increments(const RDScenario& scenario, double sigma, const PathConfig& config,
                                        std::uint64_t replicate = 0);

/// Empirical MSE of the kernel estimator against `target` over independent
/// replications. `threads` = 0 uses the hardware concurrency; the report does
/// not depend on it.
SimulationReport monte_carlo_risk(const KernelSpec& kernel, const PiecewiseQuadratic& f, double target,
                                  double sigma, const PathConfig& config, int replications,
                                  unsigned threads = 0);

SimulationReport rd_monte_carlo(const KernelSpec& kernel, const RDScenario& scenario, double sigma,
                                const PathConfig& config, int replications, unsigned threads = 0);

/// Reads MINIMAX_BOUNDARY_THREADS (0 or unset = auto).
unsigned threads_from_environment();

}  // namespace minimax_boundary
