#pragma once

#include <ostream>
#include <span>
#include <string>

#include "json.hpp"

#include "minimax_boundary/kernel_risk.hpp"
#include "minimax_boundary/least_favorable.hpp"
#include "minimax_boundary/oracle.hpp"
#include "minimax_boundary/simulator.hpp"

namespace minimax_boundary {

using Json = nlohmann::ordered_json;

/// IEEE-754 double at 17 significant digits ("%.17g").
std::string format_double(double value);

/// JSON text with every floating-point number at 17 significant digits.
std::string dump_json(const Json& value, int indent = 2);

/// {knots: [...], pieces: [{value, slope, curvature}...], tail_value}
Json to_json(const PiecewiseQuadratic& shape);
/// {sigma, C, delta_star, b_star, risk, bias_sq, variance, paper_constant_without_fifth, sources}
Json to_json(const RiskReport& report);
/// {T, N, constrained_slope, min_norm_sq, initial_slope, recovered_support, iterations, kkt_residual, sources}
Json to_json(const OracleResult& result);
/// {replications, empirical_mse, mse_stderr, empirical_bias, analytic_risk, seed, delta_t, horizon, sources}
Json to_json(const SimulationReport& report);
/// {k0, I0, y_star, I_star, f_prime_0, t_bar_display, t_bar_recursion, ..., sources}
Json to_json(const SolutionConstants& constants);

/// `t,psi` rows, LF line endings.
void write_kernel_csv(std::ostream& out, std::span<const KernelSample> samples);
/// `t,f` rows of the oracle grid solution.
void write_grid_csv(std::ostream& out, const OracleResult& result);

}  // namespace minimax_boundary
