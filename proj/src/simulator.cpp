#include "minimax_boundary/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>

#include <fmt/format.h>

#include "minimax_boundary/philox.hpp"

namespace minimax_boundary {

namespace {

constexpr std::uint32_t kPositiveStream = 0;
constexpr std::uint32_t kNegativeStream = 1;

void check_sigma(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument(fmt::format("noise scale must be nonnegative, got {}", sigma));
  }
}

std::vector<Increment> sample_side(const PiecewiseQuadratic& f, double sigma, const PathConfig& config,
                                   std::uint32_t stream, std::uint64_t replicate) {
  const int n = config.cells();
  const double h = config.step;
  const double noise_scale = sigma * std::sqrt(h);
  NormalStream normals(config.seed, stream, replicate);
  std::vector<Increment> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = i * h;
    double dy = f(t) * h;
    if (noise_scale != 0.0) dy += noise_scale * normals(static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] = {t, dy};
  }
  return out;
}

// Runs `estimate(r)` for every replicate and reduces the errors in replicate
// order, so the result is independent of the thread count.
SimulationReport run_replications(const std::function<double(std::uint64_t)>& error_of, int replications,
                                  unsigned threads) {
  if (replications < 100) {
    throw std::invalid_argument(fmt::format("need at least 100 replications, got {}", replications));
  }
  std::vector<double> errors(static_cast<std::size_t>(replications));
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(replications));

  auto work = [&](unsigned worker) {
    for (std::size_t r = worker; r < errors.size(); r += workers) errors[r] = error_of(r);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  const double count = static_cast<double>(replications);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double e : errors) {
    sum += e;
    sum_sq += e * e;
  }
  const double mean = sum / count;
  const double mse = sum_sq / count;
  double var_sq = 0.0;  // sample variance of the squared errors
  double var_err = 0.0;
  for (double e : errors) {
    const double d = e * e - mse;
    var_sq += d * d;
    var_err += (e - mean) * (e - mean);
  }
  var_sq /= count - 1.0;
  var_err /= count - 1.0;

  SimulationReport report;
  report.replications = replications;
  report.empirical_mse = mse;
  report.mse_stderr = std::sqrt(var_sq / count);
  report.empirical_bias = mean;
  report.bias_stderr = std::sqrt(var_err / count);
  return report;
}

void require_coverage(const KernelSpec& kernel, const PathConfig& config) {
  const double covered = config.cells() * config.step;
  if (covered < kernel.support_end() * (1.0 - 1e-12)) {
    throw CoverageError(fmt::format("path horizon {:.6g} is shorter than the kernel support {:.6g}", covered,
                                    kernel.support_end()));
  }
}

}  // namespace

int PathConfig::cells() const { return static_cast<int>(std::ceil(horizon / step - 1e-9)); }

void PathConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("path step must be positive");
  if (!(horizon > step)) throw std::invalid_argument("path horizon must exceed the step");
}

PathConfig default_path_config(const KernelSpec& kernel, std::uint64_t seed, PathSides sides) {
  const double support = kernel.support_end();
  PathConfig config;
  config.step = support / 4096.0;
  config.horizon = 1.1 * support;
  config.seed = seed;
  config.sides = sides;
  return config;
}

RDScenario make_rd_scenario(PiecewiseQuadratic f_plus, PiecewiseQuadratic f_minus) {
  RDScenario s;
  s.jump = f_plus(0.0) - f_minus(0.0);
  s.f_plus = std::move(f_plus);
  s.f_minus = std::move(f_minus);
  return s;
}

RDScenario build_rd_scenario(double b, SmoothnessParams params, const BoundarySolution& solution) {
  if (!(b > 0.0)) throw std::invalid_argument(fmt::format("RD jump must be positive, got {}", b));
  return make_rd_scenario(scale_solution(solution, b / 2.0, params).shape,
                          scale_solution(solution, -b / 2.0, params).shape);
}

std::vector<Increment> sample_increments(const PiecewiseQuadratic& f, double sigma, const PathConfig& config,
                                         std::uint64_t replicate) {
  check_sigma(sigma);
  config.validate();
  if (config.sides != PathSides::positive_axis) {
    throw ConfigurationError("sample_increments: two-sided configs need an RD scenario");
  }
  return sample_side(f, sigma, config, kPositiveStream, replicate);
}

TwoSidedIncrements sample_rd_increments(const RDScenario& scenario, double sigma, const PathConfig& config,
                                        std::uint64_t replicate) {
  check_sigma(sigma);
  config.validate();
  if (config.sides != PathSides::two_sided) {
    throw ConfigurationError("sample_rd_increments: config must be two-sided");
  }
  return {sample_side(scenario.f_plus, sigma, config, kPositiveStream, replicate),
          sample_side(scenario.f_minus, sigma, config, kNegativeStream, replicate)};
}

SimulationReport monte_carlo_risk(const KernelSpec& kernel, const PiecewiseQuadratic& f, double target,
                                  double sigma, const PathConfig& config, int replications, unsigned threads) {
  check_sigma(sigma);
  config.validate();
  require_coverage(kernel, config);

  SimulationReport report = run_replications(
      [&](std::uint64_t r) { return apply_estimator(kernel, sample_increments(f, sigma, config, r)) - target; },
      replications, threads);

  const PiecewiseQuadratic psi = kernel.positive_part();
  const double bias = inner_product(psi, f) - target;
  report.analytic_risk = bias * bias + sigma * sigma * norm_sq(psi);
  report.seed = config.seed;
  report.delta_t = config.step;
  report.horizon = config.horizon;
  return report;
}

SimulationReport rd_monte_carlo(const KernelSpec& kernel, const RDScenario& scenario, double sigma,
                                const PathConfig& config, int replications, unsigned threads) {
  check_sigma(sigma);
  config.validate();
  if (kernel.side != KernelSide::rd_antisymmetric) {
    throw ConfigurationError("rd_monte_carlo: kernel must be the antisymmetric RD kernel");
  }
  if (config.sides != PathSides::two_sided) {
    throw ConfigurationError("rd_monte_carlo: path config must be two-sided");
  }
  require_coverage(kernel, config);

  SimulationReport report = run_replications(
      [&](std::uint64_t r) {
        return apply_estimator(kernel, sample_rd_increments(scenario, sigma, config, r)) - scenario.jump;
      },
      replications, threads);

  const PiecewiseQuadratic psi = kernel.positive_part();
  const double bias = inner_product(psi, scenario.f_plus) - inner_product(psi, scenario.f_minus) - scenario.jump;
  report.analytic_risk = bias * bias + 2.0 * sigma * sigma * norm_sq(psi);
  report.seed = config.seed;
  report.delta_t = config.step;
  report.horizon = config.horizon;
  return report;
}

unsigned threads_from_environment() {
  const char* value = std::getenv("MINIMAX_BOUNDARY_THREADS");
  if (value == nullptr || *value == '\0') return 0;
  try {
    const long n = std::stol(value);
    return n > 0 ? static_cast<unsigned>(n) : 0u;
  } catch (const std::exception&) {
    throw std::invalid_argument(fmt::format("MINIMAX_BOUNDARY_THREADS must be an integer, got '{}'", value));
  }
}

}  // namespace minimax_boundary
