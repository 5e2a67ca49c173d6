#include "minimax_boundary/report_io.hpp"

#include <cmath>

#include <fmt/format.h>

namespace minimax_boundary {

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

namespace {

void dump_into(std::string& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent < 0 ? ":" : ": ";
        dump_into(out, value, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_into(out, value, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& value, int indent) {
  std::string out;
  dump_into(out, value, indent, 0);
  out += '\n';
  return out;
}

Json to_json(const PiecewiseQuadratic& shape) {
  Json j;
  j["knots"] = Json::array();
  for (double k : shape.knots()) j["knots"].push_back(k);
  j["pieces"] = Json::array();
  for (const auto& p : shape.pieces()) {
    j["pieces"].push_back(Json{{"value", p.value}, {"slope", p.slope}, {"curvature", p.curvature}});
  }
  j["tail_value"] = shape.tail_value();
  return j;
}

Json to_json(const RiskReport& r) {
  Json j;
  j["sigma"] = r.sigma;
  j["C"] = r.c;
  j["delta_star"] = r.delta_star;
  j["b_star"] = r.b_star;
  j["risk"] = r.risk;
  j["bias_sq"] = r.bias_sq;
  j["variance"] = r.variance;
  j["paper_constant_without_fifth"] = r.paper_constant_without_fifth;
  j["sources"] = {{"sigma", "input"},
                  {"C", "input"},
                  {"delta_star", "closed_form"},
                  {"b_star", "closed_form"},
                  {"risk", "closed_form"},
                  {"bias_sq", "closed_form"},
                  {"variance", "closed_form"},
                  {"paper_constant_without_fifth", "paper_display"}};
  return j;
}

Json to_json(const OracleResult& r) {
  Json j;
  j["T"] = r.horizon;
  j["N"] = r.grid_count;
  j["constrained_slope"] = r.constrained_slope;
  j["min_norm_sq"] = r.min_norm_sq;
  j["initial_slope"] = r.initial_slope;
  j["recovered_support"] = r.recovered_support;
  j["iterations"] = r.iterations;
  j["kkt_residual"] = r.kkt_residual;
  j["sources"] = {{"T", "input"},
                  {"N", "input"},
                  {"min_norm_sq", "oracle"},
                  {"initial_slope", "oracle"},
                  {"recovered_support", "oracle"},
                  {"iterations", "oracle"},
                  {"kkt_residual", "oracle"}};
  return j;
}

Json to_json(const SimulationReport& r) {
  Json j;
  j["replications"] = r.replications;
  j["empirical_mse"] = r.empirical_mse;
  j["mse_stderr"] = r.mse_stderr;
  j["empirical_bias"] = r.empirical_bias;
  j["bias_stderr"] = r.bias_stderr;
  j["analytic_risk"] = r.analytic_risk;
  j["seed"] = r.seed;
  j["delta_t"] = r.delta_t;
  j["horizon"] = r.horizon;
  j["sources"] = {{"replications", "input"},
                  {"empirical_mse", "monte_carlo"},
                  {"mse_stderr", "monte_carlo"},
                  {"empirical_bias", "monte_carlo"},
                  {"bias_stderr", "monte_carlo"},
                  {"analytic_risk", "closed_form"},
                  {"seed", "input"},
                  {"delta_t", "input"},
                  {"horizon", "input"}};
  return j;
}

Json to_json(const SolutionConstants& c) {
  Json j;
  j["k0"] = c.k0;
  j["I0"] = c.interior_norm_sq;
  j["y_star"] = c.y_star;
  j["I_star"] = c.norm_sq;
  j["f_prime_0"] = c.initial_slope;
  j["t_bar_display"] = c.support.display;
  j["t_bar_recursion"] = c.support.recursion;
  j["t_bar_constructed"] = c.constructed_support;
  j["sources"] = {{"k0", "closed_form"},
                  {"I0", "closed_form"},
                  {"y_star", "closed_form"},
                  {"I_star", "closed_form"},
                  {"f_prime_0", "closed_form"},
                  {"t_bar_display", "paper_display"},
                  {"t_bar_recursion", "closed_form"},
                  {"t_bar_constructed", "closed_form"}};
  return j;
}

void write_kernel_csv(std::ostream& out, std::span<const KernelSample> samples) {
  out << "t,psi\n";
  for (const auto& s : samples) out << format_double(s.t) << ',' << format_double(s.psi) << '\n';
}

void write_grid_csv(std::ostream& out, const OracleResult& result) {
  out << "t,f\n";
  const double h = result.step();
  for (std::size_t j = 0; j < result.solution_values.size(); ++j) {
    out << format_double(static_cast<double>(j) * h) << ',' << format_double(result.solution_values[j]) << '\n';
  }
}

}  // namespace minimax_boundary
