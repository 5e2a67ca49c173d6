#include <sstream>
#include <string>

#include "doctest.h"
#include "minimax_boundary/report_io.hpp"

using namespace minimax_boundary;

TEST_CASE("doubles are written at 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-1.5e-300) == "-1.5000000000000001e-300");
  for (double v : {0.26672039597629195, -0.12454679592530980, 1.0 / 3.0, 6.02214076e23}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("json dump keeps key order, full precision and null for non-finite values") {
  Json j;
  j["b"] = 0.1;
  j["a"] = Json::array({1, 2.5, std::numeric_limits<double>::infinity()});
  j["flag"] = true;
  j["name"] = "x";
  j["empty"] = Json::object();
  CHECK(dump_json(j) ==
        "{\n  \"b\": 0.10000000000000001,\n  \"a\": [\n    1,\n    2.5,\n    null\n  ],\n"
        "  \"flag\": true,\n  \"name\": \"x\",\n  \"empty\": {}\n}\n");
  CHECK(dump_json(j, -1) == "{\"b\":0.10000000000000001,\"a\":[1,2.5,null],\"flag\":true,\"name\":\"x\",\"empty\":{}}\n");
  // round trip through the parser is lossless
  const Json back = Json::parse(dump_json(Json{{"v", 0.26672039597629195}}));
  CHECK(back["v"].get<double>() == 0.26672039597629195);
}

TEST_CASE("report schemas") {
  const LeastFavorable lf = solve_least_favorable();
  const Json constants = to_json(lf.constants);
  for (const char* key : {"k0", "I0", "y_star", "I_star", "f_prime_0", "t_bar_display", "t_bar_recursion"}) {
    CHECK(constants.contains(key));
    CHECK(constants["sources"].contains(key));
  }

  const RiskReport r = minimax_risk(NoiseModel(1.0), SmoothnessParams(1.0), lf.constants.norm_sq);
  const Json risk = to_json(r);
  const std::vector<std::string> keys{"sigma", "C", "delta_star", "b_star", "risk", "bias_sq", "variance",
                                      "paper_constant_without_fifth", "sources"};
  std::vector<std::string> got;
  for (const auto& [k, v] : risk.items()) got.push_back(k);
  CHECK(got == keys);
  CHECK(risk["sources"]["risk"] == "closed_form");
  CHECK(risk["sources"]["paper_constant_without_fifth"] == "paper_display");

  OracleResult o;
  o.horizon = 4.0;
  o.grid_count = 4;
  o.solution_values = {1.0, 0.5, 0.25, 0.0, 0.0};
  const Json oj = to_json(o);
  for (const char* key : {"T", "N", "constrained_slope", "min_norm_sq", "initial_slope", "recovered_support",
                          "iterations", "kkt_residual"}) {
    CHECK(oj.contains(key));
  }
  CHECK(oj["sources"]["min_norm_sq"] == "oracle");

  SimulationReport s;
  const Json sj = to_json(s);
  for (const char* key :
       {"replications", "empirical_mse", "mse_stderr", "empirical_bias", "analytic_risk", "seed", "delta_t", "horizon"}) {
    CHECK(sj.contains(key));
  }

  const Json shape = to_json(PiecewiseQuadratic::quadratic(1.0, 0.0, -1.0, 2.0));
  CHECK(shape["knots"].size() == 2);
  CHECK(shape["pieces"][0]["curvature"] == -1.0);
  CHECK(shape["tail_value"] == 0.0);
}

TEST_CASE("csv writers") {
  std::ostringstream kernel;
  const std::vector<KernelSample> samples{{0.0, 1.75}, {0.5, -0.25}};
  write_kernel_csv(kernel, samples);
  CHECK(kernel.str() == "t,psi\n0,1.75\n0.5,-0.25\n");

  OracleResult o;
  o.horizon = 4.0;
  o.grid_count = 2;
  o.solution_values = {1.0, 0.1, 0.0};
  std::ostringstream grid;
  write_grid_csv(grid, o);
  CHECK(grid.str() == "t,f\n0,1\n2,0.10000000000000001\n4,0\n");
}
