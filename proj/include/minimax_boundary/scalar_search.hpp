#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace minimax_boundary {

/// Raised when a bracket does not hold a single interior minimum.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScalarMinimum {
  double argmin = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Minimizes a unimodal function on [lo, hi].
///
/// A uniform scan of `scan_points` interior samples must show exactly one
/// descent-to-ascent switch strictly inside the bracket, otherwise a
/// BracketError describing the scan is thrown. The located sub-bracket is then
/// refined by golden-section search with parabolic interpolation (Brent) to an
/// absolute abscissa tolerance `tol`.
ScalarMinimum minimize_unimodal(const std::function<double(double)>& f, double lo, double hi,
                                double tol, int scan_points = 64);

/// Same as minimize_unimodal applied to -f; `value` holds the maximum of f.
ScalarMinimum maximize_unimodal(const std::function<double(double)>& f, double lo, double hi,
                                double tol, int scan_points = 64);

/// Brent refinement alone, no unimodality scan.
ScalarMinimum brent_minimize(const std::function<double(double)>& f, double lo, double hi, double tol,
                             int max_iterations = 500);

/// Bisection for a root of a continuous function with a sign change on [lo, hi].
double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol,
                   int max_iterations = 200);

}  // namespace minimax_boundary
