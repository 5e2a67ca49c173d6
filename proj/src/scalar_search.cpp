#include "minimax_boundary/scalar_search.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

namespace minimax_boundary {

ScalarMinimum brent_minimize(const std::function<double(double)>& f, double lo, double hi, double tol,
                             int max_iterations) {
  constexpr double kGolden = 0.3819660112501051;  // (3 - sqrt 5) / 2
  const double eps = std::sqrt(std::numeric_limits<double>::epsilon());

  double a = lo;
  double b = hi;
  double x = a + kGolden * (b - a);
  double w = x;
  double v = x;
  double fx = f(x);
  double fw = fx;
  double fv = fx;
  double d = 0.0;
  double e = 0.0;
  int evaluations = 1;

  for (int iter = 0; iter < max_iterations; ++iter) {
    const double mid = 0.5 * (a + b);
    const double tol1 = eps * std::abs(x) + tol / 3.0;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - mid) <= tol2 - 0.5 * (b - a)) break;

    bool golden = true;
    if (std::abs(e) > tol1) {
      // parabola through (v, fv), (w, fw), (x, fx)
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (x < mid) ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x < mid) ? b - x : a - x;
      d = kGolden * e;
    }

    const double u = (std::abs(d) >= tol1) ? x + d : x + (d > 0.0 ? tol1 : -tol1);
    const double fu = f(u);
    ++evaluations;

    if (fu <= fx) {
      (u < x ? b : a) = x;
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      (u < x ? a : b) = u;
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  return {x, fx, evaluations};
}

ScalarMinimum minimize_unimodal(const std::function<double(double)>& f, double lo, double hi,
                                double tol, int scan_points) {
  if (!(hi > lo)) throw BracketError(fmt::format("empty bracket [{}, {}]", lo, hi));
  if (scan_points < 3) throw BracketError("unimodality scan needs at least 3 points");

  std::vector<double> xs(static_cast<std::size_t>(scan_points) + 2);
  std::vector<double> fs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(xs.size() - 1);
    fs[i] = f(xs[i]);
    if (!std::isfinite(fs[i])) {
      throw BracketError(fmt::format("objective not finite at x = {:.17g} in bracket [{}, {}]", xs[i], lo, hi));
    }
  }

  std::size_t best = 0;
  int switches = 0;
  int direction = 0;  // -1 descending, +1 ascending
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double diff = fs[i] - fs[i - 1];
    if (fs[i] < fs[best]) best = i;
    if (diff == 0.0) continue;
    const int dir = diff < 0.0 ? -1 : 1;
    if (direction != 0 && dir != direction) ++switches;
    direction = dir;
  }
  if (switches != 1 || best == 0 || best + 1 == xs.size()) {
    throw BracketError(fmt::format(
        "objective not unimodal on [{}, {}]: {} monotonicity switches, scan minimum at x = {:.17g}", lo,
        hi, switches, xs[best]));
  }

  ScalarMinimum out = brent_minimize(f, xs[best - 1], xs[best + 1], tol);
  out.evaluations += static_cast<int>(xs.size());
  return out;
}

ScalarMinimum maximize_unimodal(const std::function<double(double)>& f, double lo, double hi,
                                double tol, int scan_points) {
  ScalarMinimum out = minimize_unimodal([&](double x) { return -f(x); }, lo, hi, tol, scan_points);
  out.value = -out.value;
  return out;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol,
                   int max_iterations) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    throw BracketError(fmt::format("no sign change on [{}, {}]: f = {:.6g}, {:.6g}", lo, hi, f_lo, f_hi));
  }
  for (int iter = 0; iter < max_iterations && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace minimax_boundary
