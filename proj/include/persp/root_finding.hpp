#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace persp {

/// Safeguarded Newton for a strictly increasing f with f(lo) <= 0 <= f(hi).
/// Runs to machine precision: stops when the Newton step is below a few ulps
/// or the bracket can no longer be split.
template <class F, class DF>
double newton_bracketed(F&& f, DF&& df, double lo, double hi, double guess, int max_iter = 200) {
  if (lo > hi) throw std::invalid_argument("newton_bracketed: empty bracket");
  double x = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (fx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double d = df(x);
    double next = (d > 0.0 && std::isfinite(d)) ? x - fx / d : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double ulp = 4.0 * std::numeric_limits<double>::epsilon() *
                       std::max(std::abs(x), std::numeric_limits<double>::min());
    if (std::abs(next - x) <= ulp || next == lo || next == hi) return next;
    x = next;
  }
  return x;
}

/// One evaluation of the monotone root search, for tracing.
struct RootStep {
  int iter = 0;
  double lo = 0.0;
  double hi = 0.0;
  double mid = 0.0;  // the point evaluated this iteration
  double value = 0.0;
};

struct MonotoneRootResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
  double lo = 0.0;
  double hi = 0.0;
};

struct MonotoneRootOptions {
  double x_tol = 1e-12;         // acceptable bracket width
  double residual_tol = 1e-10;  // acceptable |f(root)|
  int max_iter = 200;
};

/// Raised when a bracketed root search cannot meet its tolerances.
class RootFindingError : public std::runtime_error {
 public:
  RootFindingError(const std::string& what, double lo, double hi, double residual)
      : std::runtime_error(what), lo_(lo), hi_(hi), residual_(residual) {}
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double residual() const { return residual_; }

 private:
  double lo_, hi_, residual_;
};

/// Root of a strictly increasing continuous f on [lo, hi] with f(lo) < 0 < f(hi),
/// by regula falsi with the Illinois modification, falling back to bisection
/// whenever two consecutive steps fail to halve the bracket.
///
/// Stops when |f| <= min(residual_tol, x_tol / 4), when the bracket is narrower
/// than x_tol / 4 with |f| <= residual_tol, or when the bracket collapses to
/// adjacent doubles. Every evaluation is appended to `trace` when given.
MonotoneRootResult monotone_root(const std::function<double(double)>& f, double lo, double f_lo,
                                 double hi, double f_hi, const MonotoneRootOptions& opts,
                                 std::vector<RootStep>* trace = nullptr);

}  // namespace persp
