#include "persp/root_finding.hpp"

#include <algorithm>
#include <cmath>

namespace persp {

MonotoneRootResult monotone_root(const std::function<double(double)>& f, double lo, double f_lo,
                                 double hi, double f_hi, const MonotoneRootOptions& opts,
                                 std::vector<RootStep>* trace) {
  if (!(lo <= hi)) throw std::invalid_argument("monotone_root: lo > hi");
  if (f_lo == 0.0) return {lo, 0.0, 0, lo, lo};
  if (f_hi == 0.0) return {hi, 0.0, 0, hi, hi};
  if (!(f_lo < 0.0 && f_hi > 0.0)) {
    throw RootFindingError("monotone_root: endpoints do not bracket a root", lo, hi,
                           std::min(std::abs(f_lo), std::abs(f_hi)));
  }

  double a = lo, b = hi;
  double true_fa = f_lo, true_fb = f_hi;  // unmodified values
  double fa = f_lo, fb = f_hi;            // Illinois-weighted values
  int side = 0;
  int stalls = 0;
  double ref_width = b - a;

  auto best_endpoint = [&](int iters) {
    const bool use_a = std::abs(true_fa) <= std::abs(true_fb);
    return MonotoneRootResult{use_a ? a : b, use_a ? true_fa : true_fb, iters, a, b};
  };

  const double stop_residual = std::min(opts.residual_tol, opts.x_tol / 4.0);
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    double m = 0.5 * (a + b);
    if (stalls < 2) {
      const double rf = (a * fb - b * fa) / (fb - fa);
      if (rf > a && rf < b) m = rf;
    } else {
      stalls = 0;
    }
    if (!(m > a && m < b)) return best_endpoint(iter - 1);  // adjacent doubles

    const double fm = f(m);
    if (trace) trace->push_back({iter, a, b, m, fm});
    if (std::isnan(fm)) throw RootFindingError("monotone_root: NaN residual", a, b, fm);
    if (fm == 0.0 || std::abs(fm) <= stop_residual) return {m, fm, iter, a, b};

    if (fm < 0.0) {
      a = m;
      fa = true_fa = fm;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = m;
      fb = true_fb = fm;
      if (side == 1) fa *= 0.5;
      side = 1;
    }

    const double width = b - a;
    if (width <= 0.5 * ref_width) {
      ref_width = width;
      stalls = 0;
    } else {
      ++stalls;
    }
    if (width <= opts.x_tol / 4.0) {
      MonotoneRootResult r = best_endpoint(iter);
      if (std::abs(r.residual) <= opts.residual_tol) return r;
    }
  }
  const MonotoneRootResult r = best_endpoint(opts.max_iter);
  throw RootFindingError("monotone_root: iteration limit reached", r.lo, r.hi, r.residual);
}

}  // namespace persp
