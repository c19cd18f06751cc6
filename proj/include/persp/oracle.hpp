#pragma once

#include <functional>
#include <stdexcept>
#include <utility>

#include "persp/perspective.hpp"

namespace persp {

struct OracleConfig {
  double radius_factor = 1.5;
  int coarse_points_per_dim = 61;
  double refine_tol = 1e-8;
  int max_refine_iters = 500;
  /// Cap on the number of coarse grid points; the per-dimension count is
  /// lowered (kept odd) until the grid fits.
  long max_grid_points = 50000;

  void validate() const;
};

/// The oracle could not produce a trustworthy minimizer.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using PairEvaluator = std::function<ExtReal(const Vec&, const Vec&)>;

/// Approximate minimizer of gamma * f(u, v) + 1/2 ||(x, y) - (u, v)||^2 by a
/// coarse grid over the box of half-width radius_factor * (1 + ||(x, y)||)
/// centered at (x, y), then cyclic golden-section line searches along the
/// coordinate axes, a few seeded random directions, the directions back to
/// (x, y) (jointly, per block and per block tilted into the other block) and
/// the last sweep's displacement. Throws
/// OracleError when no grid point is feasible or the refined point is not
/// interior to the box.
std::pair<Vec, Vec> brute_force_prox(const PairEvaluator& f, double gamma, const Vec& x,
                                     const Vec& y, const OracleConfig& cfg = {});

/// Fenchel gap of the perspective at (p, q) against ((x - p)/gamma, (y - q)/gamma),
/// from the closed-form evaluators alone.
double subgradient_certificate(const PerspectivePair& pair, double gamma, const Vec& x,
                               const Vec& y, const Vec& p, const Vec& q);

}  // namespace persp
