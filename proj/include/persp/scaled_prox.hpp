#pragma once

#include <span>
#include <utility>
#include <vector>

#include "persp/convex_core.hpp"

namespace persp {

/// prox of (gamma (.) f): the projection onto cl dom f when gamma is exactly
/// 0, prox of gamma*f when gamma > 0. Throws std::domain_error for gamma < 0.
Vec scaled_prox(const ProxProvider& f, double gamma, const Vec& x);
double scaled_prox(const ScalarFunction& f, double gamma, double t);

/// Value of (gamma (.) f) at x. For gamma = 0 this is the indicator of
/// cl dom f, with membership decided up to `membership_tol` in distance.
ExtReal scaled_eval(const ProxProvider& f, double gamma, const Vec& x,
                    double membership_tol = 1e-12);

/// Moreau decomposition x = prox_{gamma f} x + gamma prox_{f*/gamma}(x/gamma).
/// Returns (prox_{gamma f} x, prox_{f*/gamma}(x/gamma)); both proxes are taken
/// from the provider and its conjugate independently.
std::pair<Vec, Vec> moreau_decompose(const ProxProvider& f, double gamma, const Vec& x);

struct GapEstimate {
  double value = 0.0;
  /// True when the conjugate route was unavailable and `value` is a sampled
  /// lower bound from the variational inequality.
  bool lower_bound = false;
};

/// (gamma (.) f)(p) + (gamma (.) f)*(x - p) - <p, x - p>. Zero (up to round-off)
/// exactly when p is the prox of gamma (.) f at x.
GapEstimate prox_characterization_gap(const ProxProvider& f, double gamma, const Vec& x,
                                      const Vec& p);

/// gamma -> f(prox_{gamma (.) f} x) on an ascending list of gammas.
std::vector<ExtReal> prox_value_curve(const ProxProvider& f, const Vec& x,
                                      std::span<const double> gammas);

}  // namespace persp
