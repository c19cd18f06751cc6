#pragma once

#include <memory>

#include "persp/convex_core.hpp"

namespace persp {

/// phi = phi1d o ||.|| on R^n for an even scalar phi1d with 0 in int dom phi1d.
/// Every prox reduces to a scalar prox of the norm along the ray through x.
class RadialFunction final : public ProxProvider {
 public:
  explicit RadialFunction(std::shared_ptr<const ScalarFunction> phi1d);

  const ScalarFunction& profile() const { return *phi1d_; }
  std::shared_ptr<const ScalarFunction> profile_ptr() const { return phi1d_; }

  ExtReal eval(const Vec& x) const override;
  Vec prox(double gamma, const Vec& x) const override;
  Vec proj_cl_dom(const Vec& x) const override;
  std::shared_ptr<const ProxProvider> conjugate() const override;

 private:
  std::shared_ptr<const ScalarFunction> phi1d_;
};

/// Below this norm a vector is treated as exactly zero (subnormal guard only).
inline constexpr double kRadialZeroNorm = 1e-300;

/// prox_{gamma (.) phi} x = (prox_{gamma (.) phi1d} ||x|| / ||x||) x, and 0 at x = 0.
Vec radial_prox(const ScalarFunction& phi1d, double gamma, const Vec& x);

/// phi(prox_{gamma (.) phi} x) computed on the scalar side.
ExtReal radial_prox_value(const ScalarFunction& phi1d, double gamma, const Vec& x);

/// Scales x onto the ray value r: (r / ||x||) x, or 0 when x is zero.
Vec along_ray(const Vec& x, double r);

}  // namespace persp
