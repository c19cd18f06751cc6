#include "persp/radial.hpp"

#include <stdexcept>

#include "persp/scaled_prox.hpp"

namespace persp {

RadialFunction::RadialFunction(std::shared_ptr<const ScalarFunction> phi1d)
    : phi1d_(std::move(phi1d)) {
  if (!phi1d_) throw std::invalid_argument("RadialFunction: null profile");
}

ExtReal RadialFunction::eval(const Vec& x) const { return phi1d_->eval(x.norm()); }

Vec RadialFunction::prox(double gamma, const Vec& x) const {
  if (!(gamma > 0.0)) throw std::domain_error("RadialFunction::prox: gamma must be > 0");
  return radial_prox(*phi1d_, gamma, x);
}

Vec RadialFunction::proj_cl_dom(const Vec& x) const { return radial_prox(*phi1d_, 0.0, x); }

std::shared_ptr<const ProxProvider> RadialFunction::conjugate() const {
  auto c = phi1d_->conjugate();
  if (!c) return nullptr;
  return std::make_shared<RadialFunction>(std::move(c));
}

Vec along_ray(const Vec& x, double r) {
  const double nx = x.norm();
  if (nx < kRadialZeroNorm) return Vec::zeros(x.size());
  Vec out = x;
  out *= r / nx;
  return out;
}

Vec radial_prox(const ScalarFunction& phi1d, double gamma, const Vec& x) {
  const double nx = x.norm();
  if (nx < kRadialZeroNorm) return Vec::zeros(x.size());
  return along_ray(x, scaled_prox(phi1d, gamma, nx));
}

ExtReal radial_prox_value(const ScalarFunction& phi1d, double gamma, const Vec& x) {
  const double nx = x.norm();
  if (nx < kRadialZeroNorm) return phi1d.eval(0.0);
  return phi1d.eval(scaled_prox(phi1d, gamma, nx));
}

}  // namespace persp
