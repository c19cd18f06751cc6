#include "persp/perspective.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace persp {

namespace {

constexpr double kMembershipTol = 1e-12;

Vec snapped(const Vec& v, const Vec& projection, double tol) {
  return tol > 0.0 && distance(v, projection) <= tol ? projection : v;
}

ExtReal support_snapped(const ScalingFunction& s, const Vec& ystar, double tol) {
  return s.support_cl_conv_S(snapped(ystar, s.proj_cl_dom_support(ystar), tol));
}

// w * env*(ystar / w) for w > 0, snapping the scaled argument in ystar units.
ExtReal scaled_env_conj(const ScalingFunction& s, double w, const Vec& ystar, double tol) {
  Vec t = ystar / w;
  const Vec proj = s.proj_cl_dom_env_conj(t);
  if (tol > 0.0 && w * distance(t, proj) <= tol) t = proj;
  return scale(w, s.env_conj_eval(t));
}

bool in_cl_conv_S(const ScalingFunction& s, const Vec& y) {
  return distance(s.proj_cl_conv_S(y), y) <= kMembershipTol * (1.0 + y.norm());
}

// s phi(x / s) for 0 < s < +inf
ExtReal scaled_base(const BaseFunction& phi, double s, const Vec& x) {
  return scale(s, phi.eval(x / s));
}

}  // namespace

bool compatible(ConjugateSignClass c, ScalingKind k) {
  switch (c) {
    case ConjugateSignClass::NonnegativeConjugate:
      return k == ScalingKind::NegSLower;
    case ConjugateSignClass::NonpositiveConjugate:
      return k == ScalingKind::SLower;
    case ConjugateSignClass::ZeroInftyConjugate:
      return true;
  }
  return false;
}

PerspectivePair::PerspectivePair(std::shared_ptr<const BaseFunction> base,
                                 std::shared_ptr<const ScalingFunction> scaling, std::size_t n,
                                 std::size_t m)
    : base_(std::move(base)), scaling_(std::move(scaling)), n_(n), m_(m) {
  if (!base_ || !scaling_) throw std::invalid_argument("PerspectivePair: null component");
  if (n_ == 0 || m_ == 0) throw DimensionError("PerspectivePair: dimensions must be positive");
  if (!compatible(base_->sign_class(), scaling_->kind())) {
    throw IncompatiblePairError("PerspectivePair: base " + base_->name() + " (" +
                                to_string(base_->sign_class()) + ") cannot be paired with scaling " +
                                scaling_->name() + " (" + to_string(scaling_->kind()) + ")");
  }
}

void PerspectivePair::check_point(const Vec& x, const Vec& y, const char* context) const {
  require_size(x, n_, context);
  require_size(y, m_, context);
}

ExtReal preperspective_eval(const PerspectivePair& pair, const Vec& x, const Vec& y) {
  pair.check_point(x, y, "preperspective_eval");
  const ExtReal s = pair.scaling().eval(y);
  if (s.is_finite() && s.value() > 0.0) return scaled_base(pair.base(), s.value(), x);
  return ExtReal::pos_inf();
}

ExtReal perspective_eval(const PerspectivePair& pair, const Vec& x, const Vec& y) {
  pair.check_point(x, y, "perspective_eval");
  const BaseFunction& phi = pair.base();
  const ScalingFunction& sc = pair.scaling();

  if (pair.sign_class() == ConjugateSignClass::ZeroInftyConjugate) {
    return in_cl_conv_S(sc, y) ? phi.eval(x) : ExtReal::pos_inf();
  }
  const ExtReal s = sc.eval(y);
  if (s.is_finite() && s.value() > 0.0) return scaled_base(phi, s.value(), x);
  if (pair.sign_class() == ConjugateSignClass::NonnegativeConjugate) {
    return s == ExtReal(0.0) ? phi.rec_eval(x) : ExtReal::pos_inf();
  }
  // nonpositive conjugate
  if (!s.is_pos_inf() && in_cl_conv_S(sc, y)) return phi.rec_eval(x);
  return ExtReal::pos_inf();
}

ExtReal linear_perspective_eval(const BaseFunction& phi, const Vec& x, double t) {
  if (!std::isfinite(t)) throw std::domain_error("linear_perspective_eval: t must be finite");
  if (t > 0.0) return scaled_base(phi, t, x);
  if (t == 0.0) return phi.rec_eval(x);
  return ExtReal::pos_inf();
}

ExtReal perspective_conj_eval(const PerspectivePair& pair, const Vec& xstar, const Vec& ystar,
                              double snap_tol) {
  pair.check_point(xstar, ystar, "perspective_conj_eval");
  if (!(snap_tol >= 0.0)) throw std::domain_error("perspective_conj_eval: snap_tol must be >= 0");
  const BaseFunction& phi = pair.base();
  const ScalingFunction& sc = pair.scaling();

  const Vec xs = snapped(xstar, phi.proj_dom_conj(xstar), snap_tol);
  const ExtReal a = phi.conj_eval(xs);
  if (a.is_pos_inf()) return ExtReal::pos_inf();
  const double av = a.value();

  switch (pair.sign_class()) {
    case ConjugateSignClass::ZeroInftyConjugate:
      return support_snapped(sc, ystar, snap_tol);
    case ConjugateSignClass::NonnegativeConjugate:
      if (av <= snap_tol) return support_snapped(sc, ystar, snap_tol);
      return scaled_env_conj(sc, av, ystar, snap_tol);
    case ConjugateSignClass::NonpositiveConjugate:
      if (av >= -snap_tol) return support_snapped(sc, ystar, snap_tol);
      return scaled_env_conj(sc, -av, ystar, snap_tol);
  }
  return ExtReal::pos_inf();
}

ExtReal perspective_fenchel_gap(const PerspectivePair& pair, const Vec& x, const Vec& y,
                                const Vec& xstar, const Vec& ystar, double snap_tol) {
  const ExtReal f = perspective_eval(pair, x, y);
  const ExtReal fc = perspective_conj_eval(pair, xstar, ystar, snap_tol);
  if (f.is_pos_inf() || fc.is_pos_inf()) return ExtReal::pos_inf();
  return f.value() + fc.value() - dot(x, xstar) - dot(y, ystar);
}

double certificate_snap_tol(double gamma, const Vec& x, const Vec& y) {
  return 1e-9 * (1.0 + std::hypot(x.norm(), y.norm()) / gamma);
}

double prox_certificate_gap(const PerspectivePair& pair, double gamma, const Vec& x, const Vec& y,
                            const Vec& p, const Vec& q) {
  if (!(gamma > 0.0)) throw std::domain_error("prox_certificate_gap: gamma must be > 0");
  const ExtReal g = perspective_fenchel_gap(pair, p, q, (x - p) / gamma, (y - q) / gamma,
                                            certificate_snap_tol(gamma, x, y));
  return g.is_pos_inf() ? std::numeric_limits<double>::infinity() : g.value();
}

}  // namespace persp
