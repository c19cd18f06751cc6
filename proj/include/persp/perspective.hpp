#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>

#include "persp/convex_core.hpp"

namespace persp {

class IncompatiblePairError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Whether a base sign class and a scaling kind fall under one of the three
/// cases of the prox formula.
bool compatible(ConjugateSignClass c, ScalingKind k);

/// Base function phi on R^n with scaling function s on R^m. Construction
/// rejects sign-class / scaling-kind combinations with no prox formula.
class PerspectivePair {
 public:
  PerspectivePair(std::shared_ptr<const BaseFunction> base,
                  std::shared_ptr<const ScalingFunction> scaling, std::size_t n, std::size_t m);

  const BaseFunction& base() const { return *base_; }
  const ScalingFunction& scaling() const { return *scaling_; }
  std::shared_ptr<const BaseFunction> base_ptr() const { return base_; }
  std::shared_ptr<const ScalingFunction> scaling_ptr() const { return scaling_; }
  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  ConjugateSignClass sign_class() const { return base_->sign_class(); }

  void check_point(const Vec& x, const Vec& y, const char* context) const;

 private:
  std::shared_ptr<const BaseFunction> base_;
  std::shared_ptr<const ScalingFunction> scaling_;
  std::size_t n_, m_;
};

/// s(y) phi(x / s(y)) where 0 < s(y) < +inf, +inf elsewhere.
ExtReal preperspective_eval(const PerspectivePair& pair, const Vec& x, const Vec& y);

/// The perspective: the lsc convex hull of the preperspective, through the
/// closed form for the pair's sign class.
ExtReal perspective_eval(const PerspectivePair& pair, const Vec& x, const Vec& y);

/// t phi(x / t) for t > 0, (rec phi)(x) at t = 0, +inf for t < 0.
ExtReal linear_perspective_eval(const BaseFunction& phi, const Vec& x, double t);

/// Conjugate of the perspective at (x*, y*).
///
/// With snap_tol > 0, points within snap_tol of the closed domains involved
/// are evaluated at their projections and |phi*(x*)| <= snap_tol counts as
/// phi*(x*) = 0. This keeps round-off in a computed dual point from turning a
/// finite value into +inf; snap_tol = 0 gives the exact formula.
ExtReal perspective_conj_eval(const PerspectivePair& pair, const Vec& xstar, const Vec& ystar,
                              double snap_tol = 0.0);

/// (phi>s)(x,y) + (phi>s)*(x*,y*) - <x,x*> - <y,y*>.
ExtReal perspective_fenchel_gap(const PerspectivePair& pair, const Vec& x, const Vec& y,
                                const Vec& xstar, const Vec& ystar, double snap_tol = 0.0);

/// Default snap tolerance for checking a prox output computed from (x, y).
double certificate_snap_tol(double gamma, const Vec& x, const Vec& y);

/// Fenchel gap at (p, q) against the dual point ((x - p)/gamma, (y - q)/gamma).
/// Zero exactly when (p, q) is the prox of gamma (phi>s) at (x, y).
double prox_certificate_gap(const PerspectivePair& pair, double gamma, const Vec& x, const Vec& y,
                            const Vec& p, const Vec& q);

}  // namespace persp
