#pragma once

#include <limits>
#include <memory>
#include <string>
#include <utility>

#include "persp/convex_core.hpp"
#include "persp/radial.hpp"

namespace persp {

// ---------------------------------------------------------------------------
// Scalar building blocks

/// |t|^p / p, p > 1.
class AbsPower final : public ScalarFunction {
 public:
  explicit AbsPower(double p);
  double p() const { return p_; }
  ExtReal eval(double t) const override;
  double prox(double gamma, double t) const override;
  double proj_cl_dom(double t) const override { return t; }
  std::shared_ptr<const ScalarFunction> conjugate() const override;
  std::string name() const override;

 private:
  double p_;
};

/// Huber function: alpha |t| for |t| > alpha, (t^2 + alpha^2) / 2 otherwise.
class Huber final : public ScalarFunction {
 public:
  explicit Huber(double alpha);
  double alpha() const { return alpha_; }
  ExtReal eval(double t) const override;
  double prox(double gamma, double t) const override;
  double proj_cl_dom(double t) const override { return t; }
  std::shared_ptr<const ScalarFunction> conjugate() const override;
  std::string name() const override;

 private:
  double alpha_;
};

/// (t^2 - alpha^2) / 2 on [-alpha, alpha], +inf outside.
class HuberConjugate final : public ScalarFunction {
 public:
  explicit HuberConjugate(double alpha);
  ExtReal eval(double t) const override;
  double prox(double gamma, double t) const override;
  double proj_cl_dom(double t) const override;
  std::shared_ptr<const ScalarFunction> conjugate() const override;
  std::string name() const override;

 private:
  double alpha_;
};

/// c |t|, c >= 0.
class AbsValue final : public ScalarFunction {
 public:
  explicit AbsValue(double c = 1.0);
  ExtReal eval(double t) const override;
  double prox(double gamma, double t) const override;
  double proj_cl_dom(double t) const override { return t; }
  std::shared_ptr<const ScalarFunction> conjugate() const override;
  std::string name() const override;

 private:
  double c_;
};

/// Indicator of [lo, hi]; bounds may be infinite. Membership allows a few
/// ulps of slack so that projections evaluate to 0.
class IntervalIndicator final : public ScalarFunction {
 public:
  IntervalIndicator(double lo, double hi);
  ExtReal eval(double t) const override;
  double prox(double, double t) const override { return proj_cl_dom(t); }
  double proj_cl_dom(double t) const override;
  /// Available for symmetric finite intervals only.
  std::shared_ptr<const ScalarFunction> conjugate() const override;
  std::string name() const override;

 private:
  double lo_, hi_;
};

// ---------------------------------------------------------------------------
// Base functions, all radial: phi = phi1d o ||.||

class RadialBase : public BaseFunction {
 public:
  ExtReal eval(const Vec& x) const override { return phi_.eval(x); }
  ExtReal conj_eval(const Vec& xstar) const override { return conj_.eval(xstar); }
  Vec prox(double gamma, const Vec& x) const override { return phi_.prox(gamma, x); }
  Vec prox_conj(double gamma, const Vec& x) const override { return conj_.prox(gamma, x); }
  Vec proj_dom(const Vec& x) const override { return phi_.proj_cl_dom(x); }
  Vec proj_dom_conj(const Vec& x) const override { return conj_.proj_cl_dom(x); }

  const RadialFunction& primal() const { return phi_; }
  const RadialFunction& dual() const { return conj_; }

 protected:
  explicit RadialBase(std::shared_ptr<const ScalarFunction> profile);

 private:
  RadialFunction phi_;
  RadialFunction conj_;
};

/// ||.||^p / p; conjugate ||.||^{p*} / p*; rec = indicator of {0}.
class PowerBase final : public RadialBase {
 public:
  explicit PowerBase(double p);
  double p() const { return p_; }
  double pstar() const { return p_ / (p_ - 1.0); }
  ExtReal rec_eval(const Vec& x) const override;
  ConjugateSignClass sign_class() const override {
    return ConjugateSignClass::NonnegativeConjugate;
  }
  std::string name() const override;

 private:
  double p_;
};

/// Huber function of ||.||; conjugate supported on the alpha-ball; rec = alpha ||.||.
class HuberBase final : public RadialBase {
 public:
  explicit HuberBase(double alpha);
  double alpha() const { return alpha_; }
  ExtReal rec_eval(const Vec& x) const override;
  ConjugateSignClass sign_class() const override {
    return ConjugateSignClass::NonpositiveConjugate;
  }
  std::string name() const override;

 private:
  double alpha_;
};

/// ||.||; conjugate = indicator of the unit ball; rec = ||.||.
class AbsBase final : public RadialBase {
 public:
  AbsBase();
  ExtReal rec_eval(const Vec& x) const override;
  ConjugateSignClass sign_class() const override { return ConjugateSignClass::ZeroInftyConjugate; }
  std::string name() const override { return "abs"; }
};

// ---------------------------------------------------------------------------
// Scaling functions

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// s(y) = y^q on I = [0, hi], -inf elsewhere (scalar y), 0 < q < 1, hi in ]0, +inf].
/// -s is convex and its lower envelope is -s itself; cl S = I.
class RootScaling final : public ScalingFunction {
 public:
  RootScaling(double q, double hi = kInf);
  double q() const { return q_; }
  double hi() const { return hi_; }

  ExtReal eval(const Vec& y) const override;
  ScalingKind kind() const override { return ScalingKind::NegSLower; }
  ExtReal env_eval(const Vec& y) const override;
  ExtReal env_conj_eval(const Vec& ystar) const override;
  Vec proj_cl_dom_env_conj(const Vec& ystar) const override;
  Vec prox_env(double mu, const Vec& y) const override;
  Vec proj_cl_S(const Vec& y) const override;
  Vec proj_cl_conv_S(const Vec& y) const override { return proj_cl_S(y); }
  ExtReal support_cl_conv_S(const Vec& ystar) const override;
  Vec proj_cl_dom_support(const Vec& ystar) const override;
  std::string name() const override;

 private:
  double q_, hi_;
};

/// s(y) = y on I = [lo, hi] (0 <= lo <= hi, hi > 0), -inf elsewhere.
/// With I = [0, +inf[ this yields the classical perspective.
class IdentityIntervalScaling final : public ScalingFunction {
 public:
  IdentityIntervalScaling(double lo = 0.0, double hi = kInf);
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  ExtReal eval(const Vec& y) const override;
  ScalingKind kind() const override { return ScalingKind::NegSLower; }
  ExtReal env_eval(const Vec& y) const override;
  ExtReal env_conj_eval(const Vec& ystar) const override;
  Vec proj_cl_dom_env_conj(const Vec& ystar) const override;
  Vec prox_env(double mu, const Vec& y) const override;
  Vec proj_cl_S(const Vec& y) const override;
  Vec proj_cl_conv_S(const Vec& y) const override { return proj_cl_S(y); }
  ExtReal support_cl_conv_S(const Vec& ystar) const override;
  Vec proj_cl_dom_support(const Vec& ystar) const override;
  std::string name() const override;

 private:
  double lo_, hi_;
};

/// s(y) = sqrt(beta + ||y||^2), beta > 0; convex, its own upper envelope;
/// cl conv S is the whole space.
class SqrtScaling final : public ScalingFunction {
 public:
  explicit SqrtScaling(double beta);
  double beta() const { return beta_; }

  ExtReal eval(const Vec& y) const override;
  ScalingKind kind() const override { return ScalingKind::SLower; }
  ExtReal env_eval(const Vec& y) const override { return eval(y); }
  ExtReal env_conj_eval(const Vec& ystar) const override;
  Vec proj_cl_dom_env_conj(const Vec& ystar) const override;
  Vec prox_env(double mu, const Vec& y) const override;
  Vec proj_cl_S(const Vec& y) const override { return y; }
  Vec proj_cl_conv_S(const Vec& y) const override { return y; }
  ExtReal support_cl_conv_S(const Vec& ystar) const override;
  Vec proj_cl_dom_support(const Vec& ystar) const override { return Vec::zeros(ystar.size()); }
  std::string name() const override;

 private:
  double beta_;
};

// ---------------------------------------------------------------------------
// Specialized closed forms, kept as cross-checks for the generic solver

/// prox of gamma * (Huber_alpha perspective sqrt(beta + y^2)) at (x, y):
/// the shrinkage branch when ||x|| >= alpha (sqrt(beta + y^2) + gamma),
/// otherwise the scale fixed point solved by bisection.
std::pair<Vec, double> closed_form_huber_prox(double alpha, double beta, double gamma,
                                              const Vec& x, double y);

struct PowerRootClosedForm {
  Vec p;
  double q = 0.0;           // proj_I of the scalar prox at the fixed point
  double q_from_eta = 0.0;  // eta^(1/q) from the fixed-point relation
  double eta = 0.0;
};

/// prox of gamma * (|.|^p / p perspective (y^q on [0, hi])) at (x, y), via the
/// scalar fixed point eta = min(z(rho(eta)^{p*} / p*), hi)^q solved by bisection.
PowerRootClosedForm closed_form_power_root_prox(double p, double q, double hi, double gamma,
                                                const Vec& x, double y);

}  // namespace persp
