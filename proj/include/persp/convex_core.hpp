#pragma once

#include <memory>
#include <string>

#include "persp/ext_real.hpp"
#include "persp/vec.hpp"

namespace persp {

/// Where the conjugate of a base function takes its values. Selects which of
/// the three prox formulas applies to a perspective.
enum class ConjugateSignClass {
  NonnegativeConjugate,  // phi*(H) in [0, +inf], positive somewhere
  ZeroInftyConjugate,    // phi*(H) in {0, +inf}
  NonpositiveConjugate,  // phi*(H) in ]-inf, 0] u {+inf}, negative somewhere
};

/// Which side of the scaling function is convex.
enum class ScalingKind {
  NegSLower,  // -s proper lsc convex; envelope is the lower (negative part) one of -s
  SLower,     // s proper lsc convex; envelope is the upper (positive part) one of s
};

std::string to_string(ConjugateSignClass c);
std::string to_string(ScalingKind k);

/// Scalar proper lsc convex function with a closed-form prox.
class ScalarFunction {
 public:
  virtual ~ScalarFunction() = default;

  virtual ExtReal eval(double t) const = 0;
  /// prox of gamma * f at t, gamma > 0.
  virtual double prox(double gamma, double t) const = 0;
  /// Projection onto the closure of dom f.
  virtual double proj_cl_dom(double t) const = 0;
  /// Conjugate function, when it has a closed form in the catalog.
  virtual std::shared_ptr<const ScalarFunction> conjugate() const { return nullptr; }
  virtual std::string name() const = 0;
};

/// Vector-valued counterpart of ScalarFunction: everything needed to evaluate
/// prox of (gamma (.) f), i.e. prox of gamma*f for gamma > 0 and the projection
/// onto cl dom f for gamma = 0.
class ProxProvider {
 public:
  virtual ~ProxProvider() = default;

  virtual ExtReal eval(const Vec& x) const = 0;
  virtual Vec prox(double gamma, const Vec& x) const = 0;
  virtual Vec proj_cl_dom(const Vec& x) const = 0;
  virtual std::shared_ptr<const ProxProvider> conjugate() const { return nullptr; }
};

/// Base function phi of a perspective. Implementations are immutable.
class BaseFunction {
 public:
  virtual ~BaseFunction() = default;

  virtual ExtReal eval(const Vec& x) const = 0;
  virtual ExtReal conj_eval(const Vec& xstar) const = 0;
  /// prox of gamma * phi, gamma > 0.
  virtual Vec prox(double gamma, const Vec& x) const = 0;
  /// prox of gamma * phi*, gamma > 0.
  virtual Vec prox_conj(double gamma, const Vec& x) const = 0;
  virtual Vec proj_dom(const Vec& x) const = 0;
  virtual Vec proj_dom_conj(const Vec& x) const = 0;
  /// Recession function rec phi.
  virtual ExtReal rec_eval(const Vec& x) const = 0;
  virtual ConjugateSignClass sign_class() const = 0;
  virtual std::string name() const = 0;
};

/// Scaling function s of a perspective, together with the envelope the prox
/// formulas need: the lower envelope of -s when kind() == NegSLower, the
/// upper envelope of s when kind() == SLower. Implementations are immutable.
class ScalingFunction {
 public:
  virtual ~ScalingFunction() = default;

  /// s(y); may be -inf.
  virtual ExtReal eval(const Vec& y) const = 0;
  virtual ScalingKind kind() const = 0;

  virtual ExtReal env_eval(const Vec& y) const = 0;
  /// Conjugate of the envelope.
  virtual ExtReal env_conj_eval(const Vec& ystar) const = 0;
  /// Projection onto the closure of dom (envelope)*.
  virtual Vec proj_cl_dom_env_conj(const Vec& ystar) const = 0;
  /// prox of mu (.) envelope, mu >= 0; mu == 0 projects onto the closure of
  /// the envelope's domain.
  virtual Vec prox_env(double mu, const Vec& y) const = 0;

  /// Projection onto cl S, S = s^{-1}(]0, +inf[).
  virtual Vec proj_cl_S(const Vec& y) const = 0;
  virtual Vec proj_cl_conv_S(const Vec& y) const = 0;
  /// Support function of cl conv S.
  virtual ExtReal support_cl_conv_S(const Vec& ystar) const = 0;
  /// Projection onto the closure of dom sigma_{cl conv S} (the barrier cone).
  virtual Vec proj_cl_dom_support(const Vec& ystar) const = 0;

  virtual std::string name() const = 0;
};

/// f(x) + f*(x*) - <x, x*>; nonnegative for proper f, zero iff x* is a
/// subgradient of f at x.
ExtReal fenchel_young_gap(const BaseFunction& f, const Vec& x, const Vec& xstar);
ExtReal fenchel_young_gap(const ProxProvider& f, const Vec& x, const Vec& xstar);
ExtReal fenchel_young_gap(const ScalarFunction& f, double x, double xstar);

/// Views of a base function as a ProxProvider: phi itself, or phi*. The view
/// holds a reference; the base function must outlive it.
std::shared_ptr<const ProxProvider> primal_view(const BaseFunction& f);
std::shared_ptr<const ProxProvider> conjugate_view(const BaseFunction& f);

/// The scaling function's envelope as a ProxProvider (no conjugate attached).
std::shared_ptr<const ProxProvider> envelope_view(const ScalingFunction& s);

}  // namespace persp
