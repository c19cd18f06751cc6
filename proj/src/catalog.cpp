#include "persp/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "persp/scalar_solvers.hpp"

namespace persp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// t <= bound up to a few ulps of the bound
bool below(double t, double bound) {
  return t <= bound + 8.0 * kEps * std::max(std::abs(bound), std::numeric_limits<double>::min());
}

bool above(double t, double bound) { return -t <= -bound + 8.0 * kEps * std::abs(bound); }

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(what);
}

double scalar_of(const Vec& y, const char* context) {
  require_size(y, 1, context);
  return y[0];
}

// Root of an increasing f on [lo, hi] with f(lo) <= 0 <= f(hi), to the last bit.
template <class F>
double bisect_increasing(F&& f, double lo, double hi) {
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

// --- AbsPower

AbsPower::AbsPower(double p) : p_(p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("AbsPower: p must be > 1");
}

ExtReal AbsPower::eval(double t) const { return std::pow(std::abs(t), p_) / p_; }

double AbsPower::prox(double gamma, double t) const {
  return std::copysign(power_prox(p_, gamma, std::abs(t)), t);
}

std::shared_ptr<const ScalarFunction> AbsPower::conjugate() const {
  return std::make_shared<AbsPower>(p_ / (p_ - 1.0));
}

std::string AbsPower::name() const { return "abs_power(" + fmt(p_) + ")"; }

// --- Huber

Huber::Huber(double alpha) : alpha_(alpha) { require_positive(alpha, "Huber: alpha must be > 0"); }

ExtReal Huber::eval(double t) const {
  const double a = std::abs(t);
  return a > alpha_ ? alpha_ * a : 0.5 * (a * a + alpha_ * alpha_);
}

double Huber::prox(double gamma, double t) const { return huber_prox(alpha_, gamma, t); }

std::shared_ptr<const ScalarFunction> Huber::conjugate() const {
  return std::make_shared<HuberConjugate>(alpha_);
}

std::string Huber::name() const { return "huber(" + fmt(alpha_) + ")"; }

HuberConjugate::HuberConjugate(double alpha) : alpha_(alpha) {
  require_positive(alpha, "HuberConjugate: alpha must be > 0");
}

ExtReal HuberConjugate::eval(double t) const {
  const double a = std::abs(t);
  if (!below(a, alpha_)) return ExtReal::pos_inf();
  return 0.5 * (std::min(a, alpha_) - alpha_) * (std::min(a, alpha_) + alpha_);
}

double HuberConjugate::prox(double gamma, double t) const {
  return huber_prox_conj(alpha_, gamma, t);
}

double HuberConjugate::proj_cl_dom(double t) const { return std::clamp(t, -alpha_, alpha_); }

std::shared_ptr<const ScalarFunction> HuberConjugate::conjugate() const {
  return std::make_shared<Huber>(alpha_);
}

std::string HuberConjugate::name() const { return "huber_conj(" + fmt(alpha_) + ")"; }

// --- AbsValue / IntervalIndicator

AbsValue::AbsValue(double c) : c_(c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("AbsValue: c must be >= 0");
}

ExtReal AbsValue::eval(double t) const { return c_ * std::abs(t); }

double AbsValue::prox(double gamma, double t) const {
  const double a = std::abs(t) - gamma * c_;
  return a > 0.0 ? std::copysign(a, t) : 0.0;
}

std::shared_ptr<const ScalarFunction> AbsValue::conjugate() const {
  return std::make_shared<IntervalIndicator>(-c_, c_);
}

std::string AbsValue::name() const { return "abs(" + fmt(c_) + ")"; }

IntervalIndicator::IntervalIndicator(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi || lo == kInf || hi == -kInf) {
    throw std::invalid_argument("IntervalIndicator: need lo <= hi with a nonempty interval");
  }
}

ExtReal IntervalIndicator::eval(double t) const {
  return above(t, lo_) && below(t, hi_) ? ExtReal(0.0) : ExtReal::pos_inf();
}

double IntervalIndicator::proj_cl_dom(double t) const { return std::clamp(t, lo_, hi_); }

std::shared_ptr<const ScalarFunction> IntervalIndicator::conjugate() const {
  if (lo_ != -hi_ || !std::isfinite(hi_)) return nullptr;
  return std::make_shared<AbsValue>(hi_);
}

std::string IntervalIndicator::name() const {
  return "indicator[" + fmt(lo_) + "," + fmt(hi_) + "]";
}

// --- bases

namespace {
std::shared_ptr<const ScalarFunction> conjugate_of(const std::shared_ptr<const ScalarFunction>& f) {
  auto c = f->conjugate();
  if (!c) throw std::logic_error("RadialBase: profile has no closed-form conjugate");
  return c;
}
}  // namespace

RadialBase::RadialBase(std::shared_ptr<const ScalarFunction> profile)
    : phi_(profile), conj_(conjugate_of(profile)) {}

PowerBase::PowerBase(double p) : RadialBase(std::make_shared<AbsPower>(p)), p_(p) {}

ExtReal PowerBase::rec_eval(const Vec& x) const {
  return x.is_zero() ? ExtReal(0.0) : ExtReal::pos_inf();
}

std::string PowerBase::name() const { return "power(" + fmt(p_) + ")"; }

HuberBase::HuberBase(double alpha) : RadialBase(std::make_shared<Huber>(alpha)), alpha_(alpha) {}

ExtReal HuberBase::rec_eval(const Vec& x) const { return alpha_ * x.norm(); }

std::string HuberBase::name() const { return "huber(" + fmt(alpha_) + ")"; }

AbsBase::AbsBase() : RadialBase(std::make_shared<AbsValue>(1.0)) {}

ExtReal AbsBase::rec_eval(const Vec& x) const { return x.norm(); }

// --- RootScaling

RootScaling::RootScaling(double q, double hi) : q_(q), hi_(hi) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("RootScaling: q must lie in ]0,1[");
  if (!(hi > 0.0)) throw std::invalid_argument("RootScaling: interval must be [0, hi] with hi > 0");
}

ExtReal RootScaling::eval(const Vec& y) const {
  const double t = scalar_of(y, "RootScaling::eval");
  if (t < 0.0 || t > hi_) return ExtReal::neg_inf();
  return std::pow(t, q_);
}

ExtReal RootScaling::env_eval(const Vec& y) const {
  const double t = scalar_of(y, "RootScaling::env_eval");
  if (t < 0.0 || t > hi_) return ExtReal::pos_inf();
  return -std::pow(t, q_);
}

ExtReal RootScaling::env_conj_eval(const Vec& ystar) const {
  // sup over y in [0, hi] of t y + y^q
  const double t = scalar_of(ystar, "RootScaling::env_conj_eval");
  if (t >= 0.0) {
    if (!std::isfinite(hi_)) return ExtReal::pos_inf();
    return t * hi_ + std::pow(hi_, q_);
  }
  const double y_opt = std::pow(q_ / -t, 1.0 / (1.0 - q_));
  if (y_opt >= hi_) return t * hi_ + std::pow(hi_, q_);
  // at the unconstrained maximizer t y = -q y^q
  return (1.0 - q_) * std::pow(y_opt, q_);
}

Vec RootScaling::proj_cl_dom_env_conj(const Vec& ystar) const {
  const double t = scalar_of(ystar, "RootScaling::proj_cl_dom_env_conj");
  return Vec{std::isfinite(hi_) ? t : std::min(t, 0.0)};
}

Vec RootScaling::prox_env(double mu, const Vec& y) const {
  const double t = scalar_of(y, "RootScaling::prox_env");
  if (!(mu >= 0.0)) throw std::domain_error("RootScaling::prox_env: mu must be >= 0");
  return Vec{std::clamp(root_scaling_prox_neg(mu, 1.0, q_, t), 0.0, hi_)};
}

Vec RootScaling::proj_cl_S(const Vec& y) const {
  return Vec{std::clamp(scalar_of(y, "RootScaling::proj_cl_S"), 0.0, hi_)};
}

ExtReal RootScaling::support_cl_conv_S(const Vec& ystar) const {
  const double t = scalar_of(ystar, "RootScaling::support_cl_conv_S");
  if (t <= 0.0) return 0.0;
  return std::isfinite(hi_) ? ExtReal(t * hi_) : ExtReal::pos_inf();
}

Vec RootScaling::proj_cl_dom_support(const Vec& ystar) const {
  const double t = scalar_of(ystar, "RootScaling::proj_cl_dom_support");
  return Vec{std::isfinite(hi_) ? t : std::min(t, 0.0)};
}

std::string RootScaling::name() const {
  return "root(" + fmt(q_) + ", [0," + fmt(hi_) + "])";
}

// --- IdentityIntervalScaling

IdentityIntervalScaling::IdentityIntervalScaling(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(lo >= 0.0 && std::isfinite(lo) && hi >= lo && hi > 0.0)) {
    throw std::invalid_argument("IdentityIntervalScaling: need 0 <= lo <= hi, hi > 0");
  }
}

ExtReal IdentityIntervalScaling::eval(const Vec& y) const {
  const double t = scalar_of(y, "IdentityIntervalScaling::eval");
  return t < lo_ || t > hi_ ? ExtReal::neg_inf() : ExtReal(t);
}

ExtReal IdentityIntervalScaling::env_eval(const Vec& y) const {
  const double t = scalar_of(y, "IdentityIntervalScaling::env_eval");
  return t < lo_ || t > hi_ ? ExtReal::pos_inf() : ExtReal(-t);
}

ExtReal IdentityIntervalScaling::env_conj_eval(const Vec& ystar) const {
  // sup over y in [lo, hi] of (t + 1) y
  const double w = scalar_of(ystar, "IdentityIntervalScaling::env_conj_eval") + 1.0;
  if (w > 0.0) return std::isfinite(hi_) ? ExtReal(w * hi_) : ExtReal::pos_inf();
  return w * lo_;
}

Vec IdentityIntervalScaling::proj_cl_dom_env_conj(const Vec& ystar) const {
  const double t = scalar_of(ystar, "IdentityIntervalScaling::proj_cl_dom_env_conj");
  return Vec{std::isfinite(hi_) ? t : std::min(t, -1.0)};
}

Vec IdentityIntervalScaling::prox_env(double mu, const Vec& y) const {
  if (!(mu >= 0.0)) throw std::domain_error("IdentityIntervalScaling::prox_env: mu must be >= 0");
  return Vec{std::clamp(scalar_of(y, "IdentityIntervalScaling::prox_env") + mu, lo_, hi_)};
}

Vec IdentityIntervalScaling::proj_cl_S(const Vec& y) const {
  return Vec{std::clamp(scalar_of(y, "IdentityIntervalScaling::proj_cl_S"), lo_, hi_)};
}

ExtReal IdentityIntervalScaling::support_cl_conv_S(const Vec& ystar) const {
  const double t = scalar_of(ystar, "IdentityIntervalScaling::support_cl_conv_S");
  if (t > 0.0) return std::isfinite(hi_) ? ExtReal(t * hi_) : ExtReal::pos_inf();
  return t * lo_;
}

Vec IdentityIntervalScaling::proj_cl_dom_support(const Vec& ystar) const {
  const double t = scalar_of(ystar, "IdentityIntervalScaling::proj_cl_dom_support");
  return Vec{std::isfinite(hi_) ? t : std::min(t, 0.0)};
}

std::string IdentityIntervalScaling::name() const {
  return "identity-interval([" + fmt(lo_) + "," + fmt(hi_) + "])";
}

// --- SqrtScaling

SqrtScaling::SqrtScaling(double beta) : beta_(beta) {
  require_positive(beta, "SqrtScaling: beta must be > 0");
}

ExtReal SqrtScaling::eval(const Vec& y) const { return std::sqrt(beta_ + y.squared_norm()); }

ExtReal SqrtScaling::env_conj_eval(const Vec& ystar) const {
  const double n = ystar.norm();
  if (!below(n, 1.0)) return ExtReal::pos_inf();
  const double r = std::min(n, 1.0);
  return -std::sqrt(beta_ * (1.0 - r) * (1.0 + r));
}

Vec SqrtScaling::proj_cl_dom_env_conj(const Vec& ystar) const {
  const double n = ystar.norm();
  return n <= 1.0 ? ystar : ystar / n;
}

Vec SqrtScaling::prox_env(double mu, const Vec& y) const {
  if (!(mu >= 0.0)) throw std::domain_error("SqrtScaling::prox_env: mu must be >= 0");
  if (mu == 0.0) return y;
  if (y.size() == 1) return Vec{sqrt_scaling_prox(beta_, mu, y[0])};
  return along_ray(y, sqrt_scaling_prox(beta_, mu, y.norm()));
}

ExtReal SqrtScaling::support_cl_conv_S(const Vec& ystar) const {
  return ystar.is_zero() ? ExtReal(0.0) : ExtReal::pos_inf();
}

std::string SqrtScaling::name() const { return "sqrt(" + fmt(beta_) + ")"; }

// --- closed forms

std::pair<Vec, double> closed_form_huber_prox(double alpha, double beta, double gamma,
                                              const Vec& x, double y) {
  require_positive(alpha, "closed_form_huber_prox: alpha must be > 0");
  require_positive(beta, "closed_form_huber_prox: beta must be > 0");
  require_positive(gamma, "closed_form_huber_prox: gamma must be > 0");
  const double nx = x.norm();
  if (nx >= alpha * (std::sqrt(beta + y * y) + gamma)) {
    return {(1.0 - alpha * gamma / nx) * x, y};
  }
  auto q_of = [&](double eta) { return sqrt_scaling_prox(beta, gamma * eta, y); };
  auto residual = [&](double eta) {
    const double q = q_of(eta);
    const double d = gamma + std::sqrt(beta + q * q);
    return eta - (alpha * alpha * d * d - nx * nx) / (2.0 * d * d);
  };
  const double eta = bisect_increasing(residual, 0.0, 0.5 * alpha * alpha);
  const double q = q_of(eta);
  const double sq = std::sqrt(beta + q * q);
  return {(sq / (gamma + sq)) * x, q};
}

PowerRootClosedForm closed_form_power_root_prox(double p, double q, double hi, double gamma,
                                                const Vec& x, double y) {
  require_positive(gamma, "closed_form_power_root_prox: gamma must be > 0");
  if (!(p > 1.0)) throw std::invalid_argument("closed_form_power_root_prox: p must be > 1");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("closed_form_power_root_prox: q in ]0,1[");
  if (!(hi > 0.0)) throw std::invalid_argument("closed_form_power_root_prox: hi must be > 0");

  const double nx = x.norm();
  if (nx == 0.0) {
    const double qy = std::clamp(y, 0.0, hi);
    return {Vec::zeros(x.size()), qy, qy, std::pow(qy, q)};
  }
  const double pstar = p / (p - 1.0);
  auto rho = [&](double eta) { return power_prox_conj(p, gamma, eta, nx); };
  auto z_of = [&](double eta) {
    return root_scaling_prox_neg(std::pow(rho(eta), pstar) / pstar, gamma, q, y);
  };
  auto residual = [&](double eta) { return eta - std::pow(std::min(z_of(eta), hi), q); };

  double upper = std::isfinite(hi) ? std::pow(hi, q) : 1.0;
  while (residual(upper) < 0.0) upper *= 2.0;
  const double eta = bisect_increasing(residual, 0.0, upper);

  PowerRootClosedForm out;
  out.eta = eta;
  out.p = (1.0 - gamma * rho(eta) / nx) * x;
  out.q = std::min(z_of(eta), hi);
  out.q_from_eta = std::pow(eta, 1.0 / q);
  return out;
}

}  // namespace persp
