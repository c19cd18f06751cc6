#include "persp/convex_core.hpp"

#include <stdexcept>

namespace persp {

std::string to_string(ConjugateSignClass c) {
  switch (c) {
    case ConjugateSignClass::NonnegativeConjugate: return "NonnegativeConjugate";
    case ConjugateSignClass::ZeroInftyConjugate: return "ZeroInftyConjugate";
    case ConjugateSignClass::NonpositiveConjugate: return "NonpositiveConjugate";
  }
  return "?";
}

std::string to_string(ScalingKind k) {
  return k == ScalingKind::NegSLower ? "NegSLower" : "SLower";
}

namespace {

ExtReal gap_from_values(ExtReal fx, ExtReal fstar, double inner) {
  if (fx.is_pos_inf() || fstar.is_pos_inf()) return ExtReal::pos_inf();
  return ExtReal(fx.value() + fstar.value() - inner);
}

class BaseView final : public ProxProvider {
 public:
  BaseView(const BaseFunction& f, bool conj) : f_(f), conj_(conj) {}

  ExtReal eval(const Vec& x) const override { return conj_ ? f_.conj_eval(x) : f_.eval(x); }
  Vec prox(double gamma, const Vec& x) const override {
    return conj_ ? f_.prox_conj(gamma, x) : f_.prox(gamma, x);
  }
  Vec proj_cl_dom(const Vec& x) const override {
    return conj_ ? f_.proj_dom_conj(x) : f_.proj_dom(x);
  }
  std::shared_ptr<const ProxProvider> conjugate() const override {
    return std::make_shared<BaseView>(f_, !conj_);
  }

 private:
  const BaseFunction& f_;
  bool conj_;
};

class EnvelopeView final : public ProxProvider {
 public:
  explicit EnvelopeView(const ScalingFunction& s) : s_(s) {}

  ExtReal eval(const Vec& y) const override { return s_.env_eval(y); }
  Vec prox(double gamma, const Vec& y) const override { return s_.prox_env(gamma, y); }
  Vec proj_cl_dom(const Vec& y) const override { return s_.prox_env(0.0, y); }

 private:
  const ScalingFunction& s_;
};

}  // namespace

ExtReal fenchel_young_gap(const BaseFunction& f, const Vec& x, const Vec& xstar) {
  require_same_size(x, xstar, "fenchel_young_gap");
  return gap_from_values(f.eval(x), f.conj_eval(xstar), dot(x, xstar));
}

ExtReal fenchel_young_gap(const ProxProvider& f, const Vec& x, const Vec& xstar) {
  require_same_size(x, xstar, "fenchel_young_gap");
  auto conj = f.conjugate();
  if (!conj) throw std::invalid_argument("fenchel_young_gap: conjugate unavailable");
  return gap_from_values(f.eval(x), conj->eval(xstar), dot(x, xstar));
}

ExtReal fenchel_young_gap(const ScalarFunction& f, double x, double xstar) {
  auto conj = f.conjugate();
  if (!conj) throw std::invalid_argument("fenchel_young_gap: conjugate unavailable");
  return gap_from_values(f.eval(x), conj->eval(xstar), x * xstar);
}

std::shared_ptr<const ProxProvider> primal_view(const BaseFunction& f) {
  return std::make_shared<BaseView>(f, false);
}

std::shared_ptr<const ProxProvider> conjugate_view(const BaseFunction& f) {
  return std::make_shared<BaseView>(f, true);
}

std::shared_ptr<const ProxProvider> envelope_view(const ScalingFunction& s) {
  return std::make_shared<EnvelopeView>(s);
}

}  // namespace persp
