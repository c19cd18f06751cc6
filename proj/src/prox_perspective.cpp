#include "persp/prox_perspective.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace persp {

std::string to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::Omega1: return "Omega1";
    case CaseLabel::Omega2: return "Omega2";
    case CaseLabel::Omega3: return "Omega3";
    case CaseLabel::Omega4: return "Omega4";
    case CaseLabel::Xi1: return "Xi1";
    case CaseLabel::Xi2: return "Xi2";
    case CaseLabel::Xi3: return "Xi3";
    case CaseLabel::Xi4: return "Xi4";
    case CaseLabel::CaseII: return "CaseII";
  }
  return "?";
}

void RootConfig::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(eta_tol) || !positive(residual_tol) || !positive(classify_tol) || max_iter <= 0) {
    throw std::invalid_argument("RootConfig: tolerances and max_iter must be positive");
  }
  if (initial_hi && !positive(*initial_hi)) {
    throw std::invalid_argument("RootConfig: initial_hi must be positive");
  }
}

namespace {

// The pieces shared by the formulas, with u = x / gamma.
class Ingredients {
 public:
  Ingredients(const PerspectivePair& pair, double gamma, const Vec& x, const Vec& y)
      : phi_(pair.base()), s_(pair.scaling()), gamma_(gamma), u_(x / gamma), y_(y),
        scale_(u_.norm() + y.norm()) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
      throw std::domain_error("prox_perspective: gamma must be a finite value > 0");
    }
    pair.check_point(x, y, "prox_perspective");
  }

  // prox of (w (.) phi*) at u
  Vec conj_prox(double w) const { return w == 0.0 ? phi_.proj_dom_conj(u_) : phi_.prox_conj(w, u_); }
  double conj_value(const Vec& v) const { return phi_.conj_eval(v).value(); }

  // prox of (mu (.) e) at y, e the envelope of the scaling
  Vec env_prox(double mu) const { return s_.prox_env(mu, y_); }
  double env_value(const Vec& v) const { return s_.env_eval(v).value(); }
  double s_value(const Vec& v) const { return s_.eval(v).value(); }

  // x - gamma v, exact when v reproduces u
  Vec p_from(const Vec& v) const { return gamma_ * (u_ - v); }

  bool is_zero(double v, const RootConfig& cfg) const {
    return std::abs(v) <= cfg.classify_tol * (1.0 + scale_);
  }

  double gamma() const { return gamma_; }
  const Vec& y() const { return y_; }
  const ScalingFunction& scaling() const { return s_; }

  // Nonnegative conjugate: T(eta) = phi1(phi2(eta)) + eta.
  double phi2(double eta) const { return std::max(0.0, conj_value(conj_prox(eta / gamma_))); }
  double phi1(double mu) const { return env_value(env_prox(gamma_ * mu)); }
  double t_case_i(double eta) const { return phi1(phi2(eta)) + eta; }

  // Nonpositive conjugate: T(eta) = psi1(psi2(eta)) + eta.
  double psi2(double eta) const { return std::max(0.0, env_value(env_prox(gamma_ * eta))); }
  double psi1(double mu) const { return conj_value(conj_prox(mu / gamma_)); }
  double t_case_iii(double eta) const { return psi1(psi2(eta)) + eta; }

 private:
  const BaseFunction& phi_;
  const ScalingFunction& s_;
  double gamma_;
  Vec u_;
  Vec y_;
  double scale_;
};

void require_class(const PerspectivePair& pair, ConjugateSignClass c, const char* context) {
  if (pair.sign_class() != c) {
    throw std::invalid_argument(std::string(context) + ": pair has sign class " +
                                to_string(pair.sign_class()));
  }
}

EtaSolution solve_eta(const std::function<double(double)>& T, const RootConfig& cfg,
                      std::vector<RootStep>* trace) {
  cfg.validate();
  const double t0 = T(0.0);
  if (!std::isfinite(t0)) throw SolverError("eta search: T(0) is not finite", 0.0, 0.0, t0);
  if (t0 >= 0.0) return {0.0, 0, t0, 0.0};

  double lo = 0.0, t_lo = t0;
  double hi = cfg.initial_hi.value_or(std::max(1.0, -t0) + cfg.eta_tol);
  const double first_hi = hi;
  double t_hi = T(hi);
  for (int doublings = 0; t_hi < 0.0; ++doublings) {
    if (doublings > 200 || !std::isfinite(hi)) {
      throw SolverError("eta search: could not bracket the root", lo, hi, t_hi);
    }
    lo = hi;
    t_lo = t_hi;
    hi *= 2.0;
    t_hi = T(hi);
  }
  if (std::isnan(t_hi)) throw SolverError("eta search: NaN at bracket end", lo, hi, t_hi);

  MonotoneRootOptions opts;
  opts.x_tol = cfg.eta_tol;
  opts.residual_tol = cfg.residual_tol;
  opts.max_iter = cfg.max_iter;
  try {
    const MonotoneRootResult r = monotone_root(T, lo, t_lo, hi, t_hi, opts, trace);
    return {r.root, r.iterations, r.residual, first_hi};
  } catch (const RootFindingError& e) {
    throw SolverError(std::string("eta search: ") + e.what(), e.lo(), e.hi(), e.residual());
  }
}

ProxResult finish(const PerspectivePair& pair, double gamma, const Vec& x, const Vec& y,
                  ProxResult r) {
  r.certificate_gap = prox_certificate_gap(pair, gamma, x, y, r.p, r.q);
  return r;
}

}  // namespace

double root_function(const PerspectivePair& pair, double gamma, const Vec& x, const Vec& y,
                     double eta) {
  const Ingredients in(pair, gamma, x, y);
  switch (pair.sign_class()) {
    case ConjugateSignClass::NonnegativeConjugate: return in.t_case_i(eta);
    case ConjugateSignClass::NonpositiveConjugate: return in.t_case_iii(eta);
    case ConjugateSignClass::ZeroInftyConjugate: break;
  }
  throw std::invalid_argument("root_function: no root search for a {0,+inf}-valued conjugate");
}

CaseLabel classify_case_i(const PerspectivePair& pair, double gamma, const Vec& x, const Vec& y,
                          const RootConfig& cfg) {
  require_class(pair, ConjugateSignClass::NonnegativeConjugate, "classify_case_i");
  cfg.validate();
  const Ingredients in(pair, gamma, x, y);
  const double a0 = in.conj_value(in.conj_prox(0.0));
  const double b0 = in.s_value(in.scaling().proj_cl_S(y));
  // a0 = +inf (boundary of dom phi*) falls through to the root search
  const bool a0_zero = std::isfinite(a0) && in.is_zero(a0, cfg);
  const bool b0_zero = std::isfinite(b0) && in.is_zero(b0, cfg);
  if (a0_zero && b0_zero) return CaseLabel::Omega1;
  if (std::isfinite(a0) && !a0_zero && a0 > 0.0 &&
      in.is_zero(in.s_value(in.env_prox(gamma * a0)), cfg)) {
    return CaseLabel::Omega2;
  }
  if (std::isfinite(b0) && !b0_zero && b0 > 0.0) {
    const double c = in.conj_value(in.conj_prox(b0 / gamma));
    if (std::isfinite(c) && in.is_zero(c, cfg)) return CaseLabel::Omega3;
  }
  return CaseLabel::Omega4;
}

CaseLabel classify_case_iii(const PerspectivePair& pair, double gamma, const Vec& x, const Vec& y,
                            const RootConfig& cfg) {
  require_class(pair, ConjugateSignClass::NonpositiveConjugate, "classify_case_iii");
  cfg.validate();
  const Ingredients in(pair, gamma, x, y);
  const double c0 = in.env_value(in.scaling().proj_cl_conv_S(y));
  const double d0 = in.conj_value(in.conj_prox(0.0));
  const bool c0_zero = std::isfinite(c0) && in.is_zero(c0, cfg);
  const bool d0_zero = std::isfinite(d0) && in.is_zero(d0, cfg);
  if (c0_zero && d0_zero) return CaseLabel::Xi1;
  if (std::isfinite(c0) && !c0_zero && c0 > 0.0) {
    const double v = in.conj_value(in.conj_prox(c0 / gamma));
    if (std::isfinite(v) && in.is_zero(v, cfg)) return CaseLabel::Xi2;
  }
  if (std::isfinite(d0) && !d0_zero && d0 < 0.0) {
    const double v = in.env_value(in.env_prox(-gamma * d0));
    if (std::isfinite(v) && in.is_zero(v, cfg)) return CaseLabel::Xi3;
  }
  return CaseLabel::Xi4;
}

CaseLabel classify(const PerspectivePair& pair, double gamma, const Vec& x, const Vec& y,
                   const RootConfig& cfg) {
  switch (pair.sign_class()) {
    case ConjugateSignClass::NonnegativeConjugate: return classify_case_i(pair, gamma, x, y, cfg);
    case ConjugateSignClass::NonpositiveConjugate: return classify_case_iii(pair, gamma, x, y, cfg);
    case ConjugateSignClass::ZeroInftyConjugate: break;
  }
  pair.check_point(x, y, "classify");
  return CaseLabel::CaseII;
}

EtaSolution solve_eta_case_i(const PerspectivePair& pair, double gamma, const Vec& x,
                             const Vec& y, const RootConfig& cfg, std::vector<RootStep>* trace) {
  require_class(pair, ConjugateSignClass::NonnegativeConjugate, "solve_eta_case_i");
  const Ingredients in(pair, gamma, x, y);
  return solve_eta([&](double eta) { return in.t_case_i(eta); }, cfg, trace);
}

EtaSolution solve_eta_case_iii(const PerspectivePair& pair, double gamma, const Vec& x,
                               const Vec& y, const RootConfig& cfg, std::vector<RootStep>* trace) {
  require_class(pair, ConjugateSignClass::NonpositiveConjugate, "solve_eta_case_iii");
  const Ingredients in(pair, gamma, x, y);
  return solve_eta([&](double eta) { return in.t_case_iii(eta); }, cfg, trace);
}

ProxResult case_ii_prox(const PerspectivePair& pair, double gamma, const Vec& x, const Vec& y) {
  require_class(pair, ConjugateSignClass::ZeroInftyConjugate, "case_ii_prox");
  const Ingredients in(pair, gamma, x, y);
  ProxResult r;
  r.p = pair.base().prox(gamma, x);
  r.q = pair.scaling().proj_cl_conv_S(y);
  r.label = CaseLabel::CaseII;
  return finish(pair, gamma, x, y, std::move(r));
}

ProxResult prox_perspective(const PerspectivePair& pair, double gamma, const Vec& x, const Vec& y,
                            const RootConfig& cfg) {
  cfg.validate();
  if (pair.sign_class() == ConjugateSignClass::ZeroInftyConjugate) {
    return case_ii_prox(pair, gamma, x, y);
  }
  const Ingredients in(pair, gamma, x, y);
  const ScalingFunction& sc = pair.scaling();
  ProxResult r;

  if (pair.sign_class() == ConjugateSignClass::NonnegativeConjugate) {
    r.label = classify_case_i(pair, gamma, x, y, cfg);
    switch (r.label) {
      case CaseLabel::Omega1:
        r.p = in.p_from(in.conj_prox(0.0));
        r.q = sc.proj_cl_S(y);
        break;
      case CaseLabel::Omega2: {
        const double a0 = in.conj_value(in.conj_prox(0.0));
        r.p = in.p_from(in.conj_prox(0.0));
        r.q = in.env_prox(gamma * a0);
        break;
      }
      case CaseLabel::Omega3: {
        const double b0 = in.s_value(sc.proj_cl_S(y));
        r.eta = b0;
        r.p = in.p_from(in.conj_prox(b0 / gamma));
        r.q = sc.proj_cl_S(y);
        break;
      }
      default: {
        const EtaSolution sol = solve_eta_case_i(pair, gamma, x, y, cfg);
        r.eta = sol.eta;
        r.root_iterations = sol.iterations;
        r.root_residual = std::abs(sol.residual);
        r.p = in.p_from(in.conj_prox(sol.eta / gamma));
        r.q = in.env_prox(gamma * in.phi2(sol.eta));
        break;
      }
    }
    return finish(pair, gamma, x, y, std::move(r));
  }

  r.label = classify_case_iii(pair, gamma, x, y, cfg);
  switch (r.label) {
    case CaseLabel::Xi1:
      r.p = in.p_from(in.conj_prox(0.0));
      r.q = sc.proj_cl_conv_S(y);
      break;
    case CaseLabel::Xi2: {
      const double c0 = in.env_value(sc.proj_cl_conv_S(y));
      r.p = in.p_from(in.conj_prox(c0 / gamma));
      r.q = sc.proj_cl_conv_S(y);
      break;
    }
    case CaseLabel::Xi3: {
      const double d0 = in.conj_value(in.conj_prox(0.0));
      r.eta = -d0;
      r.p = in.p_from(in.conj_prox(0.0));
      r.q = in.env_prox(-gamma * d0);
      break;
    }
    default: {
      const EtaSolution sol = solve_eta_case_iii(pair, gamma, x, y, cfg);
      r.eta = sol.eta;
      r.root_iterations = sol.iterations;
      r.root_residual = std::abs(sol.residual);
      r.q = in.env_prox(gamma * sol.eta);
      r.p = in.p_from(in.conj_prox(in.psi2(sol.eta) / gamma));
      break;
    }
  }
  return finish(pair, gamma, x, y, std::move(r));
}

}  // namespace persp
