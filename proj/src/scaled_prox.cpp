#include "persp/scaled_prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace persp {

namespace {

void require_nonnegative(double gamma, const char* context) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw std::domain_error(std::string(context) + ": gamma must be a finite value >= 0");
  }
}

// sup over probe points y of <y - p, x - p> + (g.f)(p) - (g.f)(y)
double sampled_variational_gap(const ProxProvider& f, double gamma, const Vec& x, const Vec& p) {
  const ExtReal fp = scaled_eval(f, gamma, p);
  if (fp.is_pos_inf()) return std::numeric_limits<double>::infinity();

  const Vec r = x - p;
  std::vector<Vec> directions;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Vec e = Vec::zeros(p.size());
    e[i] = 1.0;
    directions.push_back(e);
    directions.push_back(-e);
  }
  if (!r.is_zero()) {
    directions.push_back(r / r.norm());
    directions.push_back(-r / r.norm());
  }

  const double radius = 1.0 + x.norm();
  const double steps[] = {1e-6, 1e-4, 1e-2, 0.1, 0.5, 1.0, 2.0, 4.0, 10.0};

  double best = 0.0;
  auto probe = [&](const Vec& y) {
    const ExtReal fy = scaled_eval(f, gamma, y);
    if (fy.is_pos_inf()) return;
    best = std::max(best, dot(y - p, r) + fp.value() - fy.value());
  };
  probe(f.proj_cl_dom(x));
  for (const Vec& d : directions) {
    for (double t : steps) probe(f.proj_cl_dom(p + (t * radius) * d));
  }
  return best;
}

}  // namespace

Vec scaled_prox(const ProxProvider& f, double gamma, const Vec& x) {
  require_nonnegative(gamma, "scaled_prox");
  return gamma == 0.0 ? f.proj_cl_dom(x) : f.prox(gamma, x);
}

double scaled_prox(const ScalarFunction& f, double gamma, double t) {
  require_nonnegative(gamma, "scaled_prox");
  return gamma == 0.0 ? f.proj_cl_dom(t) : f.prox(gamma, t);
}

ExtReal scaled_eval(const ProxProvider& f, double gamma, const Vec& x, double membership_tol) {
  require_nonnegative(gamma, "scaled_eval");
  if (gamma == 0.0) {
    const double d = distance(f.proj_cl_dom(x), x);
    return d <= membership_tol * (1.0 + x.norm()) ? ExtReal(0.0) : ExtReal::pos_inf();
  }
  return scale(gamma, f.eval(x));
}

std::pair<Vec, Vec> moreau_decompose(const ProxProvider& f, double gamma, const Vec& x) {
  if (!(gamma > 0.0)) throw std::domain_error("moreau_decompose: gamma must be > 0");
  auto conj = f.conjugate();
  if (!conj) throw std::invalid_argument("moreau_decompose: conjugate prox unavailable");
  return {f.prox(gamma, x), conj->prox(1.0 / gamma, x / gamma)};
}

GapEstimate prox_characterization_gap(const ProxProvider& f, double gamma, const Vec& x,
                                      const Vec& p) {
  require_nonnegative(gamma, "prox_characterization_gap");
  require_same_size(x, p, "prox_characterization_gap");
  auto conj = f.conjugate();
  if (gamma > 0.0 && conj) {
    // (gamma f)*(u) = gamma f*(u / gamma)
    const ExtReal fp = f.eval(p);
    const ExtReal fc = conj->eval((x - p) / gamma);
    if (fp.is_pos_inf() || fc.is_pos_inf()) return {std::numeric_limits<double>::infinity(), false};
    return {gamma * fp.value() + gamma * fc.value() - dot(p, x - p), false};
  }
  return {sampled_variational_gap(f, gamma, x, p), true};
}

std::vector<ExtReal> prox_value_curve(const ProxProvider& f, const Vec& x,
                                      std::span<const double> gammas) {
  if (!std::is_sorted(gammas.begin(), gammas.end())) {
    throw std::invalid_argument("prox_value_curve: gammas must be sorted ascending");
  }
  std::vector<ExtReal> out;
  out.reserve(gammas.size());
  for (double g : gammas) out.push_back(f.eval(scaled_prox(f, g, x)));
  return out;
}

}  // namespace persp
