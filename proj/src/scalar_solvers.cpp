#include "persp/scalar_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "persp/root_finding.hpp"

namespace persp {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

// Roots of x^2 + B x + C. A slightly negative discriminant (relative to the
// coefficients) is treated as a double root.
void quadratic_roots(double B, double C, std::vector<double>& out) {
  double disc = B * B - 4.0 * C;
  const double scale = B * B + 4.0 * std::abs(C);
  if (disc < 0.0) {
    if (disc < -1e-10 * scale) {
      out.push_back(-0.5 * B);  // real part of the complex pair
      return;
    }
    disc = 0.0;
  }
  const double sq = std::sqrt(disc);
  const double t = -0.5 * (B + std::copysign(sq, B));
  if (t == 0.0) {
    out.push_back(0.0);
    return;
  }
  out.push_back(t);
  out.push_back(C / t);
}

double polish_poly(double x, std::initializer_list<double> coeffs, int steps) {
  // coeffs in descending degree, monic leading term included
  for (int k = 0; k < steps; ++k) {
    double p = 0.0, dp = 0.0;
    for (double c : coeffs) {
      dp = dp * x + p;
      p = p * x + c;
    }
    if (dp == 0.0 || !std::isfinite(dp)) break;
    const double next = x - p / dp;
    if (!std::isfinite(next)) break;
    x = next;
  }
  return x;
}

}  // namespace

double power_prox(double r, double c, double t) {
  require(r > 1.0 && std::isfinite(r), "power_prox: exponent must be > 1");
  require(c >= 0.0 && std::isfinite(c), "power_prox: weight must be >= 0");
  require(t >= 0.0 && std::isfinite(t), "power_prox: argument must be >= 0");
  if (t == 0.0 || c == 0.0) return t;
  if (r == 2.0) return t / (1.0 + c);
  // the root lies below both t and (t / c)^(1 / (r - 1))
  const double hi = std::min(t, std::pow(t / c, 1.0 / (r - 1.0)));
  auto h = [&](double rho) { return rho + c * std::pow(rho, r - 1.0) - t; };
  auto dh = [&](double rho) { return 1.0 + c * (r - 1.0) * std::pow(rho, r - 2.0); };
  return newton_bracketed(h, dh, 0.0, hi, hi);
}

double power_prox_conj(double p, double gamma, double xi, double xnorm) {
  require(p > 1.0 && std::isfinite(p), "power_prox_conj: p must be > 1");
  require(gamma > 0.0 && std::isfinite(gamma), "power_prox_conj: gamma must be > 0");
  require(xi >= 0.0 && std::isfinite(xi), "power_prox_conj: xi must be >= 0");
  require(xnorm >= 0.0 && std::isfinite(xnorm), "power_prox_conj: norm must be >= 0");
  const double pstar = p / (p - 1.0);
  return power_prox(pstar, xi / gamma, xnorm / gamma);
}

double root_scaling_prox_neg(double mu, double gamma, double q, double y) {
  require(mu >= 0.0 && std::isfinite(mu), "root_scaling_prox_neg: mu must be >= 0");
  require(gamma >= 0.0 && std::isfinite(gamma), "root_scaling_prox_neg: gamma must be >= 0");
  require(q > 0.0 && q < 1.0, "root_scaling_prox_neg: q must lie in ]0,1[");
  require(std::isfinite(y), "root_scaling_prox_neg: y must be finite");
  const double c = gamma * mu;
  if (c == 0.0) return std::max(y, 0.0);

  // Solve in u = log z; h is strictly increasing and never overflows in both
  // terms at once.
  const double qc = q * c;
  auto h = [&](double u) { return std::exp(u) - qc * std::exp((q - 1.0) * u) - y; };
  auto dh = [&](double u) {
    return std::exp(u) + (1.0 - q) * qc * std::exp((q - 1.0) * u);
  };

  const double start =
      std::log(std::max({std::abs(y), std::pow(qc, 1.0 / (2.0 - q)), 1e-300}));
  double lo = start, hi = start;
  double step = 1.0;
  while (h(lo) >= 0.0) {
    lo -= step;
    step *= 2.0;
  }
  step = 1.0;
  while (h(hi) <= 0.0) {
    hi += step;
    step *= 2.0;
  }
  const double u = newton_bracketed(h, dh, lo, hi, 0.5 * (lo + hi));
  return std::exp(u);
}

std::vector<double> solve_cubic(double a, double b, double c) {
  std::vector<double> roots;
  const double Q = (a * a - 3.0 * b) / 9.0;
  const double R = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 54.0;
  const double Q3 = Q * Q * Q;
  if (R * R < Q3) {
    const double theta = std::acos(std::clamp(R / std::sqrt(Q3), -1.0, 1.0));
    const double m = -2.0 * std::sqrt(Q);
    for (int k = 0; k < 3; ++k) {
      roots.push_back(m * std::cos((theta + 2.0 * std::numbers::pi * k) / 3.0) - a / 3.0);
    }
  } else {
    const double A = -std::copysign(std::cbrt(std::abs(R) + std::sqrt(R * R - Q3)), R);
    const double B = A == 0.0 ? 0.0 : Q / A;
    roots.push_back(A + B - a / 3.0);
  }
  for (double& r : roots) r = polish_poly(r, {1.0, a, b, c}, 3);
  return roots;
}

std::vector<double> solve_quartic(double a, double b, double c, double d) {
  // depressed quartic t^4 + P t^2 + Qd t + Rd with x = t - a/4
  const double a2 = a * a;
  const double P = b - 3.0 * a2 / 8.0;
  const double Qd = c - a * b / 2.0 + a2 * a / 8.0;
  const double Rd = d - a * c / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;

  std::vector<double> t_roots;
  double m = 0.0;
  if (Qd != 0.0) {
    // resolvent m^3 + P m^2 + (P^2/4 - Rd) m - Qd^2/8 = 0 has a positive root
    const auto res = solve_cubic(P, P * P / 4.0 - Rd, -Qd * Qd / 8.0);
    m = *std::max_element(res.begin(), res.end());
  }
  if (m > 0.0) {
    const double s = std::sqrt(2.0 * m);
    const double k = Qd / (2.0 * s);
    quadratic_roots(-s, P / 2.0 + m + k, t_roots);
    quadratic_roots(s, P / 2.0 + m - k, t_roots);
  } else {
    // biquadratic: t^2 = w with w^2 + P w + Rd = 0
    std::vector<double> w;
    quadratic_roots(P, Rd, w);
    for (double wi : w) {
      if (wi >= 0.0) {
        t_roots.push_back(std::sqrt(wi));
        t_roots.push_back(-std::sqrt(wi));
      } else if (wi > -1e-12 * (1.0 + std::abs(P))) {
        t_roots.push_back(0.0);
      }
    }
  }

  // real parts of genuinely complex pairs are dropped here
  std::vector<double> roots;
  roots.reserve(t_roots.size());
  for (double t : t_roots) {
    const double r = polish_poly(t - a / 4.0, {1.0, a, b, c, d}, 2);
    const double ar = std::abs(r);
    const double value = (((r + a) * r + b) * r + c) * r + d;
    const double scale = (((ar + std::abs(a)) * ar + std::abs(b)) * ar + std::abs(c)) * ar + std::abs(d);
    if (std::abs(value) <= 1e-6 * scale) roots.push_back(r);
  }
  return roots;
}

double sqrt_scaling_stationarity(double beta, double mu, double y, double q) {
  return q - y + mu * q / std::sqrt(beta + q * q);
}

double sqrt_scaling_prox(double beta, double mu, double y) {
  require(beta > 0.0 && std::isfinite(beta), "sqrt_scaling_prox: beta must be > 0");
  require(mu >= 0.0 && std::isfinite(mu), "sqrt_scaling_prox: mu must be >= 0");
  require(std::isfinite(y), "sqrt_scaling_prox: y must be finite");
  if (mu == 0.0 || y == 0.0) return y;

  const double lo = std::min(0.0, y), hi = std::max(0.0, y);
  const double slack = 1e-8 * (1.0 + std::abs(y));
  const auto roots = solve_quartic(-2.0 * y, y * y + beta - mu * mu, -2.0 * beta * y, beta * y * y);

  auto g = [&](double q) { return sqrt_scaling_stationarity(beta, mu, y, q); };
  bool found = false;
  double best = 0.0;
  for (double r : roots) {
    if (!std::isfinite(r) || r < lo - slack || r > hi + slack) continue;
    const double rc = std::clamp(r, lo, hi);
    if (!found || std::abs(g(rc)) < std::abs(g(best))) best = rc;
    found = true;
  }
  if (!found) throw std::runtime_error("sqrt_scaling_prox: quartic has no root in the interval");

  best = std::clamp(polish_poly(best, {1.0, -2.0 * y, y * y + beta - mu * mu, -2.0 * beta * y,
                                       beta * y * y},
                                2),
                    lo, hi);
  // g is strictly increasing with g(lo) <= 0 <= g(hi)
  auto dg = [&](double q) {
    const double w = beta + q * q;
    return 1.0 + mu * beta / (w * std::sqrt(w));
  };
  const double q = newton_bracketed(g, dg, lo, hi, best);
  if (!(std::abs(g(q)) <= 1e-10 * (1.0 + std::abs(y)))) {
    throw std::runtime_error("sqrt_scaling_prox: polishing did not reach the stationarity tolerance");
  }
  return q;
}

double huber_prox_conj(double alpha, double gamma, double xi) {
  require(alpha > 0.0 && std::isfinite(alpha), "huber_prox_conj: alpha must be > 0");
  require(gamma > 0.0 && std::isfinite(gamma), "huber_prox_conj: gamma must be > 0");
  if (std::abs(xi) > (gamma + 1.0) * alpha) return std::copysign(alpha, xi);
  return xi / (gamma + 1.0);
}

double huber_prox(double alpha, double gamma, double t) {
  require(alpha > 0.0 && std::isfinite(alpha), "huber_prox: alpha must be > 0");
  require(gamma > 0.0 && std::isfinite(gamma), "huber_prox: gamma must be > 0");
  if (std::abs(t) <= alpha * (1.0 + gamma)) return t / (1.0 + gamma);
  return t - std::copysign(gamma * alpha, t);
}

}  // namespace persp
