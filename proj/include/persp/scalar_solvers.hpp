#pragma once

#include <vector>

namespace persp {

/// rho >= 0 solving rho + c * rho^(r - 1) = t, for r > 1, c >= 0, t >= 0.
/// This is prox_{c |.|^r / r}(t) on the nonnegative half-line.
double power_prox(double r, double c, double t);

/// rho >= 0 solving xnorm = rho * gamma + xi * rho^(pstar - 1), pstar = p/(p-1).
/// Equals prox_{(xi/gamma) phi*}(xnorm/gamma) for phi = |.|^p / p.
double power_prox_conj(double p, double gamma, double xi, double xnorm);

/// z > 0 solving y = z - q * gamma * mu * z^(q - 1), i.e. prox of
/// gamma * mu * (-psi) at y where psi(z) = z^q on [0, +inf[.
/// With gamma * mu == 0 this degenerates to the projection onto [0, +inf[.
double root_scaling_prox_neg(double mu, double gamma, double q, double y);

/// Real roots of x^3 + a x^2 + b x + c, each polished by Newton steps.
std::vector<double> solve_cubic(double a, double b, double c);

/// Real roots of x^4 + a x^3 + b x^2 + c x + d by Ferrari's resolvent cubic.
/// Nearly-real complex pairs contribute their real part, so callers that
/// filter and polish never lose a root to round-off in the discriminant.
std::vector<double> solve_quartic(double a, double b, double c, double d);

/// prox of mu * sqrt(beta + |.|^2) at the scalar y, mu >= 0: the root in
/// [0, y] (or [y, 0]) of
///   q^4 - 2 y q^3 + (y^2 + beta - mu^2) q^2 - 2 beta y q + beta y^2 = 0,
/// polished until q - y + mu q / sqrt(beta + q^2) = 0 holds to round-off.
/// Throws std::runtime_error if the quartic has no root in the interval.
double sqrt_scaling_prox(double beta, double mu, double y);

/// Stationarity residual q - y + mu q / sqrt(beta + q^2) of the above.
double sqrt_scaling_stationarity(double beta, double mu, double y, double q);

/// prox of gamma * phi* for the Huber function phi with parameter alpha.
double huber_prox_conj(double alpha, double gamma, double xi);

/// prox of gamma * phi for the Huber function phi with parameter alpha.
double huber_prox(double alpha, double gamma, double t);

}  // namespace persp
