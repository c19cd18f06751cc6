#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "persp/perspective.hpp"
#include "persp/root_finding.hpp"

namespace persp {

/// Which part of the input space an input falls in. Omega* apply to pairs with
/// a nonnegative conjugate, Xi* to pairs with a nonpositive conjugate; CaseII
/// covers conjugates valued in {0, +inf}. Labels 4 are the only ones that
/// need a root search.
enum class CaseLabel { Omega1, Omega2, Omega3, Omega4, Xi1, Xi2, Xi3, Xi4, CaseII };

std::string to_string(CaseLabel label);

struct RootConfig {
  double eta_tol = 1e-12;
  double residual_tol = 1e-10;
  int max_iter = 200;
  double classify_tol = 1e-12;
  /// Overrides the default upper end of the first bracket (doubling still
  /// applies if it is too small).
  std::optional<double> initial_hi;

  void validate() const;
};

struct ProxResult {
  Vec p;
  Vec q;
  double eta = 0.0;
  CaseLabel label = CaseLabel::CaseII;
  int root_iterations = 0;
  /// |T(eta)| for the root-search labels, 0 otherwise.
  double root_residual = 0.0;
  double certificate_gap = 0.0;
};

/// The root search for eta failed; carries the last bracket and residual.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double lo, double hi, double residual)
      : std::runtime_error(what), lo_(lo), hi_(hi), residual_(residual) {}
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double residual() const { return residual_; }

 private:
  double lo_, hi_, residual_;
};

struct EtaSolution {
  double eta = 0.0;
  int iterations = 0;
  double residual = 0.0;
  double bracket_hi = 0.0;  // upper end of the bracket the search started from
};

/// The increasing function whose zero is eta. For a nonnegative conjugate,
///   T(eta) = e(prox_{gamma phi2(eta) (.) e} y) + eta,
///   phi2(eta) = phi*(prox_{(eta/gamma) (.) phi*}(x/gamma)),
/// with e the lower envelope of -s; for a nonpositive conjugate the roles of
/// the base and the scaling are exchanged.
double root_function(const PerspectivePair& pair, double gamma, const Vec& x, const Vec& y,
                     double eta);

CaseLabel classify_case_i(const PerspectivePair& pair, double gamma, const Vec& x, const Vec& y,
                          const RootConfig& cfg = {});
CaseLabel classify_case_iii(const PerspectivePair& pair, double gamma, const Vec& x, const Vec& y,
                            const RootConfig& cfg = {});
/// Dispatches on the pair's sign class.
CaseLabel classify(const PerspectivePair& pair, double gamma, const Vec& x, const Vec& y,
                   const RootConfig& cfg = {});

/// Root of root_function on [0, +inf[; appends every evaluation to `trace`.
EtaSolution solve_eta_case_i(const PerspectivePair& pair, double gamma, const Vec& x,
                             const Vec& y, const RootConfig& cfg = {},
                             std::vector<RootStep>* trace = nullptr);
EtaSolution solve_eta_case_iii(const PerspectivePair& pair, double gamma, const Vec& x,
                               const Vec& y, const RootConfig& cfg = {},
                               std::vector<RootStep>* trace = nullptr);

/// (prox_{gamma phi} x, proj_{cl conv S} y) for a conjugate valued in {0, +inf}.
ProxResult case_ii_prox(const PerspectivePair& pair, double gamma, const Vec& x, const Vec& y);

/// prox of gamma (phi>s) at (x, y), gamma > 0.
ProxResult prox_perspective(const PerspectivePair& pair, double gamma, const Vec& x, const Vec& y,
                            const RootConfig& cfg = {});

}  // namespace persp
