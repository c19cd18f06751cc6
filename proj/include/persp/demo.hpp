#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "persp/prox_perspective.hpp"

namespace persp {

/// Location-with-scale fit
///   minimize_{w, sigma}  1/2 ||A w - b||^2 + kappa/2 (sigma - y0)^2 + weight * (phi>s)(w, sigma)
/// solved by forward-backward splitting with step tau.
struct DemoSpec {
  std::vector<std::vector<double>> A;  // k rows of length n
  std::vector<double> b;               // k entries
  double y0 = 0.0;
  double kappa = 0.0;
  double tau = 0.0;
  int iterations = 100;
  std::optional<Vec> w0;  // defaults to zeros
  double sigma0 = 0.0;
};

struct DemoRow {
  int iter = 0;
  double objective = 0.0;
  double step_norm = 0.0;
};

struct DemoResult {
  std::vector<DemoRow> rows;
  Vec w;
  double sigma = 0.0;
  double lipschitz = 0.0;
};

/// The demo problem is ill-posed (shapes, step size).
class DemoError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Random k x n design with observations b = A w + noise, from a seed.
DemoSpec make_random_demo(std::size_t k, std::size_t n, std::uint64_t seed);

/// Lipschitz constant of the smooth part's gradient: max(lambda_max(A^T A), kappa).
double demo_lipschitz(const DemoSpec& spec);

/// Runs the iterations; rows[t] reports the objective after iteration t + 1
/// and the size of that iteration's step. Throws DemoError when tau * L > 1
/// or the shapes disagree with the pair (m must be 1).
DemoResult run_concomitant_demo(const DemoSpec& spec, const PerspectivePair& pair,
                                double weight = 1.0, const RootConfig& cfg = {});

}  // namespace persp
