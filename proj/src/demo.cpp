#include "persp/demo.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace persp {

namespace {

Eigen::MatrixXd to_matrix(const DemoSpec& spec, std::size_t n) {
  const auto k = static_cast<Eigen::Index>(spec.A.size());
  Eigen::MatrixXd A(k, static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto& row = spec.A[static_cast<std::size_t>(i)];
    if (row.size() != n) throw DemoError("demo: design matrix rows have unequal lengths");
    for (std::size_t j = 0; j < n; ++j) A(i, static_cast<Eigen::Index>(j)) = row[j];
  }
  return A;
}

std::size_t columns(const DemoSpec& spec) {
  if (spec.A.empty()) throw DemoError("demo: design matrix is empty");
  return spec.A.front().size();
}

}  // namespace

DemoSpec make_random_demo(std::size_t k, std::size_t n, std::uint64_t seed) {
  if (k == 0 || n == 0) throw DemoError("demo: need at least one row and one column");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  DemoSpec spec;
  std::vector<double> w_true(n);
  for (double& w : w_true) w = normal(rng);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> row(n);
    double bi = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = normal(rng) / std::sqrt(static_cast<double>(k));
      bi += row[j] * w_true[j];
    }
    spec.A.push_back(std::move(row));
    spec.b.push_back(bi + 0.1 * normal(rng));
  }
  spec.y0 = 1.0;
  spec.kappa = 1.0;
  spec.iterations = 200;
  spec.tau = 1.0 / demo_lipschitz(spec);
  return spec;
}

double demo_lipschitz(const DemoSpec& spec) {
  const Eigen::MatrixXd A = to_matrix(spec, columns(spec));
  const Eigen::MatrixXd AtA = A.transpose() * A;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(AtA, Eigen::EigenvaluesOnly);
  return std::max(eig.eigenvalues().maxCoeff(), spec.kappa);
}

DemoResult run_concomitant_demo(const DemoSpec& spec, const PerspectivePair& pair, double weight,
                                const RootConfig& cfg) {
  const std::size_t n = columns(spec);
  if (pair.n() != n || pair.m() != 1) {
    throw DemoError("demo: pair dimensions must be (" + std::to_string(n) + ", 1)");
  }
  if (spec.b.size() != spec.A.size()) throw DemoError("demo: b must have one entry per row of A");
  if (!(spec.kappa >= 0.0)) throw DemoError("demo: kappa must be >= 0");
  if (!(spec.tau > 0.0)) throw DemoError("demo: tau must be > 0");
  if (!(weight > 0.0)) throw DemoError("demo: weight must be > 0");
  if (spec.iterations < 0) throw DemoError("demo: iterations must be >= 0");

  const Eigen::MatrixXd A = to_matrix(spec, n);
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(spec.b.data(),
                                                              static_cast<Eigen::Index>(spec.b.size()));
  DemoResult out;
  out.lipschitz = demo_lipschitz(spec);
  if (spec.tau * out.lipschitz > 1.0) {
    throw DemoError("demo: step size violates tau * L <= 1 (L = " + std::to_string(out.lipschitz) +
                    ")");
  }

  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  if (spec.w0) {
    require_size(*spec.w0, n, "demo: w0");
    for (std::size_t j = 0; j < n; ++j) w(static_cast<Eigen::Index>(j)) = (*spec.w0)[j];
  }
  double sigma = spec.sigma0;

  auto to_vec = [&](const Eigen::VectorXd& v) {
    return Vec(std::vector<double>(v.data(), v.data() + v.size()));
  };
  auto objective = [&](const Eigen::VectorXd& wv, double s) {
    const double smooth = 0.5 * (A * wv - b).squaredNorm() + 0.5 * spec.kappa * (s - spec.y0) * (s - spec.y0);
    const ExtReal reg = perspective_eval(pair, to_vec(wv), Vec{s});
    return reg.is_pos_inf() ? std::numeric_limits<double>::infinity() : smooth + weight * reg.value();
  };

  for (int t = 1; t <= spec.iterations; ++t) {
    const Eigen::VectorXd grad_w = A.transpose() * (A * w - b);
    const double grad_s = spec.kappa * (sigma - spec.y0);
    const Eigen::VectorXd fw = w - spec.tau * grad_w;
    const double fs = sigma - spec.tau * grad_s;

    const ProxResult r = prox_perspective(pair, spec.tau * weight, to_vec(fw), Vec{fs}, cfg);
    Eigen::VectorXd w_next(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) w_next(static_cast<Eigen::Index>(j)) = r.p[j];
    const double s_next = r.q[0];

    const double step = std::sqrt((w_next - w).squaredNorm() + (s_next - sigma) * (s_next - sigma));
    w = w_next;
    sigma = s_next;
    out.rows.push_back({t, objective(w, sigma), step});
  }
  out.w = to_vec(w);
  out.sigma = sigma;
  return out;
}

}  // namespace persp
