#include <doctest.h>

#include <chrono>
#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "persp/catalog.hpp"
#include "persp/prox_perspective.hpp"
#include "persp/scalar_solvers.hpp"
#include "test_support.hpp"

using namespace persp;
using persp::testing::bisect;
using persp::testing::golden_min;
using persp::testing::kPairs;
using persp::testing::random_vec;
using persp::testing::uniform;

namespace {

PerspectivePair power_root(double p, double q, double hi, std::size_t n = 2) {
  return PerspectivePair(std::make_shared<PowerBase>(p), std::make_shared<RootScaling>(q, hi), n, 1);
}

}  // namespace

TEST_CASE("huber prox examples") {
  const PerspectivePair h = persp::testing::huber_sqrt_pair(2);
  const ProxResult a = prox_perspective(h, 1.0, Vec{3.0, 0.0}, Vec{0.0});
  CHECK(a.label == CaseLabel::Xi2);
  CHECK(distance(a.p, Vec{2.0, 0.0}) <= 1e-10);
  CHECK(std::abs(a.q[0]) <= 1e-10);

  // q = 0 by symmetry; the 1-D calculus oracle gives u
  const double u = golden_min([](double t) { return (t * t + 1) / 2 + 0.5 * (1 - t) * (1 - t); }, -2, 2);
  const ProxResult b = prox_perspective(h, 1.0, Vec{1.0, 0.0}, Vec{0.0});
  CHECK(b.label == CaseLabel::Xi4);
  CHECK(b.p[0] == doctest::Approx(u).epsilon(1e-8));
  CHECK(std::abs(b.p[1]) <= 1e-12);
  CHECK(std::abs(b.q[0]) <= 1e-10);
  CHECK(b.eta == doctest::Approx(0.375).epsilon(1e-8));
  CHECK(b.certificate_gap <= 1e-12);
}

TEST_CASE("case ii examples") {
  const PerspectivePair ab = persp::testing::abs_root_pair(2);
  const ProxResult a = prox_perspective(ab, 1.0, Vec{2.0, 0.0}, Vec{2.0});
  CHECK(a.label == CaseLabel::CaseII);
  CHECK(distance(a.p, Vec{1.0, 0.0}) <= 1e-14);
  CHECK(a.q[0] == 1.0);
  CHECK(a.eta == 0.0);
  const ProxResult b = case_ii_prox(ab, 1.0, Vec{0.0, 0.0}, Vec{0.5});
  CHECK(b.p.is_zero());
  CHECK(b.q[0] == 0.5);
  const ProxResult c = case_ii_prox(ab, 1.0, Vec{0.5, 0.0}, Vec{-3.0});
  CHECK(c.p.is_zero());
  CHECK(c.q[0] == 0.0);
  CHECK(c.certificate_gap <= 1e-8);
}

TEST_CASE("power/root partition examples") {
  const PerspectivePair pr = power_root(2.0, 0.5, 1.0);
  CHECK(classify(pr, 1.0, Vec{0.0, 0.0}, Vec{-1.0}) == CaseLabel::Omega1);
  CHECK(classify(pr, 1.0, Vec{0.0, 0.0}, Vec{0.0}) == CaseLabel::Omega1);
  CHECK(classify(pr, 1.0, Vec{0.0, 0.0}, Vec{2.0}) == CaseLabel::Omega3);
  CHECK(classify(pr, 1.0, Vec{0.3, 0.0}, Vec{-4.0}) == CaseLabel::Omega4);
  CHECK(classify(pr, 1.0, Vec{0.0, -2.0}, Vec{0.5}) == CaseLabel::Omega4);
  const PerspectivePair h = persp::testing::huber_sqrt_pair(2);
  CHECK(classify(h, 1.0, Vec{3.0, 0.0}, Vec{0.0}) == CaseLabel::Xi2);
  CHECK(classify(h, 1.0, Vec{1.0, 0.0}, Vec{0.0}) == CaseLabel::Xi4);
  CHECK_THROWS(classify_case_i(h, 1.0, Vec{1.0, 0.0}, Vec{0.0}));
}

TEST_CASE("power/root fixed point solved by the root search") {
  const PerspectivePair pr = power_root(2.0, 0.5, kInf);
  const Vec x{6.0, 0.0}, y{3.5};
  const EtaSolution s = solve_eta_case_i(pr, 1.0, x, y);
  CHECK(s.eta > 0.0);
  CHECK(std::abs(root_function(pr, 1.0, x, y, s.eta)) <= 1e-10);

  // forward evaluation of the fixed point with p* = 2, gamma = 1
  auto fixed = [&](double eta) {
    const double rho = 6.0 / (1.0 + eta);
    const double z = root_scaling_prox_neg(rho * rho / 2.0, 1.0, 0.5, 3.5);
    return std::sqrt(z);
  };
  CHECK(std::abs(fixed(s.eta) - s.eta) <= 1e-10);
  const double eta_oracle = bisect([&](double e) { return e - fixed(e); }, 0.0, 100.0);
  CHECK(s.eta == doctest::Approx(eta_oracle).epsilon(1e-12));

  CHECK(root_function(pr, 1.0, x, y, 0.0) <= 0.0);
  CHECK(root_function(pr, 1.0, x, y, s.bracket_hi) >= 0.0);
}

TEST_CASE("root function is increasing and its ingredients decrease") {
  std::mt19937_64 rng(51);
  for (const auto& np : kPairs) {
    if (std::string(np.name) == "abs/root") continue;
    const PerspectivePair pair = np.make(2);
    for (int i = 0; i < 50; ++i) {
      const Vec x = random_vec(rng, 2), y = random_vec(rng, 1);
      const double gamma = uniform(rng, 0.5, 2.0);
      double prev = root_function(pair, gamma, x, y, 0.0);
      CHECK(std::isfinite(prev));
      for (double eta = 0.05; eta < 10.0; eta *= 1.3) {
        const double t = root_function(pair, gamma, x, y, eta);
        CHECK(t >= prev - 1e-12);
        prev = t;
      }
    }
  }
}

TEST_CASE("root trace brackets the root at every row") {
  const PerspectivePair h = persp::testing::huber_sqrt_pair(2);
  std::vector<RootStep> trace;
  const EtaSolution s = solve_eta_case_iii(h, 1.0, Vec{1.0, 0.0}, Vec{0.0}, {}, &trace);
  REQUIRE_FALSE(trace.empty());
  double width = trace.front().hi - trace.front().lo;
  for (const RootStep& r : trace) {
    CHECK(r.lo <= s.eta + 1e-15);
    CHECK(r.hi >= s.eta - 1e-15);
    CHECK(r.hi - r.lo <= width);
    width = r.hi - r.lo;
  }
  CHECK(std::abs(trace.back().value) <= 1e-10);
}

TEST_CASE("a tiny first bracket is grown and finds the same root") {
  std::mt19937_64 rng(52);
  const PerspectivePair pr = persp::testing::power_root_pair(3);
  RootConfig small;
  small.initial_hi = 1e-6;
  for (int i = 0; i < 100; ++i) {
    const Vec x = random_vec(rng, 3), y = random_vec(rng, 1);
    if (classify(pr, 1.0, x, y) != CaseLabel::Omega4) continue;
    const EtaSolution a = solve_eta_case_i(pr, 1.0, x, y);
    const EtaSolution b = solve_eta_case_i(pr, 1.0, x, y, small);
    CHECK(std::abs(a.eta - b.eta) <= 1e-12);
  }
}

TEST_CASE("solver errors carry the bracket") {
  const PerspectivePair pr = persp::testing::power_root_pair(2);
  RootConfig cfg;
  cfg.max_iter = 1;
  cfg.eta_tol = 1e-300;
  cfg.residual_tol = 1e-300;
  try {
    (void)prox_perspective(pr, 1.0, Vec{2.0, 1.0}, Vec{0.7}, cfg);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.hi() >= e.lo());
    CHECK(std::isfinite(e.residual()));
  }
  RootConfig bad;
  bad.eta_tol = -1.0;
  CHECK_THROWS(bad.validate());
  CHECK_THROWS(prox_perspective(pr, 0.0, Vec{1.0, 0.0}, Vec{1.0}));
}

TEST_CASE("prox certificates on random inputs") {
  std::mt19937_64 rng(53);
  for (const auto& np : kPairs) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const PerspectivePair pair = np.make(n);
      for (int i = 0; i < 200; ++i) {
        const Vec x = random_vec(rng, n, -4, 4), y = random_vec(rng, 1, -4, 4);
        const double gamma = uniform(rng, 0.2, 3.0);
        const ProxResult r = prox_perspective(pair, gamma, x, y);
        CHECK(r.certificate_gap <= 1e-8 * (1 + x.squared_norm() + y.squared_norm()));
        CHECK(perspective_eval(pair, r.p, r.q).is_finite());
      }
    }
  }
}

TEST_CASE("labels 1 to 3 of power/root take their closed forms") {
  const PerspectivePair pr = persp::testing::power_root_pair(2);
  const ProxResult a = prox_perspective(pr, 1.0, Vec{0.0, 0.0}, Vec{-1.0});
  CHECK(a.label == CaseLabel::Omega1);
  CHECK(a.p.is_zero());
  CHECK(a.q[0] == 0.0);
  const ProxResult b = prox_perspective(pr, 1.0, Vec{0.0, 0.0}, Vec{1.0});
  CHECK(b.label == CaseLabel::Omega3);
  CHECK(b.p.is_zero());
  // phi(0) = 0, so the perspective vanishes on {0} x cl S
  CHECK(b.q[0] == 1.0);
  const ProxResult c = prox_perspective(pr, 1.0, Vec{0.0, 0.0}, Vec{3.0});
  CHECK(c.q[0] == 2.0);
}
