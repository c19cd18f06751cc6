#include <doctest.h>

#include <cmath>
#include <random>

#include "persp/oracle.hpp"
#include "persp/prox_perspective.hpp"
#include "test_support.hpp"

using namespace persp;
using persp::testing::random_vec;

TEST_CASE("oracle on elementary functions") {
  const PairEvaluator quad = [](const Vec& u, const Vec& v) {
    return ExtReal(0.5 * (u.squared_norm() + v.squared_norm()));
  };
  const auto [u, v] = brute_force_prox(quad, 1.0, Vec{2.0, -1.0}, Vec{4.0});
  CHECK(distance(u, Vec{1.0, -0.5}) <= 1e-6);
  CHECK(std::abs(v[0] - 2.0) <= 1e-6);

  const PairEvaluator origin = [](const Vec& u, const Vec& v) {
    return u.is_zero() && v.is_zero() ? ExtReal(0.0) : ExtReal::pos_inf();
  };
  const auto [u0, v0] = brute_force_prox(origin, 1.0, Vec{0.7, -0.2}, Vec{1.3});
  CHECK(u0.is_zero());
  CHECK(v0.is_zero());

  const PairEvaluator nowhere = [](const Vec&, const Vec&) { return ExtReal::pos_inf(); };
  CHECK_THROWS_AS(brute_force_prox(nowhere, 1.0, Vec{1.0}, Vec{1.0}), OracleError);
  OracleConfig bad;
  bad.coarse_points_per_dim = 1;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("oracle reproduces the huber shrinkage branch") {
  const PerspectivePair h = persp::testing::huber_sqrt_pair(2);
  const PairEvaluator f = [&](const Vec& u, const Vec& v) { return perspective_eval(h, u, v); };
  const auto [u, v] = brute_force_prox(f, 1.0, Vec{3.0, 0.0}, Vec{0.0});
  CHECK(distance(u, Vec{2.0, 0.0}) <= 5e-4);
  CHECK(std::abs(v[0]) <= 5e-4);
}

TEST_CASE("oracle is stable under a finer refinement tolerance") {
  std::mt19937_64 rng(61);
  for (const auto& np : persp::testing::kPairs) {
    const PerspectivePair pair = np.make(2);
    const PairEvaluator f = [&](const Vec& u, const Vec& v) { return perspective_eval(pair, u, v); };
    for (int i = 0; i < 5; ++i) {
      const Vec x = random_vec(rng, 2), y = random_vec(rng, 1);
      OracleConfig a, b;
      b.refine_tol = a.refine_tol / 2;
      const auto [ua, va] = brute_force_prox(f, 1.0, x, y, a);
      const auto [ub, vb] = brute_force_prox(f, 1.0, x, y, b);
      CHECK(distance(concat(ua, va), concat(ub, vb)) <= 10 * a.refine_tol);
    }
  }
}

TEST_CASE("subgradient certificate separates exact and perturbed outputs") {
  const PerspectivePair h = persp::testing::huber_sqrt_pair(2);
  const Vec x{1.0, 0.0}, y{0.0};
  const ProxResult r = prox_perspective(h, 1.0, x, y);
  CHECK(subgradient_certificate(h, 1.0, x, y, r.p, r.q) <= 1e-8);
  CHECK(subgradient_certificate(h, 1.0, x, y, r.p + Vec{0.1, 0.0}, r.q) > 1e-3);

  const PerspectivePair ab = persp::testing::abs_root_pair(2);
  const ProxResult c = case_ii_prox(ab, 1.0, Vec{2.0, 0.0}, Vec{2.0});
  CHECK(subgradient_certificate(ab, 1.0, Vec{2.0, 0.0}, Vec{2.0}, c.p, c.q) <= 1e-8);
}
