#include <doctest.h>

#include <algorithm>
#include <memory>
#include <random>

#include "persp/catalog.hpp"
#include "persp/radial.hpp"
#include "test_support.hpp"

using namespace persp;
using persp::testing::random_vec;

TEST_CASE("radial prox examples") {
  const AbsValue abs1(1.0);
  const AbsPower sq(2.0);
  const Vec p = radial_prox(abs1, 1.0, Vec{3.0, 4.0});
  CHECK(p[0] == doctest::Approx(2.4));
  CHECK(p[1] == doctest::Approx(3.2));
  CHECK(radial_prox(abs1, 1.0, Vec{0.0, 0.0}) == Vec{0.0, 0.0});
  CHECK(radial_prox(sq, 2.0, Vec{0.0, 0.0}) == Vec{0.0, 0.0});
  const Vec h = radial_prox(sq, 1.0, Vec{2.0, 0.0});
  CHECK(h[0] == doctest::Approx(1.0));
  CHECK(h[1] == 0.0);
}

TEST_CASE("radial prox value examples") {
  CHECK(radial_prox_value(AbsValue(1.0), 1.0, Vec{3.0, 4.0}).value() == doctest::Approx(4.0));
  CHECK(radial_prox_value(AbsValue(1.0), 1.0, Vec{0.0, 0.0}).value() == 0.0);
  CHECK(radial_prox_value(AbsPower(2.0), 3.0, Vec{8.0, 0.0}).value() == doctest::Approx(2.0));
}

TEST_CASE("radial prox preserves direction, value and norm under signed permutations") {
  std::mt19937_64 rng(21);
  const std::shared_ptr<const ScalarFunction> profiles[] = {
      std::make_shared<AbsValue>(0.8), std::make_shared<AbsPower>(3.0),
      std::make_shared<Huber>(1.1), std::make_shared<HuberConjugate>(1.1)};
  for (const auto& prof : profiles) {
    const RadialFunction f(prof);
    for (int i = 0; i < 200; ++i) {
      const Vec x = random_vec(rng, 3);
      const double gamma = persp::testing::uniform(rng, 0.0, 2.0);
      const Vec p = radial_prox(*prof, gamma, x);
      // nonnegative multiple of x
      const double t = dot(p, x) / x.squared_norm();
      CHECK(t >= 0.0);
      CHECK(distance(p, t * x) <= 1e-12 * (1 + x.norm()));
      CHECK(f.eval(p).value() ==
            doctest::Approx(radial_prox_value(*prof, gamma, x).value()).epsilon(1e-10));

      Vec rx(std::vector<double>{-x[2], x[0], -x[1]});
      CHECK(radial_prox(*prof, gamma, rx).norm() == doctest::Approx(p.norm()).epsilon(1e-13));
    }
  }
}

TEST_CASE("along ray") {
  const Vec v = along_ray(Vec{0.0, 2.0}, 3.0);
  CHECK(v == Vec{0.0, 3.0});
  CHECK(along_ray(Vec{0.0, 0.0}, 3.0).is_zero());
}
