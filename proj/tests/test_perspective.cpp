#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "persp/catalog.hpp"
#include "persp/perspective.hpp"
#include "test_support.hpp"

using namespace persp;
using persp::testing::kPairs;
using persp::testing::random_vec;
using persp::testing::uniform;

namespace {

PerspectivePair quadratic_identity() {
  return PerspectivePair(std::make_shared<PowerBase>(2.0), std::make_shared<IdentityIntervalScaling>(), 1, 1);
}

}  // namespace

TEST_CASE("pair compatibility") {
  CHECK(compatible(ConjugateSignClass::NonnegativeConjugate, ScalingKind::NegSLower));
  CHECK_FALSE(compatible(ConjugateSignClass::NonnegativeConjugate, ScalingKind::SLower));
  CHECK(compatible(ConjugateSignClass::ZeroInftyConjugate, ScalingKind::SLower));
  CHECK(compatible(ConjugateSignClass::ZeroInftyConjugate, ScalingKind::NegSLower));
  CHECK_FALSE(compatible(ConjugateSignClass::NonpositiveConjugate, ScalingKind::NegSLower));
  CHECK_THROWS_AS(PerspectivePair(std::make_shared<PowerBase>(2.0), std::make_shared<SqrtScaling>(1.0), 1, 1),
                  IncompatiblePairError);
  CHECK_THROWS(PerspectivePair(std::make_shared<AbsBase>(), std::make_shared<RootScaling>(0.5), 0, 1));
}

TEST_CASE("preperspective examples") {
  const PerspectivePair pr = quadratic_identity();
  CHECK(preperspective_eval(pr, Vec{2.0}, Vec{1.0}).value() == doctest::Approx(2.0));
  CHECK(preperspective_eval(pr, Vec{2.0}, Vec{2.0}).value() == doctest::Approx(1.0));
  CHECK(preperspective_eval(pr, Vec{2.0}, Vec{0.0}).is_pos_inf());
  CHECK(preperspective_eval(pr, Vec{2.0}, Vec{-1.0}).is_pos_inf());
}

TEST_CASE("perspective examples") {
  const PerspectivePair h = persp::testing::huber_sqrt_pair(2);
  CHECK(perspective_eval(h, Vec{3.0, 0.0}, Vec{0.0}).value() == doctest::Approx(3.0));
  CHECK(perspective_eval(h, Vec{0.0, 0.0}, Vec{0.0}).value() == doctest::Approx(0.5));
  const PerspectivePair pr(std::make_shared<PowerBase>(2.0), std::make_shared<RootScaling>(0.5, 4.0), 2, 1);
  CHECK(perspective_eval(pr, Vec{2.0, 0.0}, Vec{4.0}).value() == doctest::Approx(1.0));
  // boundary: s(y) = 0 gives the recession function
  CHECK(perspective_eval(pr, Vec{0.0, 0.0}, Vec{0.0}).value() == 0.0);
  CHECK(perspective_eval(pr, Vec{1.0, 0.0}, Vec{0.0}).is_pos_inf());
  CHECK(perspective_eval(pr, Vec{1.0, 0.0}, Vec{5.0}).is_pos_inf());
  const PerspectivePair ab = persp::testing::abs_root_pair(2);
  CHECK(perspective_eval(ab, Vec{3.0, 4.0}, Vec{0.5}).value() == doctest::Approx(5.0));
  CHECK(perspective_eval(ab, Vec{3.0, 4.0}, Vec{1.5}).is_pos_inf());
}

TEST_CASE("linear perspective examples") {
  const PowerBase sq(2.0);
  const AbsBase a;
  CHECK(linear_perspective_eval(sq, Vec{2.0}, 2.0).value() == doctest::Approx(1.0));
  CHECK(linear_perspective_eval(sq, Vec{1.0}, 0.0).is_pos_inf());
  CHECK(linear_perspective_eval(a, Vec{3.0}, 0.0).value() == 3.0);
  CHECK(linear_perspective_eval(a, Vec{3.0}, -1.0).is_pos_inf());
  // limit quotient t phi(x / t) as t -> 0+ matches the recession values
  for (double t : {1e-3, 1e-5, 1e-7}) {
    CHECK(linear_perspective_eval(a, Vec{3.0}, t).value() == doctest::Approx(3.0));
    CHECK(linear_perspective_eval(sq, Vec{1.0}, t).value() == doctest::Approx(0.5 / t));
  }
}

TEST_CASE("conjugate examples") {
  const PerspectivePair ab(std::make_shared<AbsBase>(), std::make_shared<RootScaling>(0.5, 1.0), 1, 1);
  CHECK(perspective_conj_eval(ab, Vec{0.5}, Vec{-2.0}).value() == 0.0);
  CHECK(perspective_conj_eval(ab, Vec{2.0}, Vec{0.0}).is_pos_inf());
  CHECK(perspective_conj_eval(ab, Vec{0.5}, Vec{3.0}).value() == doctest::Approx(3.0));
  const PerspectivePair pr = persp::testing::power_root_pair(2);
  // phi*(0) = 0: support function of [0, 2]
  CHECK(perspective_conj_eval(pr, Vec{0.0, 0.0}, Vec{1.5}).value() == doctest::Approx(3.0));
  CHECK(perspective_conj_eval(pr, Vec{0.0, 0.0}, Vec{-1.5}).value() == doctest::Approx(0.0));
}

TEST_CASE("perspective is below the preperspective and equal on the open region") {
  std::mt19937_64 rng(41);
  for (const auto& np : kPairs) {
    const PerspectivePair pair = np.make(2);
    for (int i = 0; i < 1000; ++i) {
      const Vec x = random_vec(rng, 2), y = random_vec(rng, 1);
      const ExtReal pre = preperspective_eval(pair, x, y);
      const ExtReal per = perspective_eval(pair, x, y);
      if (pre.is_finite()) {
        CHECK(per.value() <= pre.value() + 1e-13 * (1 + std::abs(pre.value())));
      }
      const ExtReal s = pair.scaling().eval(y);
      if (s.is_finite() && s.value() > 0.0) {
        CHECK(per.value() == doctest::Approx(pre.value()).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("perspective is midpoint convex and fenchel young holds") {
  std::mt19937_64 rng(42);
  for (const auto& np : kPairs) {
    const PerspectivePair pair = np.make(2);
    for (int i = 0; i < 1000; ++i) {
      const Vec x1 = random_vec(rng, 2), y1 = random_vec(rng, 1, -0.5, 2.5);
      const Vec x2 = random_vec(rng, 2), y2 = random_vec(rng, 1, -0.5, 2.5);
      const ExtReal f1 = perspective_eval(pair, x1, y1), f2 = perspective_eval(pair, x2, y2);
      const ExtReal fm = perspective_eval(pair, 0.5 * (x1 + x2), 0.5 * (y1 + y2));
      if (f1.is_finite() && f2.is_finite()) {
        REQUIRE(fm.is_finite());
        CHECK(fm.value() <= 0.5 * (f1.value() + f2.value()) + 1e-12 * (1 + std::abs(f1.value()) + std::abs(f2.value())));
      }
      const Vec xs = random_vec(rng, 2, -1.5, 1.5), ys = random_vec(rng, 1);
      const ExtReal gap = perspective_fenchel_gap(pair, x1, y1, xs, ys);
      CHECK(gap.value() >= -1e-10 * (1 + x1.squared_norm() + xs.squared_norm() + y1.squared_norm() + ys.squared_norm()));
    }
  }
}

TEST_CASE("certificate vanishes only at the prox") {
  const PerspectivePair h = persp::testing::huber_sqrt_pair(2);
  const Vec x{3.0, 0.0}, y{0.0};
  CHECK(prox_certificate_gap(h, 1.0, x, y, Vec{2.0, 0.0}, Vec{0.0}) <= 1e-12);
  CHECK(prox_certificate_gap(h, 1.0, x, y, Vec{2.1, 0.0}, Vec{0.0}) > 1e-3);
  CHECK(certificate_snap_tol(1.0, x, y) > 0.0);
}
