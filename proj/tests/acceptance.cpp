// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "persp/catalog.hpp"
#include "persp/demo.hpp"
#include "persp/oracle.hpp"
#include "persp/prox_perspective.hpp"
#include "persp/scaled_prox.hpp"
#include "persp/scalar_solvers.hpp"
#include "test_support.hpp"

using namespace persp;
using persp::testing::kPairs;
using persp::testing::random_vec;
using persp::testing::uniform;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
  std::printf("criterion %d [%s] %s: %s\n", id, ok ? "PASS" : "FAIL", title, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Runs body(i) for i in [0, count) on all hardware threads.
void parallel_for(int count, const std::function<void(int)>& body) {
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------------------

void closed_form_reproduction() {
  constexpr double kTolShrink = 1e-10, kTolRoot = 1e-8, kMaxSeconds = 1e-3;
  const PerspectivePair h = persp::testing::huber_sqrt_pair(2);

  auto t0 = Clock::now();
  const ProxResult a = prox_perspective(h, 1.0, Vec{3.0, 0.0}, Vec{0.0});
  const double ta = seconds_since(t0);
  const double ea = std::max(distance(a.p, Vec{2.0, 0.0}), std::abs(a.q[0]));

  // 1-D calculus oracle: q = 0 by symmetry, u zeroes the derivative of
  // (u^2 + 1)/2 + (1 - u)^2/2, and with q = 0 the fixed point for eta reads
  // (alpha^2 (gamma + sqrt(beta))^2 - ||x||^2) / (2 (gamma + sqrt(beta))^2).
  const double u = persp::testing::bisect([](double t) { return t - (1 - t); }, -2, 2);
  const double eta_ref = (4.0 - 1.0) / (2.0 * 4.0);

  t0 = Clock::now();
  const ProxResult b = prox_perspective(h, 1.0, Vec{1.0, 0.0}, Vec{0.0});
  const double tb = seconds_since(t0);
  const double eb = std::max({distance(b.p, Vec{0.5, 0.0}), std::abs(b.q[0]), std::abs(b.eta - 0.375)});

  const bool ok = ea <= kTolShrink && a.label == CaseLabel::Xi2 && eb <= kTolRoot &&
                  std::abs(u - 0.5) <= kTolRoot && eta_ref == 0.375 && ta < kMaxSeconds &&
                  tb < kMaxSeconds;
  report(1, "huber closed forms", ok,
         fmt("((3,0),0): err %.2e (tol %.0e) label %s, %.3f ms; ((1,0),0): err %.2e (tol %.0e) "
             "eta %.15g, %.3f ms (limit 1 ms)",
             ea, kTolShrink, to_string(a.label).c_str(), ta * 1e3, eb, kTolRoot, b.eta, tb * 1e3));
}

void partition_claims() {
  constexpr int kSamples = 10000;
  constexpr double kMaxSeconds = 5.0;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2);
  const PerspectivePair pr(std::make_shared<PowerBase>(2.0), std::make_shared<RootScaling>(0.5, 1.0), 2, 1);
  const PerspectivePair h = persp::testing::huber_sqrt_pair(2);
  int wrong = 0, omega2 = 0, xi13 = 0;
  for (int i = 0; i < kSamples; ++i) {
    const double gamma = uniform(rng, 0.5, 2.0);
    // a third of the samples sit on the line x = 0
    const Vec x = i % 3 == 0 ? Vec{0.0, 0.0} : random_vec(rng, 2);
    const Vec y = random_vec(rng, 1);
    const CaseLabel l = classify(pr, gamma, x, y);
    const CaseLabel expected = !x.is_zero() ? CaseLabel::Omega4
                               : y[0] <= 0.0 ? CaseLabel::Omega1
                                             : CaseLabel::Omega3;
    if (l == CaseLabel::Omega2) ++omega2;
    if (l != expected) ++wrong;
    const CaseLabel m = classify(h, gamma, random_vec(rng, 2), random_vec(rng, 1));
    if (m == CaseLabel::Xi1 || m == CaseLabel::Xi3) ++xi13;
  }
  const double t = seconds_since(t0);
  report(2, "partitions", wrong == 0 && omega2 == 0 && xi13 == 0 && t < kMaxSeconds,
         fmt("%d samples each: power/root mislabels %d (Omega2 %d), huber/sqrt Xi1/Xi3 %d, %.2f s "
             "(limit 5 s)",
             kSamples, wrong, omega2, xi13, t));
}

struct OracleRun {
  double deviation = 0.0;
  double relative_gap = 0.0;
  bool root_case = false;
  double residual = 0.0;
  int iterations = 0;
  double eta_spread = 0.0;
  std::string error;
};

void oracle_and_root_contract() {
  constexpr int kSeeds = 200;
  constexpr double kMaxDev = 5e-4, kGap = 1e-8, kMaxSeconds = 60.0;
  constexpr double kResidual = 1e-10, kEtaAgree = 1e-12;
  constexpr int kMaxIter = 200;

  const auto t0 = Clock::now();
  std::vector<OracleRun> runs(3 * kSeeds);
  parallel_for(3 * kSeeds, [&](int idx) {
    const int k = idx / kSeeds, i = idx % kSeeds;
    OracleRun& out = runs[static_cast<std::size_t>(idx)];
    try {
      std::mt19937_64 rng(static_cast<std::uint64_t>(1000 * k + i));
      const std::size_t n = 1 + static_cast<std::size_t>(i % 3);
      const PerspectivePair pair = kPairs[k].make(n);
      const double gamma = uniform(rng, 0.5, 2.0);
      const Vec x = random_vec(rng, n), y = random_vec(rng, 1);

      const ProxResult r = prox_perspective(pair, gamma, x, y);
      const PairEvaluator f = [&](const Vec& u, const Vec& v) { return perspective_eval(pair, u, v); };
      const auto [u, v] = brute_force_prox(f, gamma, x, y);
      out.deviation = distance(concat(r.p, r.q), concat(u, v));
      out.relative_gap = subgradient_certificate(pair, gamma, x, y, r.p, r.q) /
                         (1.0 + x.squared_norm() + y.squared_norm());

      if (r.label == CaseLabel::Omega4 || r.label == CaseLabel::Xi4) {
        out.root_case = true;
        const bool first = r.label == CaseLabel::Omega4;
        auto solve = [&](const RootConfig& c) {
          return first ? solve_eta_case_i(pair, gamma, x, y, c) : solve_eta_case_iii(pair, gamma, x, y, c);
        };
        const EtaSolution a = solve({});
        out.residual = std::abs(root_function(pair, gamma, x, y, a.eta));
        out.iterations = a.iterations;
        // a second search from brackets far below and far above the default
        for (double hi : {1e-3 * a.bracket_hi, 1e3 * a.bracket_hi}) {
          RootConfig c;
          c.initial_hi = hi;
          const EtaSolution b = solve(c);
          out.eta_spread = std::max(out.eta_spread, std::abs(a.eta - b.eta));
          out.iterations = std::max(out.iterations, b.iterations);
          out.residual = std::max(out.residual, std::abs(root_function(pair, gamma, x, y, b.eta)));
        }
      }
    } catch (const std::exception& e) {
      out.error = e.what();
    }
  });
  const double t = seconds_since(t0);

  bool ok3 = t < kMaxSeconds, ok4 = true;
  std::string d3, d4;
  int root_cases = 0, errors = 0;
  double worst_res = 0.0, worst_spread = 0.0;
  int worst_iter = 0;
  for (int k = 0; k < 3; ++k) {
    double dev = 0.0, gap = 0.0;
    for (int i = 0; i < kSeeds; ++i) {
      const OracleRun& r = runs[static_cast<std::size_t>(k * kSeeds + i)];
      if (!r.error.empty()) {
        ++errors;
        std::printf("  %s seed %d: %s\n", kPairs[k].name, i, r.error.c_str());
        continue;
      }
      dev = std::max(dev, r.deviation);
      gap = std::max(gap, r.relative_gap);
      if (r.root_case) {
        ++root_cases;
        worst_res = std::max(worst_res, r.residual);
        worst_spread = std::max(worst_spread, r.eta_spread);
        worst_iter = std::max(worst_iter, r.iterations);
      }
    }
    ok3 = ok3 && dev <= kMaxDev && gap <= kGap;
    d3 += fmt("%s dev %.2e gap/(1+|in|^2) %.2e; ", kPairs[k].name, dev, gap);
  }
  ok3 = ok3 && errors == 0;
  ok4 = errors == 0 && root_cases > 0 && worst_res <= kResidual && worst_spread <= kEtaAgree &&
        worst_iter <= kMaxIter;
  report(3, "oracle equivalence", ok3,
         d3 + fmt("errors %d, %.1f s (limits: dev 5e-4, gap 1e-8, 60 s)", errors, t));
  report(4, "root-finder contract", ok4,
         fmt("%d root cases: max |T(eta)| %.2e (tol 1e-10), max iterations %d (limit 200), "
             "eta spread over three brackets %.2e (tol 1e-12)",
             root_cases, worst_res, worst_iter, worst_spread));
}

void moreau_identity() {
  constexpr int kSamples = 1000;
  constexpr double kTol = 1e-10;
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i % 3);
    const double gamma = std::exp(uniform(rng, std::log(0.01), std::log(100.0)));
    const Vec x = random_vec(rng, n, -10.0, 10.0);
    const PowerBase pw(uniform(rng, 1.2, 5.0));
    const HuberBase hb(uniform(rng, 0.1, 3.0));
    for (const BaseFunction* b : {static_cast<const BaseFunction*>(&pw), static_cast<const BaseFunction*>(&hb)}) {
      const auto [p, d] = moreau_decompose(*primal_view(*b), gamma, x);
      worst = std::max(worst, (x - p - gamma * d).norm() / (1.0 + x.norm()));
    }
  }
  report(5, "moreau identity", worst <= kTol,
         fmt("%d samples x {power, huber}: max |x - p - gamma d|/(1+|x|) %.2e (tol 1e-10)", kSamples, worst));
}

void value_curves() {
  constexpr int kPoints = 50, kSamples = 100;
  constexpr double kTol = 1e-8;
  std::vector<double> gammas(kPoints);
  for (int i = 0; i < kPoints; ++i) gammas[static_cast<std::size_t>(i)] = std::pow(10.0, -3.0 + 6.0 * i / (kPoints - 1));

  const PowerBase pw(3.0);
  const HuberBase hb(1.0);
  const AbsBase ab;
  const RootScaling rs(0.5, 2.0);
  const SqrtScaling ss(1.0);
  const IdentityIntervalScaling ii;
  struct Named {
    std::string name;
    std::shared_ptr<const ProxProvider> f;
    std::size_t dim;
  };
  const std::vector<Named> fs{
      {"power", primal_view(pw), 2},        {"power*", conjugate_view(pw), 2},
      {"huber", primal_view(hb), 2},        {"huber*", conjugate_view(hb), 2},
      {"abs", primal_view(ab), 2},          {"abs*", conjugate_view(ab), 2},
      {"root envelope", envelope_view(rs), 1}, {"sqrt envelope", envelope_view(ss), 1},
      {"identity envelope", envelope_view(ii), 1},
  };

  std::mt19937_64 rng(6);
  double worst_rise = 0.0, worst_drop = 0.0;
  int infinite = 0;
  for (const Named& nf : fs) {
    for (int s = 0; s < kSamples; ++s) {
      const Vec x = random_vec(rng, nf.dim);
      const auto values = prox_value_curve(*nf.f, x, gammas);
      std::vector<Vec> points;
      for (double g : gammas) points.push_back(scaled_prox(*nf.f, g, x));
      for (std::size_t i = 0; i < gammas.size(); ++i) {
        if (!values[i].is_finite()) {
          ++infinite;
          continue;
        }
        for (std::size_t j = i + 1; j < gammas.size(); ++j) {
          if (!values[j].is_finite()) continue;
          const double vi = values[i].value(), vj = values[j].value();
          worst_rise = std::max(worst_rise, vj - vi);
          const double bound = vi - (points[i] - points[j]).squared_norm() / (gammas[j] - gammas[i]);
          worst_drop = std::max(worst_drop, vj - bound);
        }
      }
    }
  }
  report(6, "monotone value curves", worst_rise <= kTol && worst_drop <= kTol && infinite == 0,
         fmt("%zu functions x %d points x 50 gammas in [1e-3, 1e3]: max rise %.2e, max excess over "
             "the drop bound %.2e (tol 1e-8), infinite values %d",
             fs.size(), kSamples, worst_rise, worst_drop, infinite));
}

void firm_nonexpansiveness() {
  constexpr int kSamples = 1000;
  constexpr double kTol = 1e-10;
  std::mt19937_64 rng(7);
  std::string detail;
  bool ok = true;
  for (const auto& np : kPairs) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kSamples; ++i) {
      const std::size_t n = 1 + static_cast<std::size_t>(i % 3);
      const PerspectivePair pair = np.make(n);
      const double gamma = uniform(rng, 0.5, 2.0);
      const Vec x1 = random_vec(rng, n), y1 = random_vec(rng, 1);
      // half the partners are close by, where round-off matters most
      const double spread = i % 2 == 0 ? 3.0 : 1e-3;
      const Vec x2 = x1 + random_vec(rng, n, -spread, spread), y2 = y1 + random_vec(rng, 1, -spread, spread);
      const ProxResult a = prox_perspective(pair, gamma, x1, y1);
      const ProxResult b = prox_perspective(pair, gamma, x2, y2);
      const Vec dp = concat(a.p, a.q) - concat(b.p, b.q);
      const Vec dz = concat(x1, y1) - concat(x2, y2);
      worst = std::max(worst, dp.squared_norm() - dot(dp, dz));
    }
    ok = ok && worst <= kTol;
    detail += fmt("%s max(|Pu-Pv|^2 - <Pu-Pv,u-v>) %.2e; ", np.name, worst);
  }
  report(7, "firm nonexpansiveness", ok, detail + fmt("%d pairs each (tol 1e-10)", kSamples));
}

void quartic_solver() {
  constexpr int kSamples = 1000;
  constexpr double kQuartic = 1e-9, kStationarity = 1e-10;
  std::mt19937_64 rng(8);
  double worst_q = 0.0, worst_s = 0.0;
  int outside = 0, errors = 0;
  for (int i = 0; i < kSamples; ++i) {
    const double beta = std::exp(uniform(rng, std::log(0.01), std::log(10.0)));
    const double mu = uniform(rng, 0.0, 5.0), y = uniform(rng, -5.0, 5.0);
    try {
      const double q = sqrt_scaling_prox(beta, mu, y);
      if (q < std::min(0.0, y) || q > std::max(0.0, y)) ++outside;
      const double quartic = q * q * q * q - 2 * y * q * q * q + (y * y + beta - mu * mu) * q * q -
                             2 * beta * y * q + beta * y * y;
      worst_q = std::max(worst_q, std::abs(quartic));
      worst_s = std::max(worst_s, std::abs(sqrt_scaling_stationarity(beta, mu, y, q)));
    } catch (const std::exception&) {
      ++errors;
    }
  }
  report(8, "quartic solver", outside == 0 && errors == 0 && worst_q <= kQuartic && worst_s <= kStationarity,
         fmt("%d samples: outside interval %d, errors %d, max quartic residual %.2e (tol 1e-9), max "
             "stationarity %.2e (tol 1e-10)",
             kSamples, outside, errors, worst_q, worst_s));
}

void demo_solver() {
  constexpr double kStep = 1e-6, kMonotone = 1e-9, kMaxSeconds = 2.0;
  constexpr int kMaxIter = 500;
  const auto t0 = Clock::now();
  DemoSpec spec = make_random_demo(30, 3, 0);
  spec.iterations = kMaxIter;
  const PerspectivePair pair = persp::testing::huber_sqrt_pair(3);
  const DemoResult res = run_concomitant_demo(spec, pair);
  const double t = seconds_since(t0);
  int reached = -1;
  double rise = 0.0;
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    if (reached < 0 && res.rows[i].step_norm <= kStep) reached = res.rows[i].iter;
    if (i > 0) rise = std::max(rise, res.rows[i].objective - res.rows[i - 1].objective);
  }
  report(9, "demo solver", reached > 0 && rise <= kMonotone && t < kMaxSeconds,
         fmt("30x3 seed 0: step_norm <= 1e-6 at iteration %d (limit 500), final step %.2e, max "
             "objective rise %.2e (tol 1e-9), %.3f s (limit 2 s)",
             reached, res.rows.back().step_norm, rise, t));
}

}  // namespace

int main() {
  const std::pair<int, std::function<void()>> checks[] = {
      {1, closed_form_reproduction}, {2, partition_claims},    {3, oracle_and_root_contract},
      {5, moreau_identity},          {6, value_curves},        {7, firm_nonexpansiveness},
      {8, quartic_solver},           {9, demo_solver},
  };
  for (const auto& [id, run] : checks) {
    try {
      run();
    } catch (const std::exception& e) {
      report(id, "exception", false, e.what());
    }
  }
  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
