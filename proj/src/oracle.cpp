#include "persp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace persp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGolden = 0.6180339887498949;

// Minimizes g along a line through t = 0 (g(0) = g0 finite). Returns the best
// t seen; `h` is the initial probe step and is updated for the next call.
template <class G>
double line_search(G&& g, double g0, double& h, double tol) {
  double best_t = 0.0, best_g = g0;
  auto probe = [&](double t) {
    const double v = g(t);
    if (v < best_g) {
      best_g = v;
      best_t = t;
    }
    return v;
  };

  double a = -h, b = h;
  const double gp = probe(h);
  if (gp < g0) {
    double prev = 0.0, t = h, gt = gp;
    for (int k = 0; k < 80; ++k) {
      const double next = t + 2.0 * (t - prev);
      const double gn = probe(next);
      if (!(gn < gt)) {
        a = prev;
        b = next;
        break;
      }
      prev = t;
      t = next;
      gt = gn;
    }
  } else {
    const double gm = probe(-h);
    if (gm < g0) {
      double prev = 0.0, t = -h, gt = gm;
      for (int k = 0; k < 80; ++k) {
        const double next = t + 2.0 * (t - prev);
        const double gn = probe(next);
        if (!(gn < gt)) {
          a = next;
          b = prev;
          break;
        }
        prev = t;
        t = next;
        gt = gn;
      }
    }
  }

  double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
  double gc = probe(c), gd = probe(d);
  while (b - a > tol) {
    if (std::isinf(gc) && std::isinf(gd)) {
      // the domain is an interval containing best_t
      if (best_t < c) {
        b = c;
      } else if (best_t > d) {
        a = d;
      } else {
        a = c;
        b = d;
      }
      c = b - kGolden * (b - a);
      d = a + kGolden * (b - a);
      gc = probe(c);
      gd = probe(d);
    } else if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kGolden * (b - a);
      gc = probe(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kGolden * (b - a);
      gd = probe(d);
    }
  }
  h = std::max(4.0 * std::abs(best_t), 10.0 * tol);
  return best_t;
}

}  // namespace

void OracleConfig::validate() const {
  if (!(radius_factor > 0.0) || coarse_points_per_dim < 2 || !(refine_tol > 0.0) ||
      max_refine_iters <= 0 || max_grid_points < 1) {
    throw std::invalid_argument("OracleConfig: all fields must be positive");
  }
}

std::pair<Vec, Vec> brute_force_prox(const PairEvaluator& f, double gamma, const Vec& x,
                                     const Vec& y, const OracleConfig& cfg) {
  cfg.validate();
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::domain_error("brute_force_prox: gamma must be a finite value > 0");
  }
  const std::size_t n = x.size(), m = y.size();
  const std::size_t dim = n + m;
  const Vec z0 = concat(x, y);

  auto objective = [&](const std::vector<double>& z) {
    Vec u(n), v(m);
    double sq = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      (i < n ? u[i] : v[i - n]) = z[i];
      sq += (z[i] - z0[i]) * (z[i] - z0[i]);
    }
    const ExtReal fv = f(u, v);
    if (fv.is_pos_inf()) return kInf;
    return gamma * fv.value() + 0.5 * sq;
  };

  // coarse grid, per-dimension count odd so that the center is a node
  int k = cfg.coarse_points_per_dim | 1;
  while (k > 3 && std::pow(static_cast<double>(k), static_cast<double>(dim)) >
                      static_cast<double>(cfg.max_grid_points)) {
    k -= 2;
  }
  const double half_width = cfg.radius_factor * (1.0 + z0.norm());
  const double spacing = 2.0 * half_width / (k - 1);

  // each axis also carries the coordinate 0, so the origin is always probed
  std::vector<std::vector<double>> axes(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (int j = 0; j < k; ++j) axes[i].push_back(z0[i] - half_width + j * spacing);
    if (std::abs(z0[i]) < half_width) axes[i].push_back(0.0);
  }

  std::vector<double> z(dim), best;
  double best_val = kInf;
  std::vector<std::size_t> idx(dim, 0);
  for (;;) {
    for (std::size_t i = 0; i < dim; ++i) z[i] = axes[i][idx[i]];
    const double v = objective(z);
    if (v < best_val) {
      best_val = v;
      best = z;
    }
    std::size_t i = 0;
    while (i < dim && ++idx[i] == axes[i].size()) idx[i++] = 0;
    if (i == dim) break;
  }
  if (!std::isfinite(best_val)) throw OracleError("brute_force_prox: no feasible grid point");

  // refinement
  z = best;
  double fz = best_val;
  const double line_tol = 0.1 * cfg.refine_tol;
  const std::size_t random_dirs = 2 * dim;
  // tilts 4^-k down to ~1e-4, both signs
  std::vector<double> tilts;
  for (double t = 0.5; t > 1e-4; t /= 4.0) {
    tilts.push_back(t);
    tilts.push_back(-t);
  }
  std::vector<double> steps(dim + 4 + random_dirs + 2 * tilts.size(), spacing);
  std::vector<double> dir(dim), trial(dim);
  // random directions get past kinks where no axis direction descends
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal(0.0, 1.0);

  auto search = [&](std::size_t slot) {
    const double len = std::sqrt(std::inner_product(dir.begin(), dir.end(), dir.begin(), 0.0));
    if (!(len > 0.0)) return;
    for (double& d : dir) d /= len;
    auto g = [&](double t) {
      for (std::size_t i = 0; i < dim; ++i) trial[i] = z[i] + t * dir[i];
      return objective(trial);
    };
    const double t = line_search(g, fz, steps[slot], line_tol);
    if (t != 0.0) {
      for (std::size_t i = 0; i < dim; ++i) z[i] += t * dir[i];
      fz = objective(z);
    }
  };

  int quiet_sweeps = 0;
  for (int it = 0; it < cfg.max_refine_iters && quiet_sweeps < 3; ++it) {
    const std::vector<double> start = z;
    for (std::size_t c = 0; c < dim; ++c) {
      std::fill(dir.begin(), dir.end(), 0.0);
      dir[c] = 1.0;
      search(c);
    }
    for (std::size_t r = 0; r < random_dirs; ++r) {
      for (double& d : dir) d = normal(rng);
      search(dim + 4 + r);
    }
    for (std::size_t i = 0; i < dim; ++i) dir[i] = z0[i] - z[i];
    search(dim);
    // back towards the input in one block only
    for (std::size_t i = 0; i < dim; ++i) dir[i] = i < n ? z0[i] - z[i] : 0.0;
    search(dim + 2);
    for (std::size_t i = 0; i < dim; ++i) dir[i] = i < n ? 0.0 : z0[i] - z[i];
    search(dim + 3);
    // the same, tilted slightly into the other block: at a corner of the
    // domain (u = 0 feasible only with v on its boundary) descent lives in a
    // cone around these whose width shrinks with ||x|| / |y|
    std::vector<double> bu(dim, 0.0), bv(dim, 0.0);
    double nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      (i < n ? bu : bv)[i] = z0[i] - z[i];
      (i < n ? nu : nv) += (z0[i] - z[i]) * (z0[i] - z[i]);
    }
    if (nu == 0.0) bu[0] = nu = 1.0;
    if (nv == 0.0) bv[n] = nv = 1.0;
    nu = std::sqrt(nu);
    nv = std::sqrt(nv);
    std::size_t slot = dim + 4 + random_dirs;
    for (double tilt : tilts) {
      for (std::size_t i = 0; i < dim; ++i) dir[i] = bu[i] / nu + tilt * bv[i] / nv;
      search(slot++);
      for (std::size_t i = 0; i < dim; ++i) dir[i] = bv[i] / nv + tilt * bu[i] / nu;
      search(slot++);
    }
    for (std::size_t i = 0; i < dim; ++i) dir[i] = z[i] - start[i];
    search(dim + 1);

    double move = 0.0;
    for (std::size_t i = 0; i < dim; ++i) move += (z[i] - start[i]) * (z[i] - start[i]);
    quiet_sweeps = std::sqrt(move) < cfg.refine_tol ? quiet_sweeps + 1 : 0;
  }

  for (std::size_t i = 0; i < dim; ++i) {
    if (!(std::abs(z[i] - z0[i]) < half_width)) {
      throw OracleError("brute_force_prox: refined point on the box boundary");
    }
  }
  Vec u(n), v(m);
  for (std::size_t i = 0; i < dim; ++i) (i < n ? u[i] : v[i - n]) = z[i];
  return {u, v};
}

double subgradient_certificate(const PerspectivePair& pair, double gamma, const Vec& x,
                               const Vec& y, const Vec& p, const Vec& q) {
  return prox_certificate_gap(pair, gamma, x, y, p, q);
}

}  // namespace persp
