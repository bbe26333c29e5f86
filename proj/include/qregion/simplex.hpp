#pragma once

// Derivative-free Nelder-Mead search with deterministic multi-start.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace qregion {

struct SimplexOptions {
  std::size_t max_iters = 2000;  // per start, including polishing rounds
  double tol = 1e-7;             // spread of objective values at convergence
  double step = 0.5;             // initial simplex edge length
  std::size_t polish_rounds = 3; // simplex re-inflations after convergence
};

struct SimplexResult {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

namespace detail {

template <class F>
double guarded(F& f, const std::vector<double>& x) {
  const double v = f(x);
  return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

// One Nelder-Mead run from an axis-aligned simplex around x0, using the
// dimension-adaptive coefficients of Gao and Han.
template <class F>
SimplexResult nelder_mead_run(F& f, const std::vector<double>& x0, double step,
                              std::size_t max_iters, double tol) {
  const std::size_t n = x0.size();
  const double nd = static_cast<double>(std::max<std::size_t>(n, 1));
  const double alpha = 1.0;
  const double gamma = 1.0 + 2.0 / nd;
  const double rho = 0.75 - 1.0 / (2.0 * nd);
  const double sigma = 1.0 - 1.0 / nd;

  SimplexResult res;
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
  for (std::size_t i = 0; i <= n; ++i) vals[i] = guarded(f, pts[i]);
  res.evaluations = n + 1;

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto point_along = [&](double coef, const std::vector<double>& worst,
                         std::vector<double>& out) {
    for (std::size_t j = 0; j < n; ++j)
      out[j] = centroid[j] + coef * (centroid[j] - worst[j]);
  };

  for (; res.iterations < max_iters; ++res.iterations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back();
    const std::size_t second = order[n > 0 ? n - 1 : 0];

    double xspread = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        xspread = std::max(xspread, std::abs(pts[i][j] - pts[best][j]));
    if (vals[worst] - vals[best] <= tol && xspread <= std::sqrt(tol)) {
      res.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j];
    }
    for (auto& c : centroid) c /= nd;

    point_along(alpha, pts[worst], trial);
    const double fr = guarded(f, trial);
    ++res.evaluations;
    if (fr < vals[best]) {
      point_along(gamma, pts[worst], trial2);
      const double fe = guarded(f, trial2);
      ++res.evaluations;
      if (fe < fr) {
        pts[worst] = trial2;
        vals[worst] = fe;
      } else {
        pts[worst] = trial;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = trial;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    point_along(outside ? rho : -rho, pts[worst], trial2);
    const double fc = guarded(f, trial2);
    ++res.evaluations;
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = trial2;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j)
        pts[i][j] = pts[best][j] + sigma * (pts[i][j] - pts[best][j]);
      vals[i] = guarded(f, pts[i]);
      ++res.evaluations;
    }
  }

  const auto best_it = std::min_element(vals.begin(), vals.end());
  res.x = pts[static_cast<std::size_t>(best_it - vals.begin())];
  res.value = *best_it;
  return res;
}

}  // namespace detail

/// Minimizes `f` from `x0`. After each convergence the simplex is re-inflated
/// around the incumbent; the run stops once a round no longer improves the
/// value by more than `tol` or the iteration budget is spent.
template <class F>
SimplexResult nelder_mead_minimize(F&& f, std::vector<double> x0,
                                   const SimplexOptions& opts = {}) {
  SimplexResult total;
  total.x = std::move(x0);
  total.value = detail::guarded(f, total.x);
  total.evaluations = 1;
  double step = opts.step;
  for (std::size_t round = 0; round <= opts.polish_rounds; ++round) {
    if (total.iterations >= opts.max_iters) break;
    auto r = detail::nelder_mead_run(f, total.x, step, opts.max_iters - total.iterations,
                                     opts.tol);
    total.iterations += r.iterations;
    total.evaluations += r.evaluations;
    const bool improved = r.value < total.value - opts.tol;
    if (r.value < total.value) {
      total.x = std::move(r.x);
      total.value = r.value;
    }
    total.converged = r.converged;
    if (round > 0 && !improved) break;
    step = std::max(opts.step * 0.1, 10.0 * std::sqrt(opts.tol));
  }
  return total;
}

struct MultiStartOptions {
  std::size_t restarts = 32;
  std::uint64_t seed = 0;
  double init_scale = 1.0;  // standard deviation of Gaussian start points
  SimplexOptions simplex;
};

struct MultiStartResult {
  SimplexResult best;
  std::size_t converged_starts = 0;
  std::size_t total_evaluations = 0;
};

/// Independent random generator for restart `index` of a run seeded by `seed`.
inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

/// Maximizes `f` over R^dim from `restarts` Gaussian start points. Each start
/// owns its random stream, so the result does not depend on execution order.
/// `extra_starts` are tried in addition to the random ones.
template <class F>
MultiStartResult maximize_multistart(F&& f, std::size_t dim, const MultiStartOptions& opts,
                                     const std::vector<std::vector<double>>& extra_starts = {}) {
  auto neg = [&f](const std::vector<double>& x) { return -f(x); };
  MultiStartResult out;
  auto consider = [&](SimplexResult r) {
    out.total_evaluations += r.evaluations;
    if (r.converged) ++out.converged_starts;
    if (r.value < out.best.value) out.best = std::move(r);
  };
  for (std::size_t s = 0; s < opts.restarts; ++s) {
    auto rng = stream_rng(opts.seed, s);
    std::normal_distribution<double> gauss(0.0, opts.init_scale);
    std::vector<double> x0(dim);
    for (auto& v : x0) v = gauss(rng);
    consider(nelder_mead_minimize(neg, std::move(x0), opts.simplex));
  }
  for (const auto& x0 : extra_starts) consider(nelder_mead_minimize(neg, x0, opts.simplex));
  out.best.value = -out.best.value;
  return out;
}

}  // namespace qregion
