#include "sharpwt/op1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sharpwt/detail/numeric.hpp"

namespace sharpwt {

namespace {

std::vector<double> abs_values(const GridFn& f) {
  std::vector<double> a(f.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(f[i]);
  return a;
}

// Reflection x -> -x of boundaries and cell data, so Minus kernels reuse the Plus ones.
std::vector<double> reflect_boundaries(std::span<const double> x) {
  const std::size_t n = x.size() - 1;
  std::vector<double> r(n + 1);
  for (std::size_t k = 0; k <= n; ++k) r[k] = -x[n - k];
  return r;
}

std::vector<double> reversed(std::span<const double> v) { return std::vector<double>(v.rbegin(), v.rend()); }

// S[i] = sum_{k >= i} a_k width_k, S[n] = 0, carried as an unevaluated sum hi + lo so that
// window sums S[i] - S[k] keep their relative accuracy when S[i] is much larger.
struct SuffixSums {
  std::vector<double> hi, lo;
  double window(std::size_t i, std::size_t k) const { return (hi[i] - hi[k]) + (lo[i] - lo[k]); }
};

SuffixSums suffix_sums(std::span<const double> x, std::span<const double> a) {
  const std::size_t n = a.size();
  SuffixSums s{std::vector<double>(n + 1, 0.0), std::vector<double>(n + 1, 0.0)};
  for (std::size_t i = n; i-- > 0;) {
    const double w = x[i + 1] - x[i];
    const double t = a[i] * w;
    const double t_err = std::fma(a[i], w, -t);
    const double sum = s.hi[i + 1] + t;
    const double bb = sum - s.hi[i + 1];
    const double sum_err = (s.hi[i + 1] - (sum - bb)) + (t - bb);
    s.hi[i] = sum;
    s.lo[i] = s.lo[i + 1] + sum_err + t_err;
  }
  return s;
}

double window_slope(std::span<const double> x, const SuffixSums& s, std::size_t i, std::size_t k) {
  return s.window(i, k) / (x[k] - x[i]);
}

std::vector<double> plus_brute(std::span<const double> x, std::span<const double> a) {
  const std::size_t n = a.size();
  const auto s = suffix_sums(x, a);
  std::vector<double> out(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t i = 0; i < n; ++i) {
    double best = a[i];
    for (std::size_t k = i + 1; k <= n; ++k) best = std::max(best, window_slope(x, s, i, k));
    out[i] = best;
  }
  return out;
}

// Upper hull of the points (x_k, -S_k), k > i, swept right to left; the tangent from
// (x_i, -S_i) is the window end with the steepest average.
std::vector<double> plus_hull(std::span<const double> x, std::span<const double> a) {
  const std::size_t n = a.size();
  const auto s = suffix_sums(x, a);
  std::vector<double> out(n);
  std::vector<std::size_t> hull;
  hull.reserve(n + 1);
  hull.push_back(n);
  // v1 is not on the hull of {i} + rest if slope(i, v1) < slope(v1, v2).
  auto below = [&](std::size_t i, std::size_t v1, std::size_t v2) {
    const long double lhs = static_cast<long double>(s.window(i, v1)) * static_cast<long double>(x[v2] - x[v1]);
    const long double rhs = static_cast<long double>(s.window(v1, v2)) * static_cast<long double>(x[v1] - x[i]);
    return lhs < rhs;
  };
  for (std::size_t i = n; i-- > 0;) {
    while (hull.size() >= 2 && below(i, hull[hull.size() - 1], hull[hull.size() - 2])) hull.pop_back();
    double best = window_slope(x, s, i, hull.back());
    // Collinear or nearly collinear successors can round to a larger slope.
    for (std::size_t t = hull.size() - 1; t-- > 0;) {
      const double cand = window_slope(x, s, i, hull[t]);
      if (cand < best * (1.0 - 1e-14)) break;
      best = std::max(best, cand);
    }
    out[i] = std::max(a[i], best);
    hull.push_back(i);
  }
  return out;
}

std::vector<double> plus_frac(std::span<const double> x, std::span<const double> a, double alpha) {
  const std::size_t n = a.size();
  const auto s = suffix_sums(x, a);
  const double e = 1.0 - alpha;
  std::vector<double> out(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t i = 0; i < n; ++i) {
    double best = alpha == 0.0 ? a[i] : 0.0;
    for (std::size_t k = i + 1; k <= n; ++k) {
      const double len = x[k] - x[i];
      const double den = alpha == 0.0 ? len : std::pow(len, e);
      // s[i] bounds every later window sum and den only grows, so nothing later can win.
      if (s.window(i, n) / den < best) break;
      best = std::max(best, s.window(i, k) / den);
    }
    out[i] = best;
  }
  return out;
}

template <class Kernel>
GridFn one_sided(const GridFn& f, Side side, Kernel&& kernel) {
  const auto& xb = f.grid().boundaries();
  const auto a = abs_values(f);
  if (side == Side::Plus) return f.with_values(kernel(std::span<const double>(xb), std::span<const double>(a)));
  const auto xr = reflect_boundaries(xb);
  const auto ar = reversed(a);
  auto out = kernel(std::span<const double>(xr), std::span<const double>(ar));
  std::reverse(out.begin(), out.end());
  return f.with_values(std::move(out));
}

}  // namespace

std::vector<double> anchors(const Grid1D& g, Side side) {
  std::vector<double> pts(g.size());
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = side == Side::Plus ? g.boundary(i) : g.boundary(i + 1);
  return pts;
}

GridFn maximal_oneside(const GridFn& f, Side side, MaxAlgo algo) {
  return one_sided(f, side, [algo](std::span<const double> x, std::span<const double> a) {
    return algo == MaxAlgo::Brute ? plus_brute(x, a) : plus_hull(x, a);
  });
}

GridFn frac_maximal_oneside(const GridFn& f, double alpha, Side side) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
  return one_sided(f, side, [alpha](std::span<const double> x, std::span<const double> a) {
    return plus_frac(x, a, alpha);
  });
}

GridFn maximal_twosided(const GridFn& f, MaxAlgo algo) {
  const auto& x = f.grid().boundaries();
  const auto a = abs_values(f);
  const std::size_t n = a.size();
  // Window [x_j, x_k] is summed cell by cell from j, so a constant input reproduces itself.
  auto window_averages = [&](std::size_t j, std::vector<double>& avg) {
    double mass = 0.0, length = 0.0;
    for (std::size_t k = j; k < n; ++k) {
      const double w = x[k + 1] - x[k];
      mass += a[k] * w;
      length += w;
      avg[k] = mass / length;
    }
  };
  std::vector<double> out(a);
  if (algo == MaxAlgo::Brute) {
#pragma omp parallel
    {
      std::vector<double> avg(n);
#pragma omp for schedule(dynamic, 4)
      for (std::size_t i = 0; i < n; ++i) {
        double best = a[i];
        for (std::size_t j = 0; j <= i; ++j) {
          window_averages(j, avg);
          for (std::size_t k = i; k < n; ++k) best = std::max(best, avg[k]);
        }
        out[i] = best;
      }
    }
    return f.with_values(std::move(out));
  }
#pragma omp parallel
  {
    std::vector<double> mine(a);
    std::vector<double> avg(n);
#pragma omp for schedule(dynamic, 16) nowait
    for (std::size_t j = 0; j < n; ++j) {
      window_averages(j, avg);
      double run = 0.0;
      for (std::size_t k = n; k > j; --k) {
        run = std::max(run, avg[k - 1]);
        mine[k - 1] = std::max(mine[k - 1], run);
      }
    }
#pragma omp critical(sharpwt_twosided_merge)
    for (std::size_t i = 0; i < n; ++i) out[i] = std::max(out[i], mine[i]);
  }
  return f.with_values(std::move(out));
}

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

// Contribution weight of cell j to the potential at point t, i.e.
// int_{cell j, s > t} (s - t)^{alpha-1} ds (Weyl) or int_{cell j, s < t} (t - s)^{alpha-1} ds (RL).
double kernel_mass(std::span<const double> x, std::size_t j, double t, double alpha, PotentialKind kind) {
  const double lo = x[j];
  const double hi = x[j + 1];
  const double e = alpha - 1.0;
  if (kind == PotentialKind::Weyl) {
    if (hi <= t) return 0.0;
    if (lo >= t) return detail::power_integral(lo - t, hi - lo, e);
    return detail::power_integral(0.0, hi - t, e);
  }
  if (lo >= t) return 0.0;
  if (hi <= t) return detail::power_integral(t - hi, hi - lo, e);
  return detail::power_integral(0.0, t - lo, e);
}

// Same quantity at the center of cell i, with the half-cell distances taken from the boundaries.
double center_kernel_mass(std::span<const double> x, std::size_t i, std::size_t j, double alpha,
                          PotentialKind kind) {
  const double c = 0.5 * (x[i] + x[i + 1]);
  const double e = alpha - 1.0;
  if (kind == PotentialKind::Weyl) {
    if (j < i) return 0.0;
    if (j == i) return detail::power_integral(0.0, x[i + 1] - c, e);
    return detail::power_integral(x[j] - c, x[j + 1] - x[j], e);
  }
  if (j > i) return 0.0;
  if (j == i) return detail::power_integral(0.0, c - x[i], e);
  return detail::power_integral(c - x[j + 1], x[j + 1] - x[j], e);
}

}  // namespace

GridFn potential_oneside(const GridFn& f, double alpha, PotentialKind kind) {
  check_alpha(alpha);
  const auto& x = f.grid().boundaries();
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    const std::size_t j0 = kind == PotentialKind::Weyl ? i : 0;
    const std::size_t j1 = kind == PotentialKind::Weyl ? n : i + 1;
    for (std::size_t j = j0; j < j1; ++j) {
      if (f[j] == 0.0) continue;
      s += f[j] * center_kernel_mass(x, i, j, alpha, kind);
    }
    out[i] = s;
  }
  return f.with_values(std::move(out));
}

std::vector<double> potential_at(const GridFn& f, double alpha, PotentialKind kind, std::span<const double> points) {
  check_alpha(alpha);
  const auto& x = f.grid().boundaries();
  const std::size_t n = f.size();
  std::vector<double> out(points.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double t = points[k];
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (f[j] == 0.0) continue;
      s += f[j] * kernel_mass(x, j, t, alpha, kind);
    }
    out[k] = s;
  }
  return out;
}

std::vector<double> potential_matrix(const Grid1D& g, double alpha, PotentialKind kind) {
  check_alpha(alpha);
  const auto& x = g.boundaries();
  const std::size_t n = g.size();
  std::vector<double> m(n * n, 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = center_kernel_mass(x, i, j, alpha, kind);
  }
  return m;
}

GridFn hilbert(const GridFn& f) {
  const auto& x = f.grid().boundaries();
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    const double c = 0.5 * (x[i] + x[i + 1]);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || f[j] == 0.0) continue;
      const double w = x[j + 1] - x[j];
      // int_{cell j} dt / (c - t): negative to the right of c, positive to the left.
      if (j > i) s -= f[j] * std::log1p(w / (x[j] - c));
      else s += f[j] * std::log1p(w / (c - x[j + 1]));
    }
    out[i] = s;
  }
  return f.with_values(std::move(out));
}

}  // namespace sharpwt
