#include "sharpwt/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sharpwt::reference {

namespace {

double cell_sum(std::span<const double> d, const Grid1D& g, std::size_t first, std::size_t last) {
  double s = 0.0;
  for (std::size_t c = first; c < last; ++c) s += d[c] * g.width(c);
  return s;
}

// Plus windows [x_b - m, x_b) and [x_b, x_b + m) in cells; Minus swaps which density sits left.
double adjacent_uniform(const Grid1D& g, std::span<const double> left, std::span<const double> right, double pl,
                        double pr) {
  const std::size_t n = g.size();
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, std::pow(left[i], pl) * std::pow(right[i], pr));
  for (std::size_t b = 1; b < n; ++b) {
    for (std::size_t m = 1; m <= std::min(b, n - b); ++m) {
      const double len = g.boundary(b) - g.boundary(b - m);
      const double lenr = g.boundary(b + m) - g.boundary(b);
      const double al = cell_sum(left, g, b - m, b) / len;
      const double ar = cell_sum(right, g, b, b + m) / lenr;
      best = std::max(best, std::pow(al, pl) * std::pow(ar, pr));
    }
  }
  return best;
}

}  // namespace

double ap(const Weight& w) {
  const auto& g = w.base().grid();
  const std::size_t n = g.size();
  const double pm1 = w.p() - 1.0;
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k <= n; ++k) {
      const double len = g.boundary(k) - g.boundary(j);
      const double aw = cell_sum(w.base().values(), g, j, k) / len;
      const double as = cell_sum(w.dual().values(), g, j, k) / len;
      best = std::max(best, aw * std::pow(as, pm1));
    }
  }
  return best;
}

double ap_oneside_uniform(const Weight& w, Side side) {
  const auto& g = w.base().grid();
  const auto b = w.base().values();
  const auto s = w.dual().values();
  if (side == Side::Plus) return adjacent_uniform(g, b, s, 1.0, w.p() - 1.0);
  return adjacent_uniform(g, s, b, w.p() - 1.0, 1.0);
}

double apq_oneside_uniform(const GridFn& w, const Exponents& e, Side side) {
  std::vector<double> a(w.size());
  std::vector<double> b(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    a[i] = std::pow(w[i], e.q());
    b[i] = std::pow(w[i], -e.p_conj());
  }
  const double r = e.q() / e.p_conj();
  if (side == Side::Plus) return adjacent_uniform(w.grid(), a, b, 1.0, r);
  return adjacent_uniform(w.grid(), b, a, r, 1.0);
}

std::vector<double> frac_maximal_oneside(const GridFn& f, double alpha, Side side) {
  const auto& g = f.grid();
  const std::size_t n = f.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double best = alpha == 0.0 ? std::abs(f[i]) : 0.0;
    double s = 0.0;
    if (side == Side::Plus) {
      for (std::size_t k = i; k < n; ++k) {
        s += std::abs(f[k]) * g.width(k);
        best = std::max(best, s / std::pow(g.boundary(k + 1) - g.boundary(i), 1.0 - alpha));
      }
    } else {
      for (std::size_t k = i + 1; k-- > 0;) {
        s += std::abs(f[k]) * g.width(k);
        best = std::max(best, s / std::pow(g.boundary(i + 1) - g.boundary(k), 1.0 - alpha));
      }
    }
    out[i] = best;
  }
  return out;
}

std::vector<double> maximal_oneside(const GridFn& f, Side side) { return frac_maximal_oneside(f, 0.0, side); }

std::vector<double> maximal_twosided(const GridFn& f) {
  const auto& g = f.grid();
  const std::size_t n = f.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::abs(f[i]);
    for (std::size_t j = 0; j <= i; ++j) {
      for (std::size_t k = i + 1; k <= n; ++k) {
        double s = 0.0;
        for (std::size_t c = j; c < k; ++c) s += std::abs(f[c]) * g.width(c);
        best = std::max(best, s / (g.boundary(k) - g.boundary(j)));
      }
    }
    out[i] = best;
  }
  return out;
}

double potential_indicator(double a, double b, double t, double alpha, PotentialKind kind) {
  // Weyl: int_{max(a,t)}^{b} (s-t)^{alpha-1} ds; RL: int_a^{min(b,t)} (t-s)^{alpha-1} ds.
  if (kind == PotentialKind::Weyl) {
    if (t >= b) return 0.0;
    const double lo = std::max(a, t);
    return (std::pow(b - t, alpha) - std::pow(lo - t, alpha)) / alpha;
  }
  if (t <= a) return 0.0;
  const double hi = std::min(b, t);
  return (std::pow(t - a, alpha) - std::pow(t - hi, alpha)) / alpha;
}

double hilbert_indicator(double a, double b, double t) { return std::log(std::abs(t - a) / std::abs(t - b)); }

std::vector<double> strong_maximal(const GridFn2D& f) {
  const auto& g = f.grid();
  const std::size_t nx = g.nx();
  const std::size_t ny = g.ny();
  std::vector<double> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = std::abs(f[k]);
  for (std::size_t i0 = 0; i0 < nx; ++i0) {
    for (std::size_t i1 = i0; i1 < nx; ++i1) {
      for (std::size_t j0 = 0; j0 < ny; ++j0) {
        for (std::size_t j1 = j0; j1 < ny; ++j1) {
          double s = 0.0;
          for (std::size_t j = j0; j <= j1; ++j) {
            for (std::size_t i = i0; i <= i1; ++i) s += std::abs(f.at(i, j)) * g.area(i, j);
          }
          const double area = (g.gx().boundary(i1 + 1) - g.gx().boundary(i0)) * (g.gy().boundary(j1 + 1) - g.gy().boundary(j0));
          const double avg = s / area;
          for (std::size_t j = j0; j <= j1; ++j) {
            for (std::size_t i = i0; i <= i1; ++i) out[g.index(i, j)] = std::max(out[g.index(i, j)], avg);
          }
        }
      }
    }
  }
  return out;
}

double glo_uniform(const GridFn& v, const GridFn& w, const Exponents& e, Side side) {
  const auto& g = w.grid();
  const std::size_t n = g.size();
  const double pc = e.p_conj();
  const double k = (e.alpha() - 1.0) * pc;
  std::vector<double> sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = std::pow(w[i], 1.0 - pc);
  double best = 0.0;
  for (std::size_t a = 1; a < n; ++a) {
    for (std::size_t m = 1; m <= std::min(a, n - a); ++m) {
      const double local = cell_sum(v.values(), g, a - m, a + m);
      double tail = 0.0;
      const double xa = g.boundary(a);
      if (side == Side::Plus) {
        for (std::size_t c = a + m; c < n; ++c) {
          tail += sigma[c] * (std::pow(g.boundary(c + 1) - xa, k + 1.0) - std::pow(g.boundary(c) - xa, k + 1.0)) / (k + 1.0);
        }
      } else {
        for (std::size_t c = 0; c < a - m; ++c) {
          tail += sigma[c] * (std::pow(xa - g.boundary(c), k + 1.0) - std::pow(xa - g.boundary(c + 1), k + 1.0)) / (k + 1.0);
        }
      }
      best = std::max(best, std::pow(local, 1.0 / e.q()) * std::pow(tail, 1.0 / pc));
    }
  }
  return best;
}

}  // namespace sharpwt::reference
