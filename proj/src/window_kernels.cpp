#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sharpwt/detail/kernels.hpp"

namespace sharpwt::detail {

namespace {

void check_sizes(std::span<const double> x, std::span<const double> a, std::span<const double> b) {
  if (x.size() < 2 || a.size() + 1 != x.size() || b.size() + 1 != x.size()) {
    throw std::invalid_argument("density length does not match the grid");
  }
}

}  // namespace

AnchorSup adjacent_sup(std::span<const double> x, std::span<const double> dl, std::span<const double> dr,
                       FastPow pl, FastPow pr) {
  check_sizes(x, dl, dr);
  const std::size_t n = dl.size();
  Best<AnchorKey> best;
#pragma omp parallel
  {
    Best<AnchorKey> local;
#pragma omp for schedule(static) nowait
    for (std::size_t i = 0; i < n; ++i) {
      local.offer(pl(dl[i]) * pr(dr[i]), AnchorKey{i, kDegenerate});
    }
#pragma omp for schedule(dynamic, 8) nowait
    for (std::size_t a = 1; a < n; ++a) {
      sweep_adjacent(x, dl, dr, a, [&](const AdjacentStep& s) {
        local.offer(pl(s.left_integral / s.hl) * pr(s.right_integral / s.hr), AnchorKey{a, s.step});
        return true;
      });
    }
#pragma omp critical(sharpwt_adjacent_sup)
    best.merge(local);
  }
  double h = 0.0;
  adjacent_value(x, dl, dr, pl, pr, best.key, &h);
  return AnchorSup{best.value, best.key, h};
}

double adjacent_value(std::span<const double> x, std::span<const double> dl, std::span<const double> dr,
                      FastPow pl, FastPow pr, AnchorKey key, double* h) {
  check_sizes(x, dl, dr);
  if (key.step == kDegenerate) {
    if (h) *h = 0.0;
    return pl(dl[key.anchor]) * pr(dr[key.anchor]);
  }
  double value = std::nan("");
  sweep_adjacent(x, dl, dr, key.anchor, [&](const AdjacentStep& s) {
    if (s.step != key.step) return true;
    value = pl(s.left_integral / s.hl) * pr(s.right_integral / s.hr);
    if (h) *h = s.h;
    return false;
  });
  return value;
}

IntervalSup interval_sup(std::span<const double> x, std::span<const double> a, std::span<const double> b,
                         FastPow pa, FastPow pb) {
  check_sizes(x, a, b);
  const std::size_t n = a.size();
  Best<IntervalKey> best;
#pragma omp parallel
  {
    Best<IntervalKey> local;
#pragma omp for schedule(dynamic, 8) nowait
    for (std::size_t j = 0; j < n; ++j) {
      double sa = 0.0;
      double sb = 0.0;
      for (std::size_t k = j; k < n; ++k) {
        const double w = x[k + 1] - x[k];
        sa += a[k] * w;
        sb += b[k] * w;
        const double len = x[k + 1] - x[j];
        local.offer(pa(sa / len) * pb(sb / len), IntervalKey{j, k});
      }
    }
#pragma omp critical(sharpwt_interval_sup)
    best.merge(local);
  }
  return IntervalSup{best.value, best.key};
}

double interval_value(std::span<const double> x, std::span<const double> a, std::span<const double> b,
                      FastPow pa, FastPow pb, IntervalKey key) {
  check_sizes(x, a, b);
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t k = key.first; k <= key.last; ++k) {
    const double w = x[k + 1] - x[k];
    sa += a[k] * w;
    sb += b[k] * w;
  }
  const double len = x[key.last + 1] - x[key.first];
  return pa(sa / len) * pb(sb / len);
}

namespace {

// Suffix sums T[c] = sum_{c' >= c} tail_c' * int_{cell c'} (t - x_a)^e dt for c > a, starting far away.
void tail_sums(std::span<const double> x, std::span<const double> tail, std::size_t a, double e,
               std::vector<double>& t) {
  const std::size_t n = tail.size();
  t.assign(n + 1, 0.0);
  for (std::size_t c = n; c-- > a + 1;) {
    const double term = tail[c] == 0.0 ? 0.0 : tail[c] * power_integral(x[c] - x[a], x[c + 1] - x[c], e);
    t[c] = t[c + 1] + term;
  }
}

template <class Visit>
void sweep_tail(std::span<const double> x, std::span<const double> local, std::span<const double> tail,
                double e, std::size_t a, std::vector<double>& t, Visit&& visit) {
  tail_sums(x, tail, a, e, t);
  sweep_adjacent(x, local, local, a, [&](const AdjacentStep& s) {
    double tl;
    if (s.right_aligned) {
      tl = t[s.right_cell + 1];
    } else {
      const std::size_t c = s.right_cell;
      tl = t[c + 1] + (tail[c] == 0.0 ? 0.0 : tail[c] * power_integral(s.hr, s.right_rest, e));
    }
    return visit(s, s.left_integral + s.right_integral, tl);
  });
}

}  // namespace

AnchorSup right_tail_sup(std::span<const double> x, std::span<const double> local, std::span<const double> tail,
                         double kernel_exp, FastPow plocal, FastPow ptail) {
  check_sizes(x, local, tail);
  if (!(kernel_exp < -1.0)) throw std::invalid_argument("tail kernel exponent must be < -1");
  const std::size_t n = local.size();
  Best<AnchorKey> best;
#pragma omp parallel
  {
    Best<AnchorKey> mine;
    std::vector<double> t;
#pragma omp for schedule(dynamic, 4) nowait
    for (std::size_t a = 1; a < n; ++a) {
      sweep_tail(x, local, tail, kernel_exp, a, t, [&](const AdjacentStep& s, double loc, double tl) {
        mine.offer(plocal(loc) * ptail(tl), AnchorKey{a, s.step});
        return true;
      });
    }
#pragma omp critical(sharpwt_tail_sup)
    best.merge(mine);
  }
  if (!best.valid) return AnchorSup{0.0, AnchorKey{}, 0.0};
  double h = 0.0;
  right_tail_value(x, local, tail, kernel_exp, plocal, ptail, best.key, &h);
  return AnchorSup{best.value, best.key, h};
}

double right_tail_value(std::span<const double> x, std::span<const double> local, std::span<const double> tail,
                        double kernel_exp, FastPow plocal, FastPow ptail, AnchorKey key, double* h) {
  check_sizes(x, local, tail);
  std::vector<double> t;
  double value = std::nan("");
  sweep_tail(x, local, tail, kernel_exp, key.anchor, t, [&](const AdjacentStep& s, double loc, double tl) {
    if (s.step != key.step) return true;
    value = plocal(loc) * ptail(tl);
    if (h) *h = s.h;
    return false;
  });
  return value;
}

namespace {

// Visits rectangles with lower-left cell (i0, j0), accumulating column sums outward so that
// each rectangle integral is a sum of positive terms in a fixed order.
template <class Visit>
void sweep_rectangles(std::span<const double> x, std::span<const double> y, std::span<const double> a,
                      std::span<const double> b, std::size_t i0, std::size_t j0, std::vector<double>& ca,
                      std::vector<double>& cb, Visit&& visit) {
  const std::size_t nx = x.size() - 1;
  const std::size_t ny = y.size() - 1;
  ca.assign(nx, 0.0);
  cb.assign(nx, 0.0);
  for (std::size_t j1 = j0; j1 < ny; ++j1) {
    const double hy = y[j1 + 1] - y[j1];
    for (std::size_t i = i0; i < nx; ++i) {
      ca[i] += a[j1 * nx + i] * hy;
      cb[i] += b[j1 * nx + i] * hy;
    }
    const double ly = y[j1 + 1] - y[j0];
    double sa = 0.0;
    double sb = 0.0;
    for (std::size_t i1 = i0; i1 < nx; ++i1) {
      const double hx = x[i1 + 1] - x[i1];
      sa += ca[i1] * hx;
      sb += cb[i1] * hx;
      const double area = (x[i1 + 1] - x[i0]) * ly;
      if (!visit(RectKey{i0, i1, j0, j1}, sa / area, sb / area)) return;
    }
  }
}

}  // namespace

RectSup rect_sup(std::span<const double> x, std::span<const double> y, std::span<const double> a,
                 std::span<const double> b, FastPow pa, FastPow pb) {
  const std::size_t nx = x.size() - 1;
  const std::size_t ny = y.size() - 1;
  if (a.size() != nx * ny || b.size() != nx * ny) throw std::invalid_argument("density length does not match the grid");
  Best<RectKey> best;
#pragma omp parallel
  {
    Best<RectKey> local;
    std::vector<double> ca;
    std::vector<double> cb;
#pragma omp for collapse(2) schedule(dynamic, 4) nowait
    for (std::size_t j0 = 0; j0 < ny; ++j0) {
      for (std::size_t i0 = 0; i0 < nx; ++i0) {
        sweep_rectangles(x, y, a, b, i0, j0, ca, cb, [&](const RectKey& k, double va, double vb) {
          local.offer(pa(va) * pb(vb), k);
          return true;
        });
      }
    }
#pragma omp critical(sharpwt_rect_sup)
    best.merge(local);
  }
  return RectSup{best.value, best.key};
}

double rect_value(std::span<const double> x, std::span<const double> y, std::span<const double> a,
                  std::span<const double> b, FastPow pa, FastPow pb, RectKey key) {
  std::vector<double> ca;
  std::vector<double> cb;
  double value = std::nan("");
  sweep_rectangles(x, y, a, b, key.i0, key.j0, ca, cb, [&](const RectKey& k, double va, double vb) {
    if (k.i1 != key.i1 || k.j1 != key.j1) return true;
    value = pa(va) * pb(vb);
    return false;
  });
  return value;
}

namespace {

// Primitive F(X, Y) = int_{x_0}^{X} int_{y_0}^{Y} d of a piecewise-constant density,
// evaluated at points given as (cell, offset) on each axis.
class Primitive2D {
 public:
  Primitive2D(std::span<const double> x, std::span<const double> y, std::span<const double> d)
      : nx_(x.size() - 1), ny_(y.size() - 1), d_(d) {
    p_.assign((nx_ + 1) * (ny_ + 1), 0.0L);
    cy_.assign((nx_ + 1) * (ny_ + 1), 0.0L);
    rx_.assign((nx_ + 1) * (ny_ + 1), 0.0L);
    for (std::size_t j = 0; j < ny_; ++j) {
      const long double hy = y[j + 1] - y[j];
      for (std::size_t i = 0; i < nx_; ++i) {
        const long double hx = x[i + 1] - x[i];
        const long double di = d[j * nx_ + i];
        cy_[(j + 1) * (nx_ + 1) + i] = cy_[j * (nx_ + 1) + i] + di * hy;
        rx_[j * (nx_ + 1) + i + 1] = rx_[j * (nx_ + 1) + i] + di * hx;
      }
    }
    for (std::size_t j = 0; j <= ny_; ++j) {
      for (std::size_t i = 0; i < nx_; ++i) {
        p_[j * (nx_ + 1) + i + 1] = p_[j * (nx_ + 1) + i] + cy_[j * (nx_ + 1) + i] * static_cast<long double>(x[i + 1] - x[i]);
      }
    }
  }

  long double operator()(AxisPoint px, AxisPoint py) const {
    const std::size_t k = py.cell * (nx_ + 1) + px.cell;
    long double v = p_[k];
    if (px.offset != 0.0) v += px.offset * cy_[k];
    if (py.offset != 0.0) v += py.offset * rx_[k];
    if (px.offset != 0.0 && py.offset != 0.0) {
      v += static_cast<long double>(px.offset) * py.offset * d_[py.cell * nx_ + px.cell];
    }
    return v;
  }

 private:
  std::size_t nx_;
  std::size_t ny_;
  std::span<const double> d_;
  // Extended precision: box integrals are differences of these primitives.
  std::vector<long double> p_;
  std::vector<long double> cy_;  // int of column i over y in [y_0, Y_j]
  std::vector<long double> rx_;  // int of row j over x in [x_0, X_i]
};

double box_integral(const Primitive2D& f, AxisPoint x0, AxisPoint x1, AxisPoint y0, AxisPoint y1) {
  return static_cast<double>((f(x1, y1) - f(x0, y1)) - (f(x1, y0) - f(x0, y0)));
}

std::vector<AdjacentStep> axis_steps(std::span<const double> x, std::size_t a) {
  std::vector<double> ones(x.size() - 1, 1.0);
  std::vector<AdjacentStep> steps;
  sweep_adjacent(x, ones, ones, a, [&](const AdjacentStep& s) {
    steps.push_back(s);
    return true;
  });
  return steps;
}

double corner_candidate(const Primitive2D& fl, const Primitive2D& fr, std::size_t ax, std::size_t ay,
                        const AdjacentStep& sx, const AdjacentStep& sy, FastPow pl, FastPow pr) {
  const AxisPoint cx{ax, 0.0};
  const AxisPoint cy{ay, 0.0};
  const double il = box_integral(fl, sx.left_end, cx, sy.left_end, cy);
  const double ir = box_integral(fr, cx, sx.right_end, cy, sy.right_end);
  return pl(il / (sx.hl * sy.hl)) * pr(ir / (sx.hr * sy.hr));
}

}  // namespace

CornerSup corner_sup(std::span<const double> x, std::span<const double> y, std::span<const double> dl,
                     std::span<const double> dr, FastPow pl, FastPow pr) {
  const std::size_t nx = x.size() - 1;
  const std::size_t ny = y.size() - 1;
  if (dl.size() != nx * ny || dr.size() != nx * ny) throw std::invalid_argument("density length does not match the grid");
  const Primitive2D fl(x, y, dl);
  const Primitive2D fr(x, y, dr);
  std::vector<std::vector<AdjacentStep>> xs(nx);
  std::vector<std::vector<AdjacentStep>> ys(ny);
  for (std::size_t a = 1; a < nx; ++a) xs[a] = axis_steps(x, a);
  for (std::size_t a = 1; a < ny; ++a) ys[a] = axis_steps(y, a);
  Best<CornerKey> best;
#pragma omp parallel
  {
    Best<CornerKey> local;
#pragma omp for schedule(static) nowait
    for (std::size_t k = 0; k < nx * ny; ++k) {
      local.offer(pl(dl[k]) * pr(dr[k]), CornerKey{k % nx, k / nx, kDegenerate, kDegenerate});
    }
#pragma omp for collapse(2) schedule(dynamic, 4) nowait
    for (std::size_t ay = 1; ay < ny; ++ay) {
      for (std::size_t ax = 1; ax < nx; ++ax) {
        for (const auto& sy : ys[ay]) {
          for (const auto& sx : xs[ax]) {
            local.offer(corner_candidate(fl, fr, ax, ay, sx, sy, pl, pr), CornerKey{ax, ay, sx.step, sy.step});
          }
        }
      }
    }
#pragma omp critical(sharpwt_corner_sup)
    best.merge(local);
  }
  double hx = 0.0;
  double hy = 0.0;
  corner_value(x, y, dl, dr, pl, pr, best.key, &hx, &hy);
  return CornerSup{best.value, best.key, hx, hy};
}

double corner_value(std::span<const double> x, std::span<const double> y, std::span<const double> dl,
                    std::span<const double> dr, FastPow pl, FastPow pr, CornerKey key, double* hx, double* hy) {
  const std::size_t nx = x.size() - 1;
  if (key.sx == kDegenerate) {
    if (hx) *hx = 0.0;
    if (hy) *hy = 0.0;
    const std::size_t k = key.ay * nx + key.ax;
    return pl(dl[k]) * pr(dr[k]);
  }
  const Primitive2D fl(x, y, dl);
  const Primitive2D fr(x, y, dr);
  const auto xs = axis_steps(x, key.ax);
  const auto ys = axis_steps(y, key.ay);
  const auto& sx = xs.at(key.sx);
  const auto& sy = ys.at(key.sy);
  if (hx) *hx = sx.h;
  if (hy) *hy = sy.h;
  return corner_candidate(fl, fr, key.ax, key.ay, sx, sy, pl, pr);
}

}  // namespace sharpwt::detail
