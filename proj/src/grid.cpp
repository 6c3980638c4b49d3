#include "sharpwt/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sharpwt/detail/numeric.hpp"
#include "sharpwt/errors.hpp"

namespace sharpwt {

namespace {

void check_strictly_increasing(const std::vector<double>& b) {
  if (b.size() < 2) throw std::invalid_argument("a grid needs at least one cell");
  for (double x : b) {
    if (!std::isfinite(x)) throw std::invalid_argument("grid boundaries must be finite");
  }
  for (std::size_t k = 0; k + 1 < b.size(); ++k) {
    if (!(b[k] < b[k + 1])) {
      throw std::invalid_argument("grid boundaries are not strictly increasing at index " + std::to_string(k) +
                                  " (grading too fine for double precision?)");
    }
  }
}

void check_interval(double a, double b, std::size_t n) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("grid needs finite a < b");
  if (n == 0) throw std::invalid_argument("grid needs at least one cell");
}

void check_ratio(double r) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("grading ratio must lie in (0, 1)");
}

// Distances from a point to the boundaries of m cells whose widths shrink by r toward it,
// total length `len`. d[0] = 0, d[m] = len; accumulated from the small end for accuracy.
std::vector<double> geometric_distances(double len, std::size_t m, double r) {
  const double h0 = len * (1.0 - r) / -std::expm1(static_cast<double>(m) * std::log(r));
  std::vector<double> d(m + 1, 0.0);
  for (std::size_t k = 1; k <= m; ++k) {
    d[k] = d[k - 1] + h0 * std::pow(r, static_cast<double>(m - k));
  }
  d[m] = len;
  return d;
}

}  // namespace

Grid1D::Grid1D(std::vector<double> boundaries, Grading grading)
    : boundaries_(std::move(boundaries)), grading_(grading) {
  check_strictly_increasing(boundaries_);
}

Grid1D Grid1D::uniform(double a, double b, std::size_t n) {
  check_interval(a, b, n);
  std::vector<double> x(n + 1);
  for (std::size_t i = 0; i <= n; ++i) x[i] = a + (b - a) * (static_cast<double>(i) / static_cast<double>(n));
  x.front() = a;
  x.back() = b;
  return Grid1D(std::move(x), Uniform{});
}

Grid1D Grid1D::geometric_toward(double a, double b, std::size_t n, Endpoint endpoint, double ratio) {
  check_interval(a, b, n);
  check_ratio(ratio);
  const auto d = geometric_distances(b - a, n, ratio);
  std::vector<double> x(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    if (endpoint == Endpoint::Right) x[n - k] = b - d[k];
    else x[k] = a + d[k];
  }
  x.front() = a;
  x.back() = b;
  return Grid1D(std::move(x), GeometricToward{endpoint, ratio});
}

Grid1D Grid1D::geometric_about(double a, double b, std::size_t n, double center, double ratio) {
  check_interval(a, b, n);
  check_ratio(ratio);
  if (n % 2 != 0) throw std::invalid_argument("two-sided grading needs an even cell count");
  if (!(a < center && center < b)) throw std::invalid_argument("grading center must lie inside the domain");
  const std::size_t m = n / 2;
  const auto dl = geometric_distances(center - a, m, ratio);
  const auto dr = geometric_distances(b - center, m, ratio);
  std::vector<double> x(n + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    x[m - k] = center - dl[k];
    x[m + k] = center + dr[k];
  }
  x[m] = center;
  x.front() = a;
  x.back() = b;
  return Grid1D(std::move(x), GeometricAbout{center, ratio});
}

Grid1D Grid1D::from_boundaries(std::vector<double> boundaries) {
  return Grid1D(std::move(boundaries), Custom{});
}

std::vector<double> Grid1D::widths() const {
  std::vector<double> w(size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = width(i);
  return w;
}

std::vector<double> Grid1D::centers() const {
  std::vector<double> c(size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = center(i);
  return c;
}

Grid1D Grid1D::mapped(double scale, double shift) const {
  if (!(scale > 0.0)) throw std::invalid_argument("grid map needs a positive scale");
  std::vector<double> x(boundaries_.size());
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = scale * boundaries_[k] + shift;
  return Grid1D(std::move(x), Custom{});
}

Grid1D Grid1D::reflected() const {
  std::vector<double> x(boundaries_.size());
  const std::size_t n = size();
  for (std::size_t k = 0; k <= n; ++k) x[k] = -boundaries_[n - k];
  return Grid1D(std::move(x), Custom{});
}

Grid2D::Grid2D(GridPtr gx, GridPtr gy) : gx_(std::move(gx)), gy_(std::move(gy)) {
  if (!gx_ || !gy_) throw std::invalid_argument("2D grid needs both axes");
}

GridFn::GridFn(GridPtr grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("GridFn needs a grid");
  if (values_.size() != grid_->size()) throw std::invalid_argument("GridFn value count does not match the grid");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("GridFn values must be finite");
  }
}

GridFn GridFn::constant(GridPtr grid, double c) {
  const std::size_t n = grid->size();
  return GridFn(std::move(grid), std::vector<double>(n, c));
}

GridFn2D::GridFn2D(Grid2DPtr grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("GridFn2D needs a grid");
  if (values_.size() != grid_->size()) throw std::invalid_argument("GridFn2D value count does not match the grid");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("GridFn2D values must be finite");
  }
}

GridFn2D GridFn2D::constant(Grid2DPtr grid, double c) {
  const std::size_t n = grid->size();
  return GridFn2D(std::move(grid), std::vector<double>(n, c));
}

GridFn GridFn2D::slice(Axis axis, std::size_t j) const {
  const std::size_t nx = grid_->nx();
  const std::size_t ny = grid_->ny();
  if (axis == Axis::X) {
    return GridFn(grid_->gx_ptr(), std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(j * nx),
                                                       values_.begin() + static_cast<std::ptrdiff_t>((j + 1) * nx)));
  }
  std::vector<double> col(ny);
  for (std::size_t l = 0; l < ny; ++l) col[l] = values_[l * nx + j];
  return GridFn(grid_->gy_ptr(), std::move(col));
}

GridFn2D tensor(const GridFn& u, const GridFn& v) {
  auto g = share(Grid2D(u.grid_ptr(), v.grid_ptr()));
  std::vector<double> out(u.size() * v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    for (std::size_t i = 0; i < u.size(); ++i) out[j * u.size() + i] = u[i] * v[j];
  }
  return GridFn2D(std::move(g), std::move(out));
}

Exponents Exponents::make(double p, double alpha) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("exponent p must be a finite number > 1");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
  if (alpha == 0.0) return Exponents(p, 0.0, p);
  if (!(alpha * p < 1.0)) throw std::invalid_argument("need p < 1/alpha");
  return Exponents(p, alpha, p / (1.0 - alpha * p));
}

double integrate(const GridFn& f, CellRange range) {
  if (range.first > range.last || range.last > f.size()) throw std::out_of_range("cell range outside the grid");
  double s = 0.0;
  for (std::size_t i = range.first; i < range.last; ++i) s += f[i] * f.grid().width(i);
  return s;
}

double integrate(const GridFn& f) { return integrate(f, CellRange{0, f.size()}); }

double integrate(const GridFn2D& f) {
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) s += f[k] * f.cell_measure(k);
  return s;
}

namespace {

void check_same_shape(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("function and weight live on different grids");
}

// Scaled power sum: terms t_i = |f_i| (w_i |cell_i|)^{1/p}, result (sum t_i^p)^{1/p}
// computed relative to max t_i so that neither tiny nor huge terms overflow.
template <class Fn>
double lp_norm_impl(const Fn& f, const Fn* density, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("norm exponent must be >= 1");
  if (density) check_same_shape(f.size(), density->size());
  const double inv = 1.0 / p;
  std::vector<double> t(f.size());
  double tmax = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::abs(f[i]);
    if (a == 0.0) {
      t[i] = 0.0;
      continue;
    }
    const double mass = density ? (*density)[i] : 1.0;
    if (mass == 0.0) {
      t[i] = 0.0;
      continue;
    }
    t[i] = p == 1.0 ? a * mass * f.cell_measure(i) : a * std::pow(mass, inv) * std::pow(f.cell_measure(i), inv);
    tmax = std::max(tmax, t[i]);
  }
  if (tmax == 0.0) return 0.0;
  if (p == 1.0) return std::accumulate(t.begin(), t.end(), 0.0);
  double s = 0.0;
  for (double ti : t) {
    if (ti > 0.0) s += std::pow(ti / tmax, p);
  }
  return tmax * std::pow(s, inv);
}

template <class Fn>
double weak_lp_norm_impl(const Fn& f, const Fn& density, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("norm exponent must be >= 1");
  check_same_shape(f.size(), density.size());
  std::vector<std::size_t> idx(f.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double fa = std::abs(f[a]);
    const double fb = std::abs(f[b]);
    return fa != fb ? fa > fb : a < b;
  });
  double best = 0.0;
  double mass = 0.0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const std::size_t i = idx[k];
    const double lambda = std::abs(f[i]);
    if (lambda == 0.0) break;
    mass += density[i] * f.cell_measure(i);
    const bool last_of_level = k + 1 == idx.size() || std::abs(f[idx[k + 1]]) != lambda;
    if (last_of_level) best = std::max(best, lambda * std::pow(mass, 1.0 / p));
  }
  return best;
}

}  // namespace

double lp_norm(const GridFn& f, const GridFn& density, double p) { return lp_norm_impl(f, &density, p); }
double lp_norm(const GridFn& f, const Weight& w, double p) { return lp_norm_impl(f, &w.base(), p); }
double lp_norm(const GridFn& f, double p) { return lp_norm_impl<GridFn>(f, nullptr, p); }
double lp_norm(const GridFn2D& f, const GridFn2D& density, double p) { return lp_norm_impl(f, &density, p); }
double lp_norm(const GridFn2D& f, double p) { return lp_norm_impl<GridFn2D>(f, nullptr, p); }

double weak_lp_norm(const GridFn& f, const GridFn& density, double p) { return weak_lp_norm_impl(f, density, p); }
double weak_lp_norm(const GridFn& f, const Weight& w, double p) { return weak_lp_norm_impl(f, w.base(), p); }
double weak_lp_norm(const GridFn2D& f, const GridFn2D& density, double p) {
  return weak_lp_norm_impl(f, density, p);
}

namespace {

// Average of |x - c|^g over [lo, hi].
double power_cell_average(double lo, double hi, double c, double g) {
  using detail::power_average;
  if (lo >= c) return power_average(lo - c, hi - lo, g);
  if (hi <= c) return power_average(c - hi, hi - lo, g);
  const double dl = c - lo;
  const double dr = hi - c;
  const double m = std::max(dl, dr);
  const double k = g + 1.0;
  return std::pow(m, g) * (std::pow(dl / m, k) + std::pow(dr / m, k)) / (k * ((dl + dr) / m));
}

}  // namespace

GridFn power_weight(const GridPtr& grid, double gamma, double center) {
  if (!std::isfinite(gamma)) throw std::invalid_argument("power exponent must be finite");
  const bool inside = center >= grid->lo() && center <= grid->hi();
  if (inside && gamma <= -1.0) throw DomainError("power weight |x - c|^gamma with gamma <= -1 is not integrable at c");
  std::vector<double> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double lo = grid->boundary(i);
    const double hi = grid->boundary(i + 1);
    v[i] = gamma == 0.0 ? 1.0 : power_cell_average(lo, hi, center, gamma);
  }
  return GridFn(grid, std::move(v));
}

GridFn power_function(const GridPtr& grid, double exponent, double center, Endpoint side, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("support radius must be positive");
  if (exponent <= -1.0) throw DomainError("power function is not integrable at its singular point");
  const double s_lo = side == Endpoint::Left ? center - radius : center;
  const double s_hi = side == Endpoint::Left ? center : center + radius;
  std::vector<double> v(grid->size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double lo = std::max(grid->boundary(i), s_lo);
    const double hi = std::min(grid->boundary(i + 1), s_hi);
    if (!(lo < hi)) continue;
    v[i] = power_cell_average(lo, hi, center, exponent) * ((hi - lo) / grid->width(i));
  }
  return GridFn(grid, std::move(v));
}

}  // namespace sharpwt
