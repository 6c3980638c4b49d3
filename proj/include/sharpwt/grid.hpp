#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace sharpwt {

enum class Endpoint { Left, Right };
enum class Axis { X, Y };

struct Uniform {};
/// Widths shrink by `ratio` per cell toward `endpoint`.
struct GeometricToward {
  Endpoint endpoint;
  double ratio;
};
/// Widths shrink by `ratio` per cell toward an interior point from both sides.
struct GeometricAbout {
  double center;
  double ratio;
};
/// Boundaries supplied explicitly (CSV input, hand-built test grids).
struct Custom {};
using Grading = std::variant<Uniform, GeometricToward, GeometricAbout, Custom>;

class Grid1D {
 public:
  static Grid1D uniform(double a, double b, std::size_t n);
  static Grid1D geometric_toward(double a, double b, std::size_t n, Endpoint endpoint, double ratio);
  /// n must be even; n/2 cells on each side of `center`.
  static Grid1D geometric_about(double a, double b, std::size_t n, double center, double ratio);
  static Grid1D from_boundaries(std::vector<double> boundaries);

  std::size_t size() const noexcept { return boundaries_.size() - 1; }
  double lo() const noexcept { return boundaries_.front(); }
  double hi() const noexcept { return boundaries_.back(); }
  double boundary(std::size_t k) const { return boundaries_[k]; }
  double width(std::size_t i) const { return boundaries_[i + 1] - boundaries_[i]; }
  double center(std::size_t i) const { return 0.5 * (boundaries_[i] + boundaries_[i + 1]); }
  const std::vector<double>& boundaries() const noexcept { return boundaries_; }
  std::vector<double> widths() const;
  std::vector<double> centers() const;
  const Grading& grading() const noexcept { return grading_; }

  /// Image under x -> scale*x + shift (scale > 0).
  Grid1D mapped(double scale, double shift) const;
  /// Image under x -> -x; cell i becomes cell n-1-i.
  Grid1D reflected() const;

  bool operator==(const Grid1D& other) const { return boundaries_ == other.boundaries_; }

 private:
  Grid1D(std::vector<double> boundaries, Grading grading);
  std::vector<double> boundaries_;
  Grading grading_;
};

using GridPtr = std::shared_ptr<const Grid1D>;

inline GridPtr share(Grid1D g) { return std::make_shared<const Grid1D>(std::move(g)); }

class Grid2D {
 public:
  Grid2D(GridPtr gx, GridPtr gy);
  const Grid1D& gx() const noexcept { return *gx_; }
  const Grid1D& gy() const noexcept { return *gy_; }
  const GridPtr& gx_ptr() const noexcept { return gx_; }
  const GridPtr& gy_ptr() const noexcept { return gy_; }
  const Grid1D& axis(Axis a) const { return a == Axis::X ? *gx_ : *gy_; }
  const GridPtr& axis_ptr(Axis a) const { return a == Axis::X ? gx_ : gy_; }
  std::size_t nx() const noexcept { return gx_->size(); }
  std::size_t ny() const noexcept { return gy_->size(); }
  std::size_t size() const noexcept { return nx() * ny(); }
  /// Row-major: x varies fastest.
  std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * nx() + i; }
  double area(std::size_t i, std::size_t j) const { return gx_->width(i) * gy_->width(j); }

 private:
  GridPtr gx_;
  GridPtr gy_;
};

using Grid2DPtr = std::shared_ptr<const Grid2D>;

inline Grid2DPtr share(Grid2D g) { return std::make_shared<const Grid2D>(std::move(g)); }

/// Piecewise-constant function on a 1D grid, one finite value per cell.
class GridFn {
 public:
  using GridType = Grid1D;

  GridFn(GridPtr grid, std::vector<double> values);
  static GridFn constant(GridPtr grid, double c);
  static GridFn zero(GridPtr grid) { return constant(std::move(grid), 0.0); }

  const Grid1D& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  double cell_measure(std::size_t i) const { return grid_->width(i); }

  GridFn with_values(std::vector<double> values) const { return GridFn(grid_, std::move(values)); }
  template <class F>
  GridFn map(F&& f) const {
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = f(values_[i]);
    return with_values(std::move(out));
  }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Piecewise-constant function on a 2D tensor grid, row-major values.
class GridFn2D {
 public:
  using GridType = Grid2D;

  GridFn2D(Grid2DPtr grid, std::vector<double> values);
  static GridFn2D constant(Grid2DPtr grid, double c);

  const Grid2D& grid() const noexcept { return *grid_; }
  const Grid2DPtr& grid_ptr() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  double at(std::size_t i, std::size_t j) const { return values_[grid_->index(i, j)]; }
  std::span<const double> values() const noexcept { return values_; }
  double cell_measure(std::size_t k) const {
    return grid_->area(k % grid_->nx(), k / grid_->nx());
  }

  /// Slice along `axis`: the row j (axis X) or the column j (axis Y).
  GridFn slice(Axis axis, std::size_t j) const;

  GridFn2D with_values(std::vector<double> values) const { return GridFn2D(grid_, std::move(values)); }
  template <class F>
  GridFn2D map(F&& f) const {
    std::vector<double> out(values_.size());
    for (std::size_t k = 0; k < values_.size(); ++k) out[k] = f(values_[k]);
    return with_values(std::move(out));
  }

 private:
  Grid2DPtr grid_;
  std::vector<double> values_;
};

/// u(x) v(y) on the product of the two grids.
GridFn2D tensor(const GridFn& u, const GridFn& v);

/// Positive weight with its dual sigma = w^{1-p'} cached.
template <class Fn>
class BasicWeight {
 public:
  BasicWeight(Fn base, double p) : base_(std::move(base)), p_(p), dual_(base_) {
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("weight exponent p must exceed 1");
    const double e = 1.0 - p / (p - 1.0);
    for (double v : base_.values()) {
      if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("weight values must be finite and positive");
    }
    dual_ = base_.map([e](double v) { return std::pow(v, e); });
    for (double v : dual_.values()) {
      if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("dual weight is not finite and positive");
    }
  }

  const Fn& base() const noexcept { return base_; }
  const Fn& dual() const noexcept { return dual_; }
  double p() const noexcept { return p_; }
  double p_conj() const noexcept { return p_ / (p_ - 1.0); }
  BasicWeight with_p(double p) const { return BasicWeight(base_, p); }
  /// The dual as a weight for the conjugate exponent; its dual is w again up to rounding.
  BasicWeight dual_weight() const { return BasicWeight(dual_, p_conj()); }

 private:
  Fn base_;
  double p_;
  Fn dual_;
};

using Weight = BasicWeight<GridFn>;
using Weight2D = BasicWeight<GridFn2D>;

/// The triple (p, alpha, q) with 1/p - 1/q = alpha.
class Exponents {
 public:
  static Exponents make(double p, double alpha = 0.0);

  double p() const noexcept { return p_; }
  double alpha() const noexcept { return alpha_; }
  double q() const noexcept { return q_; }
  double p_conj() const noexcept { return p_ / (p_ - 1.0); }
  double q_conj() const noexcept { return q_ / (q_ - 1.0); }

 private:
  Exponents(double p, double alpha, double q) : p_(p), alpha_(alpha), q_(q) {}
  double p_;
  double alpha_;
  double q_;
};

/// Half-open cell range [first, last).
struct CellRange {
  std::size_t first;
  std::size_t last;
};

double integrate(const GridFn& f, CellRange range);
double integrate(const GridFn& f);
double integrate(const GridFn2D& f);

/// (sum |f_i|^p w_i |cell_i|)^{1/p}.
double lp_norm(const GridFn& f, const GridFn& density, double p);
double lp_norm(const GridFn& f, const Weight& w, double p);
double lp_norm(const GridFn& f, double p);
double lp_norm(const GridFn2D& f, const GridFn2D& density, double p);
double lp_norm(const GridFn2D& f, double p);

/// max over lambda in {|f_i|} of lambda * (w-mass of {|f| >= lambda})^{1/p}.
double weak_lp_norm(const GridFn& f, const GridFn& density, double p);
double weak_lp_norm(const GridFn& f, const Weight& w, double p);
double weak_lp_norm(const GridFn2D& f, const GridFn2D& density, double p);

/// Cell averages of |x - center|^gamma.
GridFn power_weight(const GridPtr& grid, double gamma, double center);

/// Cell averages of |x - center|^exponent restricted to the support interval
/// [center - radius, center] (Left) or [center, center + radius] (Right); zero elsewhere.
GridFn power_function(const GridPtr& grid, double exponent, double center, Endpoint side, double radius);

}  // namespace sharpwt
