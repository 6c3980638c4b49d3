#include "sharpwt/opnd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sharpwt {

GridFn Op1D::operator()(const GridFn& f) const {
  switch (kind) {
    case Kind::Identity: return f;
    case Kind::Maximal: return sharpwt::maximal_oneside(f, side, algo);
    case Kind::MaximalTwoSided: return sharpwt::maximal_twosided(f, algo);
    case Kind::FracMaximal: return sharpwt::frac_maximal_oneside(f, alpha, side);
    case Kind::Potential: return sharpwt::potential_oneside(f, alpha, potential);
    case Kind::Hilbert: return sharpwt::hilbert(f);
  }
  throw std::logic_error("unknown 1D operation");
}

GridFn2D apply_axis(const GridFn2D& f, const AxisOp& a) {
  const auto& g = f.grid();
  const std::size_t nx = g.nx();
  const std::size_t ny = g.ny();
  const std::size_t slices = a.axis == Axis::X ? ny : nx;
  std::vector<double> out(f.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t j = 0; j < slices; ++j) {
    const GridFn r = a.op(f.slice(a.axis, j));
    for (std::size_t k = 0; k < r.size(); ++k) {
      out[a.axis == Axis::X ? g.index(k, j) : g.index(j, k)] = r[k];
    }
  }
  return f.with_values(std::move(out));
}

GridFn2D strong_maximal(const GridFn2D& f, StrongAlgo algo) {
  if (algo == StrongAlgo::Composition) {
    const GridFn2D inner = apply_axis(f, {Op1D::maximal_twosided(), Axis::Y});
    return apply_axis(inner, {Op1D::maximal_twosided(), Axis::X});
  }
  const auto& g = f.grid();
  const std::size_t nx = g.nx();
  const std::size_t ny = g.ny();
  std::vector<double> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = std::abs(f[k]);
#pragma omp parallel
  {
    std::vector<double> mine(out);
    std::vector<double> col(ny);
#pragma omp for schedule(dynamic, 1) nowait
    for (std::size_t i0 = 0; i0 < nx; ++i0) {
      std::fill(col.begin(), col.end(), 0.0);
      for (std::size_t i1 = i0; i1 < nx; ++i1) {
        const double len = g.gx().boundary(i1 + 1) - g.gx().boundary(i0);
        for (std::size_t b = 0; b < ny; ++b) col[b] += std::abs(f.at(i1, b)) * g.gx().width(i1);
        std::vector<double> avg(ny);
        for (std::size_t b = 0; b < ny; ++b) avg[b] = col[b] / len;
        const GridFn m = maximal_twosided(GridFn(g.gy_ptr(), std::move(avg)));
        for (std::size_t b = 0; b < ny; ++b) {
          for (std::size_t i = i0; i <= i1; ++i) {
            double& slot = mine[g.index(i, b)];
            slot = std::max(slot, m[b]);
          }
        }
      }
    }
#pragma omp critical(sharpwt_strong_merge)
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::max(out[k], mine[k]);
  }
  return f.with_values(std::move(out));
}

namespace {

// Plus-side anchored rectangle maximum on boundaries x, y with |f| row-major; Minus reuses it after reflection.
std::vector<double> anchored_plus(const std::vector<double>& x, const std::vector<double>& y,
                                  const std::vector<double>& a, double alpha) {
  const std::size_t nx = x.size() - 1;
  const std::size_t ny = y.size() - 1;
  const double e = 1.0 - alpha;
  std::vector<double> out(a.size());
#pragma omp parallel
  {
    std::vector<double> col(ny);
#pragma omp for schedule(dynamic, 1) collapse(2)
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < nx; ++i) {
        double best = alpha == 0.0 ? a[j * nx + i] : 0.0;
        std::fill(col.begin() + j, col.end(), 0.0);
        for (std::size_t k = i + 1; k <= nx; ++k) {
          const double wx = x[k] - x[k - 1];
          const double lx = x[k] - x[i];
          for (std::size_t b = j; b < ny; ++b) col[b] += a[b * nx + k - 1] * wx;
          double acc = 0.0;
          for (std::size_t l = j + 1; l <= ny; ++l) {
            acc += col[l - 1] * (y[l] - y[l - 1]);
            const double area = lx * (y[l] - y[j]);
            const double den = alpha == 0.0 ? area : std::pow(area, e);
            best = std::max(best, acc / den);
          }
        }
        out[j * nx + i] = best;
      }
    }
  }
  return out;
}

std::vector<double> reflect(const std::vector<double>& x) {
  const std::size_t n = x.size() - 1;
  std::vector<double> r(n + 1);
  for (std::size_t k = 0; k <= n; ++k) r[k] = -x[n - k];
  return r;
}

}  // namespace

GridFn2D strong_maximal_oneside(const GridFn2D& f, Side side, double alpha, OnesidedAlgo algo) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
  if (algo == OnesidedAlgo::Composition) {
    const Op1D op = alpha == 0.0 ? Op1D::maximal(side) : Op1D::frac_maximal(side, alpha);
    return apply_axis(apply_axis(f, {op, Axis::Y}), {op, Axis::X});
  }
  const auto& g = f.grid();
  const std::size_t n = f.size();
  std::vector<double> a(n);
  for (std::size_t k = 0; k < n; ++k) a[k] = std::abs(f[k]);
  if (side == Side::Plus) return f.with_values(anchored_plus(g.gx().boundaries(), g.gy().boundaries(), a, alpha));
  // Reflecting both axes reverses the row-major order.
  std::reverse(a.begin(), a.end());
  auto out = anchored_plus(reflect(g.gx().boundaries()), reflect(g.gy().boundaries()), a, alpha);
  std::reverse(out.begin(), out.end());
  return f.with_values(std::move(out));
}

GridFn2D strong_maximal_oneside_factored(const GridFn& u, const GridFn& v, Side side, double alpha) {
  auto one = [&](const GridFn& h) {
    return alpha == 0.0 ? maximal_oneside(h, side) : frac_maximal_oneside(h, alpha, side);
  };
  return tensor(one(u), one(v));
}

GridFn2D product_potential(const GridFn2D& f, double alpha, PotentialKind kind) {
  const Op1D op = Op1D::potential_op(kind, alpha);
  return apply_axis(apply_axis(f, {op, Axis::X}), {op, Axis::Y});
}

GridFn2D product_hilbert(const GridFn2D& f) {
  const Op1D op = Op1D::hilbert_op();
  return apply_axis(apply_axis(f, {op, Axis::X}), {op, Axis::Y});
}

}  // namespace sharpwt
