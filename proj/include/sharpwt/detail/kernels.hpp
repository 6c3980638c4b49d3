#pragma once

// Enumeration kernels shared by the characteristics and their recompute paths.
// Every candidate value is computed independently of the others, so the
// max-reductions below give the same answer for any OpenMP partitioning.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <tuple>
#include <vector>

#include "sharpwt/detail/numeric.hpp"

namespace sharpwt::detail {

inline constexpr std::size_t kDegenerate = std::numeric_limits<std::size_t>::max();
inline constexpr double kTieTolerance = 1e-12;

template <class Key>
struct Best {
  double value = -std::numeric_limits<double>::infinity();
  Key key{};
  bool valid = false;

  void offer(double v, const Key& k) {
    if (std::isnan(v)) return;
    if (!valid || v > value || (v == value && k < key)) {
      value = v;
      key = k;
      valid = true;
    }
  }
  void merge(const Best& other) {
    if (other.valid) offer(other.value, other.key);
  }
};

/// Cells [first, last], inclusive.
struct IntervalKey {
  std::size_t first = 0;
  std::size_t last = 0;
  friend bool operator<(const IntervalKey& a, const IntervalKey& b) {
    return std::tie(a.first, a.last) < std::tie(b.first, b.last);
  }
};

/// Step `step` of the equal-width sweep around boundary `anchor`;
/// step == kDegenerate means the in-cell limit of cell `anchor`.
struct AnchorKey {
  std::size_t anchor = 0;
  std::size_t step = 0;
  friend bool operator<(const AnchorKey& a, const AnchorKey& b) {
    return std::tie(a.anchor, a.step) < std::tie(b.anchor, b.step);
  }
};

/// A position X[cell] + offset on a grid axis.
struct AxisPoint {
  std::size_t cell = 0;
  double offset = 0.0;
};

/// One candidate of the equal-width sweep: windows [x_a - hl, x_a] and [x_a, x_a + hr],
/// hl and hr equal except at merged near-ties.
struct AdjacentStep {
  std::size_t step;
  double h;
  double hl;
  double hr;
  double left_integral;
  double right_integral;
  AxisPoint left_end;
  AxisPoint right_end;
  bool right_aligned;
  std::size_t right_cell;  // last cell touched by the right window
  double right_rest;       // x[right_cell + 1] minus the right end (0 when aligned)
};

/// Walks the merged breakpoints of the left and right cell boundaries around anchor
/// boundary `a` (1 <= a <= n-1), accumulating window integrals of `dl` (left) and `dr`
/// (right) outward from the anchor. Stops once one window reaches the domain edge.
/// `visit` returns false to stop early.
///
/// The free end of a window is placed at the mirror image 2 x_a - x_b of the aligned end
/// and partial cells are measured from nearby boundaries, so cells much smaller than
/// ulp(h) keep their mass.
template <class Visit>
void sweep_adjacent(std::span<const double> x, std::span<const double> dl, std::span<const double> dr,
                    std::size_t a, Visit&& visit) {
  const std::size_t n = x.size() - 1;
  const double xa = x[a];
  const double two_xa = xa + xa;
  std::size_t ml = 0;
  std::size_t mr = 0;
  double cl = 0.0;
  double cr = 0.0;
  for (std::size_t step = 0;; ++step) {
    const std::size_t lc = a - ml - 1;
    const std::size_t rc = a + mr;
    const double lb = x[lc];
    const double rb = x[rc + 1];
    const double nl = xa - lb;
    const double nr = rb - xa;
    const double mirror_l = two_xa - lb;  // right end if the left window is aligned
    const bool tie = std::abs(mirror_l - rb) <= kTieTolerance * (nl > nr ? nl : nr);
    const bool left_aligned = tie || mirror_l < rb;
    const bool right_aligned = tie || rb < mirror_l;
    const double h = nl < nr ? nl : nr;
    const double lw = x[lc + 1] - lb;
    const double rw = rb - x[rc];
    const double lpos = left_aligned ? lb : two_xa - rb;
    const double rpos = right_aligned ? rb : mirror_l;
    const double lpart = left_aligned ? lw : std::clamp(x[lc + 1] - lpos, 0.0, lw);
    const double rpart = right_aligned ? rw : std::clamp(rpos - x[rc], 0.0, rw);
    const double il = cl + dl[lc] * lpart;
    const double ir = cr + dr[rc] * rpart;
    AdjacentStep s{step,
                   h,
                   xa - lpos,
                   rpos - xa,
                   il,
                   ir,
                   left_aligned ? AxisPoint{lc, 0.0} : AxisPoint{lc, lw - lpart},
                   right_aligned ? AxisPoint{rc + 1, 0.0} : AxisPoint{rc, rpart},
                   right_aligned,
                   rc,
                   right_aligned ? 0.0 : rw - rpart};
    if (!visit(s)) return;
    if (left_aligned) {
      cl = il;
      ++ml;
    }
    if (right_aligned) {
      cr = ir;
      ++mr;
    }
    if (ml == a || mr == n - a) return;
  }
}

/// Result of an anchored sup: value, key and the window half-width.
struct AnchorSup {
  double value;
  AnchorKey key;
  double h;
};

/// sup over anchors and equal-width adjacent windows of pl(avg_left dl) * pr(avg_right dr),
/// together with the in-cell limits pl(dl_i) * pr(dr_i).
AnchorSup adjacent_sup(std::span<const double> x, std::span<const double> dl, std::span<const double> dr,
                       FastPow pl, FastPow pr);
/// Recomputes one candidate of adjacent_sup; returns its value and writes the half-width.
double adjacent_value(std::span<const double> x, std::span<const double> dl, std::span<const double> dr,
                      FastPow pl, FastPow pr, AnchorKey key, double* h = nullptr);

struct IntervalSup {
  double value;
  IntervalKey key;
};

/// sup over cell intervals [j..k] of pa(avg a) * pb(avg b).
IntervalSup interval_sup(std::span<const double> x, std::span<const double> a, std::span<const double> b,
                         FastPow pa, FastPow pb);
double interval_value(std::span<const double> x, std::span<const double> a, std::span<const double> b,
                      FastPow pa, FastPow pb, IntervalKey key);

/// sup over centers x_a and radii h of
///   plocal(int_{a-h}^{a+h} local) * ptail(int_{a+h}^{end} (t-a)^kernel_exp tail(t) dt)
/// with the tail on the right of the window; kernel_exp < -1.
AnchorSup right_tail_sup(std::span<const double> x, std::span<const double> local, std::span<const double> tail,
                         double kernel_exp, FastPow plocal, FastPow ptail);
double right_tail_value(std::span<const double> x, std::span<const double> local, std::span<const double> tail,
                        double kernel_exp, FastPow plocal, FastPow ptail, AnchorKey key, double* h = nullptr);

/// Cell-aligned rectangle [i0..i1] x [j0..j1].
struct RectKey {
  std::size_t i0 = 0, i1 = 0, j0 = 0, j1 = 0;
  friend bool operator<(const RectKey& a, const RectKey& b) {
    return std::tie(a.i0, a.j0, a.i1, a.j1) < std::tie(b.i0, b.j0, b.i1, b.j1);
  }
};

struct RectSup {
  double value;
  RectKey key;
};

/// sup over cell-aligned rectangles of pa(avg a) * pb(avg b); a, b row-major (x fastest).
RectSup rect_sup(std::span<const double> x, std::span<const double> y, std::span<const double> a,
                 std::span<const double> b, FastPow pa, FastPow pb);
double rect_value(std::span<const double> x, std::span<const double> y, std::span<const double> a,
                  std::span<const double> b, FastPow pa, FastPow pb, RectKey key);

/// Anchored 2D candidate: corner (ax, ay) with sweep steps (sx, sy), or the in-cell limit of cell (ax, ay).
struct CornerKey {
  std::size_t ax = 0, ay = 0, sx = 0, sy = 0;
  friend bool operator<(const CornerKey& a, const CornerKey& b) {
    return std::tie(a.ax, a.ay, a.sx, a.sy) < std::tie(b.ax, b.ay, b.sx, b.sy);
  }
};

struct CornerSup {
  double value;
  CornerKey key;
  double hx;
  double hy;
};

/// sup over corners and per-axis equal-width windows of pl(avg dl over the lower-left box)
/// * pr(avg dr over the upper-right box).
CornerSup corner_sup(std::span<const double> x, std::span<const double> y, std::span<const double> dl,
                     std::span<const double> dr, FastPow pl, FastPow pr);
double corner_value(std::span<const double> x, std::span<const double> y, std::span<const double> dl,
                    std::span<const double> dr, FastPow pl, FastPow pr, CornerKey key, double* hx = nullptr,
                    double* hy = nullptr);

}  // namespace sharpwt::detail
