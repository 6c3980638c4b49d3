#pragma once

#include "sharpwt/characteristics.hpp"
#include "sharpwt/grid.hpp"
#include "sharpwt/op1d.hpp"

namespace sharpwt {

/// A 1D operation together with its parameters.
struct Op1D {
  enum class Kind { Identity, Maximal, MaximalTwoSided, FracMaximal, Potential, Hilbert };

  Kind kind = Kind::Identity;
  Side side = Side::Plus;
  double alpha = 0.0;
  PotentialKind potential = PotentialKind::Weyl;
  MaxAlgo algo = MaxAlgo::Hull;

  static Op1D identity() { return {}; }
  static Op1D maximal(Side s, MaxAlgo a = MaxAlgo::Hull) { return {Kind::Maximal, s, 0.0, PotentialKind::Weyl, a}; }
  static Op1D maximal_twosided(MaxAlgo a = MaxAlgo::Hull) {
    return {Kind::MaximalTwoSided, Side::Plus, 0.0, PotentialKind::Weyl, a};
  }
  static Op1D frac_maximal(Side s, double alpha) { return {Kind::FracMaximal, s, alpha, PotentialKind::Weyl, MaxAlgo::Hull}; }
  static Op1D potential_op(PotentialKind k, double alpha) { return {Kind::Potential, Side::Plus, alpha, k, MaxAlgo::Hull}; }
  static Op1D hilbert_op() { return {Kind::Hilbert, Side::Plus, 0.0, PotentialKind::Weyl, MaxAlgo::Hull}; }

  GridFn operator()(const GridFn& f) const;
};

struct AxisOp {
  Op1D op;
  Axis axis = Axis::X;
};

/// Applies the 1D operation to every row (axis X) or column (axis Y).
GridFn2D apply_axis(const GridFn2D& f, const AxisOp& a);

enum class StrongAlgo { Rectangles, Composition };

/// Rectangles: max over cell-aligned rectangles containing each cell of avg |f|, O(n^4).
/// Composition: M^1(M^2 f) with two-sided 1D maximal operators.
GridFn2D strong_maximal(const GridFn2D& f, StrongAlgo algo);

enum class OnesidedAlgo { Brute, Composition };

/// Anchored rectangles from the lower-left (Plus) or upper-right (Minus) corner of each cell,
/// sum |f| / (hx hy)^{1-alpha}; Brute enumerates all cell-aligned (hx, hy).
GridFn2D strong_maximal_oneside(const GridFn2D& f, Side side, double alpha, OnesidedAlgo algo = OnesidedAlgo::Brute);
/// (M_alpha u) (x) (M_alpha v) for f = u (x) v with u, v >= 0.
GridFn2D strong_maximal_oneside_factored(const GridFn& u, const GridFn& v, Side side, double alpha);

/// 1D potential along X then along Y.
GridFn2D product_potential(const GridFn2D& f, double alpha, PotentialKind kind);
/// Hilbert transform along X then along Y.
GridFn2D product_hilbert(const GridFn2D& f);

}  // namespace sharpwt
