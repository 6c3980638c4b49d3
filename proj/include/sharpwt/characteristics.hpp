#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include "sharpwt/detail/kernels.hpp"
#include "sharpwt/grid.hpp"

namespace sharpwt {

enum class Side { Plus, Minus };
enum class Variant { TwoSided, Plus, Minus };
enum class PotentialKind { Weyl, RiemannLiouville };

enum class CharKind {
  Ap,
  ApPlus,
  ApMinus,
  ApqPlus,
  ApqMinus,
  ApqRooted,
  ApStrong,
  ApqStrong,
  ApStrongPlus,
  ApStrongMinus,
  ApqStrongPlus,
  ApqStrongMinus,
  ApAxis,
  ApqAxis,
  GloPlus,
  GloMinus,
  GkPlus,
  GkMinus,
  MtPlus,
  MtMinus,
  LtWeyl,
  LtRiemannLiouville,
};

/// How the witness was found, so it can be replayed exactly.
enum class WitnessShape { Interval, Anchored, Rectangle, Corner };

struct Witness {
  WitnessShape shape = WitnessShape::Interval;
  detail::IntervalKey interval{};
  detail::AnchorKey anchor{};
  detail::RectKey rect{};
  detail::CornerKey corner{};
  std::size_t slice = 0;  // row/column for uniform-axis characteristics
  double lo_x = 0.0, hi_x = 0.0;
  std::optional<double> lo_y, hi_y;
};

struct CharacteristicReport {
  CharKind kind = CharKind::Ap;
  std::string name;  // e.g. "ap_plus", "apq_x"
  double p = 0.0;
  double q = 0.0;
  double alpha = 0.0;
  double value = 0.0;
  Witness witness;
  bool truncated = false;
  Variant variant = Variant::TwoSided;
  Axis axis = Axis::X;
};

std::string kind_name(CharKind kind, Variant variant = Variant::TwoSided, Axis axis = Axis::X);
std::string report_csv_header();
std::string report_csv_row(const CharacteristicReport& r);

// ---- one-weight, 1D ----

/// sup over cell intervals of (avg w)(avg sigma)^{p-1}.
CharacteristicReport ap(const Weight& w);
inline CharacteristicReport ap(const Weight& w, double p) { return ap(w.with_p(p)); }

/// Equal-width adjacent windows: Plus pairs avg w on [x-h,x] with avg sigma on [x,x+h]; Minus swaps them.
CharacteristicReport ap_oneside(const Weight& w, Side side);
inline CharacteristicReport ap_oneside(const Weight& w, double p, Side side) { return ap_oneside(w.with_p(p), side); }

/// (avg w^q)(avg w^{-p'})^{q/p'} over adjacent windows, no outer roots.
CharacteristicReport apq_oneside(const GridFn& w, const Exponents& e, Side side);
inline CharacteristicReport apq_oneside(const Weight& w, const Exponents& e, Side side) {
  return apq_oneside(w.base(), e, side);
}

/// Same windows as apq_oneside but with outer roots 1/q, 1/p'; TwoSided uses common intervals.
CharacteristicReport apq_rooted(const GridFn& w, const Exponents& e, Variant variant);

// ---- one-weight, 2D ----

CharacteristicReport ap_strong(const Weight2D& w);
/// (avg w^q)^{1/q} (avg w^{-p'})^{1/p'} over rectangles.
CharacteristicReport apq_strong(const GridFn2D& w, const Exponents& e);
/// Lower-left box against upper-right box (Plus) or swapped (Minus), per-axis equal widths.
CharacteristicReport ap_strong_oneside(const Weight2D& w, Side side);
/// Same boxes with outer roots 1/q, 1/p'.
CharacteristicReport apq_strong_oneside(const GridFn2D& w, const Exponents& e, Side side);
/// max over rows (axis X) or columns (axis Y) of the 1D characteristic of the slice.
CharacteristicReport ap_uniform_axis(const Weight2D& w, Axis axis, Variant variant);
CharacteristicReport apq_uniform_axis(const GridFn2D& w, const Exponents& e, Axis axis, Variant variant);

// ---- two-weight constants (v is a nonnegative density, w a weight) ----

/// Tails are truncated at the grid boundary; reports carry truncated = true.
CharacteristicReport glo_constant(const GridFn& v, const GridFn& w, const Exponents& e, Side side);
CharacteristicReport gk_constant(const GridFn& v, const GridFn& w, const Exponents& e, Side side);
/// sup_I ||M_alpha^side (sigma chi_I)||_{L^q_v} / sigma(I)^{1/p}, sigma = w^{1-p'}.
CharacteristicReport sawyer_mt_constant(const GridFn& v, const GridFn& w, const Exponents& e, Side side);
/// sup_I ||N*(v chi_I)||_{L^{p'}_{sigma}} / v(I)^{1/q'}, N* the adjoint of the named potential.
CharacteristicReport lorente_lt_constant(const GridFn& v, const GridFn& w, const Exponents& e, PotentialKind op);

// ---- recompute on the witness ----

/// Re-evaluates the defining quantity of `r` on its witness with the same arithmetic.
double recompute(const CharacteristicReport& r, const Weight& w);
double recompute(const CharacteristicReport& r, const GridFn& w, const Exponents& e);
double recompute(const CharacteristicReport& r, const Weight2D& w);
double recompute(const CharacteristicReport& r, const GridFn2D& w, const Exponents& e);
double recompute(const CharacteristicReport& r, const GridFn& v, const GridFn& w, const Exponents& e);

// ---- closed-form power-weight bounds ----

struct PowerBounds {
  double b_gamma;
  double d_gamma;
  double C_gamma;
  double Gamma_gamma;
  double G_gamma;
  double ap_upper;
  double buckley_C;
};

/// Explicit constants for w = |t|^gamma, -1 < gamma < p - 1.
PowerBounds closed_form_power_bounds(double gamma, double p);

}  // namespace sharpwt
