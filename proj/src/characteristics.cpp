#include "sharpwt/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "sharpwt/csv.hpp"
#include "sharpwt/errors.hpp"

namespace sharpwt {

using detail::FastPow;

namespace {

std::vector<double> to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

std::vector<double> powered(std::span<const double> w, double e) {
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i] = std::pow(w[i], e);
    if (!(out[i] > 0.0) || !std::isfinite(out[i])) throw DomainError("weight power is not finite and positive");
  }
  return out;
}

void check_positive(std::span<const double> w) {
  for (double v : w) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("weight values must be finite and positive");
  }
}

// A pair of densities with the powers applied to their window averages.
struct Pair {
  std::vector<double> a;
  std::vector<double> b;
  FastPow pa{1.0};
  FastPow pb{1.0};
};

Pair ap_pair(const Weight& w) { return {to_vec(w.base().values()), to_vec(w.dual().values()), FastPow(1.0), FastPow(w.p() - 1.0)}; }

Pair ap_side_pair(const Weight& w, Side side) {
  Pair pr = ap_pair(w);
  if (side == Side::Minus) {
    std::swap(pr.a, pr.b);
    std::swap(pr.pa, pr.pb);
  }
  return pr;
}

Pair apq_side_pair(std::span<const double> w, const Exponents& e, Side side, bool rooted) {
  check_positive(w);
  Pair pr{powered(w, e.q()), powered(w, -e.p_conj()), FastPow(rooted ? 1.0 / e.q() : 1.0),
          FastPow(rooted ? 1.0 / e.p_conj() : e.q() / e.p_conj())};
  if (side == Side::Minus) {
    std::swap(pr.a, pr.b);
    std::swap(pr.pa, pr.pb);
  }
  return pr;
}

Pair apq_rooted_pair(std::span<const double> w, const Exponents& e, Variant v) {
  return apq_side_pair(w, e, v == Variant::Minus ? Side::Minus : Side::Plus, true);
}

CharacteristicReport base_report(CharKind kind, std::string name, double p, double q, double alpha) {
  CharacteristicReport r;
  r.kind = kind;
  r.name = std::move(name);
  r.p = p;
  r.q = q;
  r.alpha = alpha;
  return r;
}

void fill_interval(CharacteristicReport& r, const Grid1D& g, const detail::IntervalSup& s) {
  r.value = s.value;
  r.witness.shape = WitnessShape::Interval;
  r.witness.interval = s.key;
  r.witness.lo_x = g.boundary(s.key.first);
  r.witness.hi_x = g.boundary(s.key.last + 1);
}

void fill_anchor(CharacteristicReport& r, const Grid1D& g, const detail::AnchorSup& s) {
  r.value = s.value;
  r.witness.shape = WitnessShape::Anchored;
  r.witness.anchor = s.key;
  if (s.key.step == detail::kDegenerate) {
    r.witness.lo_x = r.witness.hi_x = g.center(s.key.anchor);
  } else {
    r.witness.lo_x = g.boundary(s.key.anchor) - s.h;
    r.witness.hi_x = g.boundary(s.key.anchor) + s.h;
  }
}

CharacteristicReport interval_report(CharacteristicReport r, const Grid1D& g, const Pair& pr) {
  fill_interval(r, g, detail::interval_sup(g.boundaries(), pr.a, pr.b, pr.pa, pr.pb));
  return r;
}

CharacteristicReport adjacent_report(CharacteristicReport r, const Grid1D& g, const Pair& pr) {
  if (g.size() < 2) throw std::invalid_argument("one-sided characteristics need at least two cells");
  fill_anchor(r, g, detail::adjacent_sup(g.boundaries(), pr.a, pr.b, pr.pa, pr.pb));
  return r;
}

double pair_value(const Grid1D& g, const Pair& pr, const Witness& w) {
  if (w.shape == WitnessShape::Interval) return detail::interval_value(g.boundaries(), pr.a, pr.b, pr.pa, pr.pb, w.interval);
  return detail::adjacent_value(g.boundaries(), pr.a, pr.b, pr.pa, pr.pb, w.anchor);
}

const char* variant_tag(Variant v) {
  switch (v) {
    case Variant::TwoSided: return "";
    case Variant::Plus: return "_plus";
    case Variant::Minus: return "_minus";
  }
  return "";
}

Variant as_variant(Side s) { return s == Side::Plus ? Variant::Plus : Variant::Minus; }

}  // namespace

std::string kind_name(CharKind kind, Variant variant, Axis axis) {
  const std::string ax = axis == Axis::X ? "_x" : "_y";
  switch (kind) {
    case CharKind::Ap: return "ap";
    case CharKind::ApPlus: return "ap_plus";
    case CharKind::ApMinus: return "ap_minus";
    case CharKind::ApqPlus: return "apq_plus";
    case CharKind::ApqMinus: return "apq_minus";
    case CharKind::ApqRooted: return std::string("apq_rooted") + variant_tag(variant);
    case CharKind::ApStrong: return "ap_strong";
    case CharKind::ApqStrong: return "apq_strong";
    case CharKind::ApStrongPlus: return "ap_strong_plus";
    case CharKind::ApStrongMinus: return "ap_strong_minus";
    case CharKind::ApqStrongPlus: return "apq_strong_plus";
    case CharKind::ApqStrongMinus: return "apq_strong_minus";
    case CharKind::ApAxis: return std::string("ap") + variant_tag(variant) + ax;
    case CharKind::ApqAxis: return std::string("apq") + variant_tag(variant) + ax;
    case CharKind::GloPlus: return "glo_plus";
    case CharKind::GloMinus: return "glo_minus";
    case CharKind::GkPlus: return "gk_plus";
    case CharKind::GkMinus: return "gk_minus";
    case CharKind::MtPlus: return "mt_plus";
    case CharKind::MtMinus: return "mt_minus";
    case CharKind::LtWeyl: return "lt_weyl";
    case CharKind::LtRiemannLiouville: return "lt_rl";
  }
  return "unknown";
}

std::string report_csv_header() { return "kind,p,q,alpha,value,witness_lo_x,witness_hi_x,witness_lo_y,witness_hi_y,truncated"; }

std::string report_csv_row(const CharacteristicReport& r) {
  std::ostringstream os;
  os << r.name << ',' << format_real(r.p) << ',' << format_real(r.q) << ',' << format_real(r.alpha) << ','
     << format_real(r.value) << ',' << format_real(r.witness.lo_x) << ',' << format_real(r.witness.hi_x) << ',';
  if (r.witness.lo_y) os << format_real(*r.witness.lo_y);
  os << ',';
  if (r.witness.hi_y) os << format_real(*r.witness.hi_y);
  os << ',' << (r.truncated ? 1 : 0);
  return os.str();
}

CharacteristicReport ap(const Weight& w) {
  return interval_report(base_report(CharKind::Ap, "ap", w.p(), w.p(), 0.0), w.base().grid(), ap_pair(w));
}

CharacteristicReport ap_oneside(const Weight& w, Side side) {
  const CharKind k = side == Side::Plus ? CharKind::ApPlus : CharKind::ApMinus;
  auto r = base_report(k, kind_name(k), w.p(), w.p(), 0.0);
  r.variant = as_variant(side);
  return adjacent_report(std::move(r), w.base().grid(), ap_side_pair(w, side));
}

CharacteristicReport apq_oneside(const GridFn& w, const Exponents& e, Side side) {
  const CharKind k = side == Side::Plus ? CharKind::ApqPlus : CharKind::ApqMinus;
  auto r = base_report(k, kind_name(k), e.p(), e.q(), e.alpha());
  r.variant = as_variant(side);
  return adjacent_report(std::move(r), w.grid(), apq_side_pair(w.values(), e, side, false));
}

CharacteristicReport apq_rooted(const GridFn& w, const Exponents& e, Variant variant) {
  auto r = base_report(CharKind::ApqRooted, kind_name(CharKind::ApqRooted, variant), e.p(), e.q(), e.alpha());
  r.variant = variant;
  const Pair pr = apq_rooted_pair(w.values(), e, variant);
  if (variant == Variant::TwoSided) return interval_report(std::move(r), w.grid(), pr);
  return adjacent_report(std::move(r), w.grid(), pr);
}

namespace {

Pair ap2_pair(const Weight2D& w) {
  return {to_vec(w.base().values()), to_vec(w.dual().values()), FastPow(1.0), FastPow(w.p() - 1.0)};
}

void fill_rect(CharacteristicReport& r, const Grid2D& g, const detail::RectSup& s) {
  r.value = s.value;
  r.witness.shape = WitnessShape::Rectangle;
  r.witness.rect = s.key;
  r.witness.lo_x = g.gx().boundary(s.key.i0);
  r.witness.hi_x = g.gx().boundary(s.key.i1 + 1);
  r.witness.lo_y = g.gy().boundary(s.key.j0);
  r.witness.hi_y = g.gy().boundary(s.key.j1 + 1);
}

void fill_corner(CharacteristicReport& r, const Grid2D& g, const detail::CornerSup& s) {
  r.value = s.value;
  r.witness.shape = WitnessShape::Corner;
  r.witness.corner = s.key;
  if (s.key.sx == detail::kDegenerate) {
    r.witness.lo_x = r.witness.hi_x = g.gx().center(s.key.ax);
    r.witness.lo_y = r.witness.hi_y = g.gy().center(s.key.ay);
  } else {
    r.witness.lo_x = g.gx().boundary(s.key.ax) - s.hx;
    r.witness.hi_x = g.gx().boundary(s.key.ax) + s.hx;
    r.witness.lo_y = g.gy().boundary(s.key.ay) - s.hy;
    r.witness.hi_y = g.gy().boundary(s.key.ay) + s.hy;
  }
}

CharacteristicReport rect_report(CharacteristicReport r, const Grid2D& g, const Pair& pr) {
  fill_rect(r, g, detail::rect_sup(g.gx().boundaries(), g.gy().boundaries(), pr.a, pr.b, pr.pa, pr.pb));
  return r;
}

CharacteristicReport corner_report(CharacteristicReport r, const Grid2D& g, const Pair& pr) {
  if (g.nx() < 2 || g.ny() < 2) throw std::invalid_argument("one-sided characteristics need at least two cells per axis");
  fill_corner(r, g, detail::corner_sup(g.gx().boundaries(), g.gy().boundaries(), pr.a, pr.b, pr.pa, pr.pb));
  return r;
}

double pair2_value(const Grid2D& g, const Pair& pr, const Witness& w) {
  if (w.shape == WitnessShape::Rectangle) {
    return detail::rect_value(g.gx().boundaries(), g.gy().boundaries(), pr.a, pr.b, pr.pa, pr.pb, w.rect);
  }
  return detail::corner_value(g.gx().boundaries(), g.gy().boundaries(), pr.a, pr.b, pr.pa, pr.pb, w.corner);
}

std::size_t slice_count(const Grid2D& g, Axis axis) { return axis == Axis::X ? g.ny() : g.nx(); }

// Max over slices of a 1D characteristic; strictly larger values win, so ties keep the first slice.
template <class Compute>
CharacteristicReport max_over_slices(const Grid2D& g, Axis axis, Compute&& compute) {
  CharacteristicReport best;
  bool have = false;
  const std::size_t m = slice_count(g, axis);
  for (std::size_t j = 0; j < m; ++j) {
    CharacteristicReport r = compute(j);
    if (!have || r.value > best.value) {
      best = std::move(r);
      best.witness.slice = j;
      have = true;
    }
  }
  // Report the slice as the other coordinate's cell.
  const Grid1D& other = axis == Axis::X ? g.gy() : g.gx();
  const double lo = other.boundary(best.witness.slice);
  const double hi = other.boundary(best.witness.slice + 1);
  if (axis == Axis::X) {
    best.witness.lo_y = lo;
    best.witness.hi_y = hi;
  } else {
    best.witness.lo_y = best.witness.lo_x;
    best.witness.hi_y = best.witness.hi_x;
    best.witness.lo_x = lo;
    best.witness.hi_x = hi;
  }
  return best;
}

}  // namespace

CharacteristicReport ap_strong(const Weight2D& w) {
  return rect_report(base_report(CharKind::ApStrong, "ap_strong", w.p(), w.p(), 0.0), w.base().grid(), ap2_pair(w));
}

CharacteristicReport apq_strong(const GridFn2D& w, const Exponents& e) {
  const Pair pr = apq_side_pair(w.values(), e, Side::Plus, true);
  return rect_report(base_report(CharKind::ApqStrong, "apq_strong", e.p(), e.q(), e.alpha()), w.grid(), pr);
}

CharacteristicReport ap_strong_oneside(const Weight2D& w, Side side) {
  const CharKind k = side == Side::Plus ? CharKind::ApStrongPlus : CharKind::ApStrongMinus;
  Pair pr = ap2_pair(w);
  if (side == Side::Minus) {
    std::swap(pr.a, pr.b);
    std::swap(pr.pa, pr.pb);
  }
  auto r = base_report(k, kind_name(k), w.p(), w.p(), 0.0);
  r.variant = as_variant(side);
  return corner_report(std::move(r), w.base().grid(), pr);
}

CharacteristicReport apq_strong_oneside(const GridFn2D& w, const Exponents& e, Side side) {
  const CharKind k = side == Side::Plus ? CharKind::ApqStrongPlus : CharKind::ApqStrongMinus;
  auto r = base_report(k, kind_name(k), e.p(), e.q(), e.alpha());
  r.variant = as_variant(side);
  return corner_report(std::move(r), w.grid(), apq_side_pair(w.values(), e, side, true));
}

CharacteristicReport ap_uniform_axis(const Weight2D& w, Axis axis, Variant variant) {
  const auto& g = w.base().grid();
  auto r = max_over_slices(g, axis, [&](std::size_t j) {
    const Weight slice(w.base().slice(axis, j), w.p());
    return variant == Variant::TwoSided ? ap(slice) : ap_oneside(slice, variant == Variant::Plus ? Side::Plus : Side::Minus);
  });
  r.kind = CharKind::ApAxis;
  r.name = kind_name(CharKind::ApAxis, variant, axis);
  r.variant = variant;
  r.axis = axis;
  return r;
}

CharacteristicReport apq_uniform_axis(const GridFn2D& w, const Exponents& e, Axis axis, Variant variant) {
  const auto& g = w.grid();
  auto r = max_over_slices(g, axis, [&](std::size_t j) { return apq_rooted(w.slice(axis, j), e, variant); });
  r.kind = CharKind::ApqAxis;
  r.name = kind_name(CharKind::ApqAxis, variant, axis);
  r.variant = variant;
  r.axis = axis;
  return r;
}

namespace {

Side side_of(Variant v) { return v == Variant::Minus ? Side::Minus : Side::Plus; }

}  // namespace

double recompute(const CharacteristicReport& r, const Weight& w) {
  const auto& g = w.base().grid();
  switch (r.kind) {
    case CharKind::Ap: return pair_value(g, ap_pair(w), r.witness);
    case CharKind::ApPlus: return pair_value(g, ap_side_pair(w, Side::Plus), r.witness);
    case CharKind::ApMinus: return pair_value(g, ap_side_pair(w, Side::Minus), r.witness);
    default: break;
  }
  throw std::invalid_argument("report kind does not take a single 1D weight");
}

double recompute(const CharacteristicReport& r, const GridFn& w, const Exponents& e) {
  switch (r.kind) {
    case CharKind::ApqPlus: return pair_value(w.grid(), apq_side_pair(w.values(), e, Side::Plus, false), r.witness);
    case CharKind::ApqMinus: return pair_value(w.grid(), apq_side_pair(w.values(), e, Side::Minus, false), r.witness);
    case CharKind::ApqRooted: return pair_value(w.grid(), apq_rooted_pair(w.values(), e, r.variant), r.witness);
    default: break;
  }
  throw std::invalid_argument("report kind does not take a 1D weight with exponents");
}

double recompute(const CharacteristicReport& r, const Weight2D& w) {
  const auto& g = w.base().grid();
  switch (r.kind) {
    case CharKind::ApStrong: return pair2_value(g, ap2_pair(w), r.witness);
    case CharKind::ApStrongPlus:
    case CharKind::ApStrongMinus: {
      Pair pr = ap2_pair(w);
      if (r.kind == CharKind::ApStrongMinus) {
        std::swap(pr.a, pr.b);
        std::swap(pr.pa, pr.pb);
      }
      return pair2_value(g, pr, r.witness);
    }
    case CharKind::ApAxis: {
      const Weight slice(w.base().slice(r.axis, r.witness.slice), w.p());
      if (r.variant == Variant::TwoSided) return pair_value(slice.base().grid(), ap_pair(slice), r.witness);
      return pair_value(slice.base().grid(), ap_side_pair(slice, side_of(r.variant)), r.witness);
    }
    default: break;
  }
  throw std::invalid_argument("report kind does not take a single 2D weight");
}

double recompute(const CharacteristicReport& r, const GridFn2D& w, const Exponents& e) {
  switch (r.kind) {
    case CharKind::ApqStrong: return pair2_value(w.grid(), apq_side_pair(w.values(), e, Side::Plus, true), r.witness);
    case CharKind::ApqStrongPlus: return pair2_value(w.grid(), apq_side_pair(w.values(), e, Side::Plus, true), r.witness);
    case CharKind::ApqStrongMinus: return pair2_value(w.grid(), apq_side_pair(w.values(), e, Side::Minus, true), r.witness);
    case CharKind::ApqAxis: {
      const GridFn slice = w.slice(r.axis, r.witness.slice);
      return pair_value(slice.grid(), apq_rooted_pair(slice.values(), e, r.variant), r.witness);
    }
    default: break;
  }
  throw std::invalid_argument("report kind does not take a 2D weight with exponents");
}

PowerBounds closed_form_power_bounds(double gamma, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("p must exceed 1");
  if (!(gamma > -1.0 && gamma < p - 1.0)) throw DomainError("power bounds need -1 < gamma < p - 1");
  const double pc = p / (p - 1.0);
  PowerBounds b{};
  b.b_gamma = std::max(std::pow(2.0, gamma / 2.0), 1.0);
  b.d_gamma = std::max(std::pow(2.0, -gamma / 2.0 - p + 1.0), 1.0);
  b.C_gamma = gamma >= 0.0 ? b.b_gamma : b.d_gamma;
  const double d0 = std::max(std::pow(2.0, -p + 1.0), 1.0);
  const double tail = std::pow(4.0, p) * (1.0 / (gamma + 1.0) * std::pow(gamma * (1.0 - pc) + 1.0, 1.0 - p) + 1.0);
  const double base = std::pow(16.0 / 9.0 + 1.0, gamma / 2.0) * std::pow(2.0 / 3.0, gamma);
  const double base_neg = std::pow(16.0 / 9.0 + 1.0, -gamma / 2.0) * std::pow(2.0 / 3.0, gamma);
  b.Gamma_gamma = std::max(base, b.b_gamma * tail);
  b.G_gamma = std::max(base_neg, d0 * b.d_gamma * tail);
  b.ap_upper = std::max(std::pow(2.0, std::abs(gamma)),
                        std::pow(4.0, p) / ((gamma + 1.0) * std::pow(gamma * (1.0 - pc) + 1.0, p - 1.0)));
  b.buckley_C = std::pow(3.0, p + pc) * std::pow(2.0, pc - p) * pc * std::pow(24.0, 2.0 / p) * std::pow(p, 1.0 / (p - 1.0));
  return b;
}

}  // namespace sharpwt
