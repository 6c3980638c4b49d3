#include "sharpwt/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "sharpwt/csv.hpp"
#include "sharpwt/errors.hpp"

namespace sharpwt {

namespace {

using Family = CharacteristicSpec::Family;

ExperimentSpec onesided_max(const std::string& id, double p, Side side) {
  ExperimentSpec s;
  s.id = id;
  s.op = Op1D::maximal(side);
  s.exponents = Exponents::make(p);
  s.weight = {p - 1.0, -(p - 1.0)};
  s.test = {-1.0, p - 1.0};
  s.support = side == Side::Plus ? Endpoint::Left : Endpoint::Right;
  s.in_norm = {p, 1.0};
  s.out_norm = {p, 1.0};
  s.characteristic = {Family::ApOneside, side};
  s.predicted_exponent = 1.0 / (p - 1.0);
  return s;
}

ExperimentSpec frac_family(const std::string& id, double p, double alpha, Side side) {
  ExperimentSpec s;
  s.id = id;
  s.exponents = Exponents::make(p, alpha);
  const double pc = s.exponents.p_conj();
  const double q = s.exponents.q();
  s.op = Op1D::frac_maximal(side, alpha);
  s.weight = {1.0 / pc, -1.0 / pc};
  s.test = {-1.0, 1.0};
  s.support = side == Side::Plus ? Endpoint::Left : Endpoint::Right;
  s.in_norm = {p, p};
  s.out_norm = {q, q};
  s.characteristic = {Family::ApqOneside, side};
  s.predicted_exponent = pc / q * (1.0 - alpha);
  s.lower_bound = LowerBoundSpec{-1.0 - 1.0 / q, 0.0};
  return s;
}

ExperimentSpec potential_family(const std::string& id, double p, double alpha, PotentialKind kind) {
  // The Weyl integral looks right, so it pairs with the Plus family; Riemann-Liouville with Minus.
  const Side side = kind == PotentialKind::Weyl ? Side::Plus : Side::Minus;
  ExperimentSpec s = frac_family(id, p, alpha, side);
  s.op = Op1D::potential_op(kind, alpha);
  s.predicted_exponent = std::max(1.0, s.exponents.p_conj() / s.exponents.q()) * (1.0 - alpha);
  s.lower_bound.reset();
  return s;
}

ExperimentSpec make(const std::string& id, const ExperimentOverrides& o) {
  const double p2 = o.p.value_or(2.0);
  const double pf = o.p.value_or(4.0 / 3.0);
  const double af = o.alpha.value_or(0.25);
  if (id == "ONESIDED_MAX_PLUS") return onesided_max(id, p2, Side::Plus);
  if (id == "ONESIDED_MAX_MINUS") return onesided_max(id, p2, Side::Minus);
  if (id == "FRAC_MAX_PLUS") return frac_family(id, pf, af, Side::Plus);
  if (id == "FRAC_MAX_MINUS") return frac_family(id, pf, af, Side::Minus);
  if (id == "POTENTIAL_PLUS") return potential_family(id, pf, af, PotentialKind::Weyl);
  if (id == "POTENTIAL_MINUS") return potential_family(id, pf, af, PotentialKind::RiemannLiouville);
  if (id == "WEAK_POTENTIAL_MINUS") {
    ExperimentSpec s = potential_family(id, pf, af, PotentialKind::RiemannLiouville);
    s.norm_kind = NormKind::Weak;
    s.predicted_exponent = 1.0 - af;
    s.claim = ClaimKind::UpperBound;
    return s;
  }
  if (id == "STRONG_MAX_2D") {
    ExperimentSpec s = onesided_max(id, p2, Side::Minus);
    s.op = Op1D::maximal_twosided();
    s.dims = 2;
    s.characteristic = {Family::Ap, Side::Plus};
    return s;
  }
  if (id == "PRODUCT_HILBERT_P2") {
    if (o.p && *o.p != 2.0) throw std::invalid_argument("PRODUCT_HILBERT_P2 is defined for p = 2 only");
    ExperimentSpec s;
    s.id = id;
    s.op = Op1D::hilbert_op();
    s.dims = 2;
    s.exponents = Exponents::make(2.0);
    s.weight = {1.0, -1.0};
    s.test = {-1.0, 1.0};
    s.support = Endpoint::Right;
    s.domain_radius = 1e60;
    s.in_norm = {2.0, 1.0};
    s.out_norm = {2.0, 1.0};
    s.characteristic = {Family::Ap, Side::Plus};
    s.predicted_exponent = 1.0;
    s.lower_bound = LowerBoundSpec{-3.0, 4.0};
    return s;
  }
  if (id == "ONESIDED_STRONG_MAX_PLUS") {
    ExperimentSpec s = onesided_max(id, p2, Side::Plus);
    s.dims = 2;
    return s;
  }
  if (id == "ONESIDED_STRONG_FRACMAX_PLUS" || id == "ONESIDED_STRONG_FRACMAX_MINUS") {
    ExperimentSpec s = frac_family(id, pf, af, id.ends_with("PLUS") ? Side::Plus : Side::Minus);
    s.dims = 2;
    s.lower_bound = LowerBoundSpec{-2.0 - 2.0 / s.exponents.q(), 0.0};
    return s;
  }
  if (id == "PRODUCT_POTENTIAL") {
    ExperimentSpec s = potential_family(id, pf, af, PotentialKind::RiemannLiouville);
    s.dims = 2;
    return s;
  }
  throw std::out_of_range("unknown experiment id: " + id);
}

void check_eps(const std::vector<double>& eps) {
  if (eps.empty()) throw std::invalid_argument("eps list is empty");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0 && eps[i] < 1.0)) throw std::invalid_argument("eps values must lie in (0, 1)");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw std::invalid_argument("eps list must be strictly decreasing");
  }
}

double characteristic_value(const ExperimentSpec& s, const GridFn& w) {
  switch (s.characteristic.family) {
    case Family::Ap: return ap(Weight(w, s.exponents.p())).value;
    case Family::ApOneside: return ap_oneside(Weight(w, s.exponents.p()), s.characteristic.side).value;
    case Family::ApqOneside: return apq_oneside(w, s.exponents, s.characteristic.side).value;
  }
  throw std::logic_error("unknown characteristic family");
}

bool one_sided(const Op1D& op) {
  return op.kind == Op1D::Kind::Maximal || op.kind == Op1D::Kind::FracMaximal;
}

}  // namespace

std::vector<std::string> experiment_ids() {
  return {"ONESIDED_MAX_PLUS",        "ONESIDED_MAX_MINUS",           "FRAC_MAX_PLUS",
          "FRAC_MAX_MINUS",           "POTENTIAL_PLUS",               "POTENTIAL_MINUS",
          "WEAK_POTENTIAL_MINUS",     "STRONG_MAX_2D",                "PRODUCT_HILBERT_P2",
          "ONESIDED_STRONG_MAX_PLUS", "ONESIDED_STRONG_FRACMAX_PLUS", "ONESIDED_STRONG_FRACMAX_MINUS",
          "PRODUCT_POTENTIAL"};
}

ExperimentSpec build_experiment(const std::string& id, const ExperimentOverrides& overrides) {
  ExperimentSpec s = make(id, overrides);
  if (overrides.eps_list) {
    check_eps(*overrides.eps_list);
    s.eps_list = *overrides.eps_list;
  }
  if (overrides.n) {
    if (*overrides.n < 4 || *overrides.n % 2 != 0) throw std::invalid_argument("n must be even and at least 4");
    s.n = *overrides.n;
  }
  return s;
}

namespace {

// Exponents of everything evaluated pointwise (weights, dual pair, f) and of their
// products with a cell width, at eps -> 0.
double largest_power(const ExperimentSpec& s) {
  const double g = std::abs(s.weight.c0);
  const double f = std::abs(s.test.c0);
  const auto& e = s.exponents;
  std::vector<double> k{1.0, f, std::abs(s.test.c0 + 1.0), g, g + 1.0, g * s.in_norm.weight_power + 1.0,
                        g * s.out_norm.weight_power + 1.0};
  if (s.characteristic.family == Family::ApqOneside) {
    k.insert(k.end(), {g * e.q() + 1.0, g * e.p_conj(), std::abs(1.0 - g * e.p_conj())});
  } else {
    const double d = g * (e.p_conj() - 1.0);
    k.insert(k.end(), {d, std::abs(1.0 - d)});
  }
  return *std::max_element(k.begin(), k.end());
}

constexpr double kDecades = 560.0;   // usable double range, leaving headroom for sums and ratios
constexpr double kMaxDepth = 300.0;
constexpr double kTailDecades = 3.0;  // f-norm mass left below the innermost cell, relative

// The r-th power of the f-norm below depth delta is delta^{e+1} of the total, e + 1 = O(eps).
// The innermost cell's cell averages overstate that tail by the factor `excess`. Going deeper
// than needed only coarsens every decade.
double depth_decades(const ExperimentSpec& s) {
  const double top = std::log10(s.domain_radius / s.support_radius);
  double d = std::min(kMaxDepth, kDecades / largest_power(s) - top);
  const double eps = *std::min_element(s.eps_list.begin(), s.eps_list.end());
  const double sf = s.test.at(eps);
  const double kg = s.in_norm.weight_power * s.weight.at(eps);
  const double decay = sf * s.in_norm.r + kg + 1.0;
  if (decay > 0.0 && sf > -1.0 && kg > -1.0) {
    const double excess = decay / (std::pow(sf + 1.0, s.in_norm.r) * (kg + 1.0));
    d = std::min(d, (kTailDecades + std::max(0.0, std::log10(excess))) / decay);
  }
  return d;
}

}  // namespace

double innermost_scale(const ExperimentSpec& s) { return std::pow(10.0, -depth_decades(s)); }

double experiment_scale(const ExperimentSpec& s) {
  // Centers the decades [support * delta, domain] around 1 in the exponent range.
  const double top = std::log10(s.domain_radius / s.support_radius);
  return std::pow(10.0, 0.5 * (depth_decades(s) - top)) / s.support_radius;
}

Grid1D experiment_grid(const ExperimentSpec& s) {
  const double r = s.domain_radius * experiment_scale(s);
  const double ratio = std::pow(innermost_scale(s) * s.support_radius / s.domain_radius, 2.0 / static_cast<double>(s.n));
  return Grid1D::geometric_about(-r, r, s.n, 0.0, ratio);
}

ExperimentSpec refined(const ExperimentSpec& s) {
  ExperimentSpec t = s;
  t.n = 2 * s.n;
  return t;
}

double analytic_f_norm(const ExperimentSpec& s, double eps) {
  const double e = s.test.at(eps) * s.in_norm.r + s.in_norm.weight_power * s.weight.at(eps);
  if (!(e > -1.0)) throw DomainError("test function norm diverges");
  const double one = std::pow(std::pow(s.support_radius, e + 1.0) / (e + 1.0), 1.0 / s.in_norm.r);
  return s.dims == 2 ? one * one : one;
}

Fit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("fit needs equally many x and y values");
  if (xs.size() < 2) throw std::invalid_argument("fit needs at least 2 points");
  const std::size_t n = xs.size();
  double mx = 0.0;
  double my = 0.0;
  std::vector<double> lx(n);
  std::vector<double> ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw std::invalid_argument("fit needs positive values");
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit needs at least 2 distinct x values");
  Fit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = ly[i] - (fit.intercept + fit.slope * lx[i]);
    res += d * d;
  }
  fit.r2 = syy > 0.0 ? 1.0 - res / syy : 1.0;
  return fit;
}

namespace {

double back_scale(const ExperimentSpec& s, double scale, double gamma, double sf) {
  return std::pow(scale, sf + (s.in_norm.weight_power * gamma + 1.0) / s.in_norm.r);
}

double dims_power(const ExperimentSpec& s, double v) { return s.dims == 2 ? v * v : v; }

}  // namespace

double quadrature_f_norm(const ExperimentSpec& s, double eps) {
  const GridPtr g = share(experiment_grid(s));
  const double gamma = s.weight.at(eps);
  const double sf = s.test.at(eps);
  const double scale = experiment_scale(s);
  const GridFn f = power_function(g, sf, 0.0, s.support, s.support_radius * scale);
  const GridFn din = power_weight(g, s.in_norm.weight_power * gamma, 0.0);
  return dims_power(s, lp_norm(f, din, s.in_norm.r) / back_scale(s, scale, gamma, sf));
}

SweepResult run_sweep(const ExperimentSpec& s, const SweepOptions& options) {
  check_eps(s.eps_list);
  const GridPtr g = share(experiment_grid(s));
  SweepResult out;
  out.id = s.id;
  out.predicted = s.predicted_exponent;
  out.claim = s.claim;
  out.n = s.n;
  out.edge_cells = one_sided(s.op) ? static_cast<std::size_t>(s.dims) : 0;
  std::vector<double> eps = s.eps_list;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  const auto pw = [&](double e) { return dims_power(s, e); };
  for (double ep : eps) {
    SweepRow row;
    row.eps = ep;
    try {
      const double gamma = s.weight.at(ep);
      const double sf = s.test.at(ep);
      const double scale = experiment_scale(s);
      const GridFn f = power_function(g, sf, 0.0, s.support, s.support_radius * scale);
      const GridFn din = power_weight(g, s.in_norm.weight_power * gamma, 0.0);
      const GridFn dout = power_weight(g, s.out_norm.weight_power * gamma, 0.0);
      const GridFn tf = s.op(f);
      const double tn = s.norm_kind == NormKind::Strong ? lp_norm(tf, dout, s.out_norm.r)
                                                        : weak_lp_norm(tf, dout, s.out_norm.r);
      // Both norms are homogeneous of the same degree under the dilation.
      const double back = back_scale(s, scale, gamma, sf);
      row.f_norm = analytic_f_norm(s, ep);
      row.f_norm_quadrature = pw(lp_norm(f, din, s.in_norm.r) / back);
      row.Tf_norm = pw(tn / back);
      row.ratio = row.Tf_norm / row.f_norm;
      if (options.characteristic) row.characteristic = pw(characteristic_value(s, power_weight(g, gamma, 0.0)));
      const bool finite = std::isfinite(row.ratio) && row.ratio > 0.0 && std::isfinite(row.Tf_norm);
      const bool char_ok = !options.characteristic || (std::isfinite(row.characteristic) && row.characteristic > 0.0);
      row.flagged = !(finite && char_ok);
    } catch (const std::invalid_argument&) {
      row.flagged = true;
    }
    out.rows.push_back(row);
  }
  if (options.characteristic) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& r : out.rows) {
      if (r.flagged) continue;
      xs.push_back(r.characteristic);
      ys.push_back(r.ratio);
    }
    if (xs.size() >= 2) out.fit = fit_loglog(xs, ys);
  }
  return out;
}

bool slope_within(const SweepResult& r, double tolerance) {
  if (!r.fit) return false;
  if (r.claim == ClaimKind::UpperBound) return r.fit->slope <= (1.0 + tolerance) * r.predicted;
  return std::abs(r.fit->slope - r.predicted) <= tolerance * r.predicted;
}

std::vector<double> lower_bound_constants(const SweepResult& r, const LowerBoundSpec& lb) {
  std::vector<double> c;
  for (const auto& row : r.rows) {
    if (!row.flagged) c.push_back(row.Tf_norm / std::pow(row.eps, lb.exponent));
  }
  return c;
}

std::string fit_line(const SweepResult& r) {
  char buf[256];
  if (r.fit) {
    std::snprintf(buf, sizeof buf, "# slope=%.6g intercept=%.6g r2=%.6g predicted=%.6g", r.fit->slope, r.fit->intercept,
                  r.fit->r2, r.predicted);
  } else {
    std::snprintf(buf, sizeof buf, "# slope=nan intercept=nan r2=nan predicted=%.6g", r.predicted);
  }
  return buf;
}

void write_sweep_csv(std::ostream& out, const SweepResult& r) {
  out << "eps,characteristic,f_norm,Tf_norm,ratio\n";
  for (const auto& row : r.rows) {
    out << format_real(row.eps) << ',' << format_real(row.characteristic) << ',' << format_real(row.f_norm) << ','
        << format_real(row.Tf_norm) << ',' << format_real(row.ratio) << '\n';
  }
  for (const auto& row : r.rows) {
    if (row.flagged) out << "# flagged eps=" << format_real(row.eps) << '\n';
  }
  out << fit_line(r) << '\n';
}

}  // namespace sharpwt
