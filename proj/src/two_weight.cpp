#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sharpwt/characteristics.hpp"
#include "sharpwt/errors.hpp"
#include "sharpwt/op1d.hpp"

namespace sharpwt {

using detail::FastPow;

namespace {

void check_density(const GridFn& v) {
  for (double x : v.values()) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("density values must be finite and nonnegative");
  }
}

void check_same_grid(const GridFn& v, const GridFn& w) {
  if (!(v.grid() == w.grid())) throw std::invalid_argument("v and w must live on the same grid");
}

std::vector<double> dual_of(const GridFn& w, double p) {
  const double e = 1.0 - p / (p - 1.0);
  std::vector<double> s(w.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(w[i] > 0.0) || !std::isfinite(w[i])) throw std::invalid_argument("weight values must be finite and positive");
    s[i] = std::pow(w[i], e);
    if (!(s[i] > 0.0) || !std::isfinite(s[i])) throw DomainError("dual weight is not finite and positive");
  }
  return s;
}

// The local/tail densities of a Glo or GK constant, oriented so that the tail lies to the right.
struct TailProblem {
  std::vector<double> x;
  std::vector<double> local;
  std::vector<double> tail;
  double kernel_exp;
  FastPow plocal{1.0};
  FastPow ptail{1.0};
  bool reflected;
};

TailProblem tail_problem(const GridFn& v, const GridFn& w, const Exponents& e, CharKind kind) {
  check_density(v);
  check_same_grid(v, w);
  const double p = e.p();
  const double q = e.q();
  const double pc = e.p_conj();
  const double a = e.alpha();
  TailProblem t;
  const auto sigma = dual_of(w, p);
  const std::vector<double> vv(v.values().begin(), v.values().end());
  const bool glo = kind == CharKind::GloPlus || kind == CharKind::GloMinus;
  if (glo) {
    if (!((1.0 - a) * pc > 1.0)) throw DomainError("Glo constant needs (1 - alpha) p' > 1");
    t.local = vv;
    t.tail = sigma;
    t.kernel_exp = (a - 1.0) * pc;
    t.plocal = FastPow(1.0 / q);
    t.ptail = FastPow(1.0 / pc);
  } else {
    if (!((1.0 - a) * q > 1.0)) throw DomainError("GK constant needs (1 - alpha) q > 1");
    t.local = sigma;
    t.tail = vv;
    t.kernel_exp = -(1.0 - a) * q;
    t.plocal = FastPow(1.0 / pc);
    t.ptail = FastPow(1.0 / q);
  }
  // Glo+ and GK- have the tail on the right; the other two are mirrored.
  t.reflected = kind == CharKind::GloMinus || kind == CharKind::GkPlus;
  const auto& xb = w.grid().boundaries();
  if (t.reflected) {
    const std::size_t n = w.size();
    t.x.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) t.x[k] = -xb[n - k];
    std::reverse(t.local.begin(), t.local.end());
    std::reverse(t.tail.begin(), t.tail.end());
  } else {
    t.x = xb;
  }
  return t;
}

CharacteristicReport tail_constant(const GridFn& v, const GridFn& w, const Exponents& e, CharKind kind) {
  if (w.size() < 2) throw std::invalid_argument("two-weight constants need at least two cells");
  const TailProblem t = tail_problem(v, w, e, kind);
  const auto s = detail::right_tail_sup(t.x, t.local, t.tail, t.kernel_exp, t.plocal, t.ptail);
  CharacteristicReport r;
  r.kind = kind;
  r.name = kind_name(kind);
  r.p = e.p();
  r.q = e.q();
  r.alpha = e.alpha();
  r.value = s.value;
  r.truncated = true;
  r.witness.shape = WitnessShape::Anchored;
  r.witness.anchor = s.key;
  const std::size_t a = t.reflected ? w.size() - s.key.anchor : s.key.anchor;
  r.witness.lo_x = w.grid().boundary(a) - s.h;
  r.witness.hi_x = w.grid().boundary(a) + s.h;
  return r;
}

double mt_term(const GridFn& v, const std::vector<double>& sigma, const Grid1D& g, const GridPtr& gp,
               const Exponents& e, Side side, detail::IntervalKey I) {
  std::vector<double> chi(sigma.size(), 0.0);
  double mass = 0.0;
  for (std::size_t c = I.first; c <= I.last; ++c) {
    chi[c] = sigma[c];
    mass += sigma[c] * g.width(c);
  }
  if (!(mass > 0.0)) throw DomainError("sigma(I) = 0");
  const GridFn f(gp, std::move(chi));
  const GridFn m = e.alpha() == 0.0 ? maximal_oneside(f, side) : frac_maximal_oneside(f, e.alpha(), side);
  return lp_norm(m, v, e.q()) / std::pow(mass, 1.0 / e.p());
}

// The adjoint potential of v chi_I at cell centers, accumulated cell by cell.
double lt_term(const GridFn& v, const GridFn& sigma, const std::vector<double>& k, const Exponents& e,
               detail::IntervalKey I, std::vector<double>& acc) {
  const std::size_t n = v.size();
  acc.assign(n, 0.0);
  double mass = 0.0;
  for (std::size_t c = I.first; c <= I.last; ++c) {
    if (v[c] == 0.0) continue;
    mass += v[c] * v.grid().width(c);
    for (std::size_t i = 0; i < n; ++i) acc[i] += k[i * n + c] * v[c];
  }
  if (mass == 0.0) return -1.0;
  const GridFn g(v.grid_ptr(), acc);
  return lp_norm(g, sigma, e.p_conj()) / std::pow(mass, 1.0 / e.q_conj());
}

PotentialKind adjoint(PotentialKind k) {
  return k == PotentialKind::Weyl ? PotentialKind::RiemannLiouville : PotentialKind::Weyl;
}

}  // namespace

CharacteristicReport glo_constant(const GridFn& v, const GridFn& w, const Exponents& e, Side side) {
  return tail_constant(v, w, e, side == Side::Plus ? CharKind::GloPlus : CharKind::GloMinus);
}

CharacteristicReport gk_constant(const GridFn& v, const GridFn& w, const Exponents& e, Side side) {
  return tail_constant(v, w, e, side == Side::Plus ? CharKind::GkPlus : CharKind::GkMinus);
}

CharacteristicReport sawyer_mt_constant(const GridFn& v, const GridFn& w, const Exponents& e, Side side) {
  check_density(v);
  check_same_grid(v, w);
  const auto sigma = dual_of(w, e.p());
  const std::size_t n = w.size();
  const auto& g = w.grid();
  detail::Best<detail::IntervalKey> best;
#pragma omp parallel
  {
    detail::Best<detail::IntervalKey> local;
#pragma omp for schedule(dynamic, 4) nowait
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j; k < n; ++k) {
        const detail::IntervalKey I{j, k};
        local.offer(mt_term(v, sigma, g, w.grid_ptr(), e, side, I), I);
      }
    }
#pragma omp critical(sharpwt_mt)
    best.merge(local);
  }
  CharacteristicReport r;
  r.kind = side == Side::Plus ? CharKind::MtPlus : CharKind::MtMinus;
  r.name = kind_name(r.kind);
  r.p = e.p();
  r.q = e.q();
  r.alpha = e.alpha();
  r.value = best.value;
  r.variant = side == Side::Plus ? Variant::Plus : Variant::Minus;
  r.witness.interval = best.key;
  r.witness.lo_x = g.boundary(best.key.first);
  r.witness.hi_x = g.boundary(best.key.last + 1);
  return r;
}

CharacteristicReport lorente_lt_constant(const GridFn& v, const GridFn& w, const Exponents& e, PotentialKind op) {
  check_density(v);
  check_same_grid(v, w);
  const GridFn sigma = w.with_values(dual_of(w, e.p()));
  const auto k = potential_matrix(w.grid(), e.alpha(), adjoint(op));
  const std::size_t n = w.size();
  detail::Best<detail::IntervalKey> best;
#pragma omp parallel
  {
    detail::Best<detail::IntervalKey> local;
    std::vector<double> acc;
#pragma omp for schedule(dynamic, 4) nowait
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t c = j; c < n; ++c) {
        const detail::IntervalKey I{j, c};
        const double val = lt_term(v, sigma, k, e, I, acc);
        if (val >= 0.0) local.offer(val, I);
      }
    }
#pragma omp critical(sharpwt_lt)
    best.merge(local);
  }
  CharacteristicReport r;
  r.kind = op == PotentialKind::Weyl ? CharKind::LtWeyl : CharKind::LtRiemannLiouville;
  r.name = kind_name(r.kind);
  r.p = e.p();
  r.q = e.q();
  r.alpha = e.alpha();
  r.value = best.valid ? best.value : 0.0;
  r.witness.interval = best.key;
  r.witness.lo_x = w.grid().boundary(best.key.first);
  r.witness.hi_x = w.grid().boundary(best.key.last + 1);
  return r;
}

double recompute(const CharacteristicReport& r, const GridFn& v, const GridFn& w, const Exponents& e) {
  switch (r.kind) {
    case CharKind::GloPlus:
    case CharKind::GloMinus:
    case CharKind::GkPlus:
    case CharKind::GkMinus: {
      const TailProblem t = tail_problem(v, w, e, r.kind);
      return detail::right_tail_value(t.x, t.local, t.tail, t.kernel_exp, t.plocal, t.ptail, r.witness.anchor);
    }
    case CharKind::MtPlus:
    case CharKind::MtMinus:
      return mt_term(v, dual_of(w, e.p()), w.grid(), w.grid_ptr(), e,
                     r.kind == CharKind::MtPlus ? Side::Plus : Side::Minus, r.witness.interval);
    case CharKind::LtWeyl:
    case CharKind::LtRiemannLiouville: {
      const GridFn sigma = w.with_values(dual_of(w, e.p()));
      const auto k = potential_matrix(w.grid(), e.alpha(),
                                      adjoint(r.kind == CharKind::LtWeyl ? PotentialKind::Weyl : PotentialKind::RiemannLiouville));
      std::vector<double> acc;
      return lt_term(v, sigma, k, e, r.witness.interval, acc);
    }
    default: break;
  }
  throw std::invalid_argument("report kind is not a two-weight constant");
}

}  // namespace sharpwt
