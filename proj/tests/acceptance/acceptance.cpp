// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sharpwt/characteristics.hpp"
#include "sharpwt/op1d.hpp"
#include "sharpwt/opnd.hpp"
#include "sharpwt/parallel.hpp"
#include "sharpwt/sharpness.hpp"

using namespace sharpwt;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

GridFn random_fn(std::mt19937_64& rng, const GridPtr& g, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(g->size());
  for (auto& x : v) x = d(rng);
  return GridFn(g, std::move(v));
}

GridFn random_weight(std::mt19937_64& rng, const GridPtr& g) {
  std::lognormal_distribution<double> d(0.0, 1.0);
  std::vector<double> v(g->size());
  for (auto& x : v) x = d(rng);
  return GridFn(g, std::move(v));
}

GridPtr random_grid(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(0.05, 1.0);
  std::vector<double> b{0.0};
  for (std::size_t i = 0; i < n; ++i) b.push_back(b.back() + d(rng));
  return share(Grid1D::from_boundaries(std::move(b)));
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

double max_over(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }
double min_over(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

// Ratios moved by doubling n; used by the convergence gate.
std::vector<double> ratio_shift(const ExperimentSpec& s, const SweepResult& r) {
  const SweepResult fine = run_sweep(refined(s), SweepOptions{false});
  std::vector<double> shift;
  for (std::size_t k = 0; k < r.rows.size() && k < fine.rows.size(); ++k) {
    shift.push_back(std::abs(fine.rows[k].ratio / r.rows[k].ratio - 1.0));
  }
  return shift;
}

struct ConvergenceLog {
  double worst = 0.0;
  std::string where;
  void add(const std::string& id, const std::vector<double>& shift) {
    for (double s : shift) {
      if (!(s <= worst)) {
        worst = s;
        where = id;
      }
    }
  }
};

ConvergenceLog convergence;

Outcome c1_hull_brute() {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> size(1, 512);
  std::size_t mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = size(rng);
    const auto g = t % 2 ? random_grid(rng, n) : share(Grid1D::uniform(0.0, 1.0, n));
    const GridFn f = random_fn(rng, g, -1.0, 1.0);
    for (Side s : {Side::Plus, Side::Minus}) {
      const GridFn h = maximal_oneside(f, s, MaxAlgo::Hull);
      const GridFn b = maximal_oneside(f, s, MaxAlgo::Brute);
      if (!std::ranges::equal(h.values(), b.values())) ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatching outputs of 2000"};
}

Outcome c2_constant_weight() {
  std::mt19937_64 rng(102);
  double worst = 0.0;
  for (int t = 0; t < 3; ++t) {
    const auto g = random_grid(rng, 24);
    const GridFn one = GridFn::constant(g, 1.0);
    const Exponents e = Exponents::make(1.5 + 0.5 * t, 0.2);
    const Weight w(one, e.p());
    const GridFn2D one2 = tensor(one, GridFn::constant(random_grid(rng, 12), 1.0));
    const Weight2D w2(one2, e.p());
    std::vector<double> v{ap(w).value,
                          ap_oneside(w, Side::Plus).value,
                          ap_oneside(w, Side::Minus).value,
                          apq_oneside(one, e, Side::Plus).value,
                          apq_oneside(one, e, Side::Minus).value,
                          apq_rooted(one, e, Variant::TwoSided).value,
                          apq_rooted(one, e, Variant::Plus).value,
                          apq_rooted(one, e, Variant::Minus).value,
                          ap_strong(w2).value,
                          apq_strong(one2, e).value,
                          ap_strong_oneside(w2, Side::Plus).value,
                          ap_strong_oneside(w2, Side::Minus).value,
                          apq_strong_oneside(one2, e, Side::Plus).value,
                          apq_strong_oneside(one2, e, Side::Minus).value};
    for (Axis a : {Axis::X, Axis::Y}) {
      for (Variant var : {Variant::TwoSided, Variant::Plus, Variant::Minus}) {
        v.push_back(ap_uniform_axis(w2, a, var).value);
        v.push_back(apq_uniform_axis(one2, e, a, var).value);
      }
    }
    for (double x : v) worst = std::max(worst, std::abs(x - 1.0));
  }
  return {worst <= 1e-12, "max |value - 1| = " + fmt(worst)};
}

Outcome c3_doubling() {
  std::mt19937_64 rng(103);
  const std::size_t n = 128;
  const auto g = share(Grid1D::uniform(0.0, 1.0, n));
  std::size_t violations = 0, checked = 0;
  for (int t = 0; t < 100; ++t) {
    const Exponents e = Exponents::make(1.25 + 0.02 * (t % 25), 0.05 * (t % 5));
    const GridFn u = random_weight(rng, g);
    const double k = apq_oneside(u, e, Side::Minus).value;
    const GridFn uq = u.map([&](double x) { return std::pow(x, e.q()); });
    for (std::size_t a = 1; a < n; ++a) {
      for (std::size_t h = 1; h <= std::min(a, n - a); ++h, ++checked) {
        if (!(integrate(uq, {a, a + h}) <= k * integrate(uq, {a - h, a}) * (1.0 + 1e-12))) ++violations;
      }
      for (std::size_t r = 1; 2 * r <= a; ++r, ++checked) {
        if (!(integrate(uq, {a - r, a}) / integrate(uq, {a - 2 * r, a}) <= k / (k + 1.0) * (1.0 + 1e-12))) ++violations;
      }
    }
  }
  return {violations == 0, std::to_string(violations) + " violations of " + std::to_string(checked)};
}

Outcome c4_domination() {
  std::mt19937_64 rng(104);
  std::size_t violations = 0;
  for (int t = 0; t < 100; ++t) {
    const auto g = random_grid(rng, 256);
    const GridFn f = random_fn(rng, g, 0.0, 1.0);
    const double alpha = 0.05 + 0.9 * (t % 20) / 20.0;
    const GridFn mp = frac_maximal_oneside(f, alpha, Side::Plus);
    const auto wp = potential_at(f, alpha, PotentialKind::Weyl, anchors(*g, Side::Plus));
    const GridFn mm = frac_maximal_oneside(f, alpha, Side::Minus);
    const auto rm = potential_at(f, alpha, PotentialKind::RiemannLiouville, anchors(*g, Side::Minus));
    for (std::size_t i = 0; i < g->size(); ++i) {
      if (!(mp[i] <= wp[i])) ++violations;
      if (!(mm[i] <= rm[i])) ++violations;
    }
  }
  return {violations == 0, std::to_string(violations) + " violations"};
}

Outcome c5_adjoint() {
  const std::size_t n = 64;
  const Grid1D g = Grid1D::uniform(0.0, 1.0, n);
  double worst = 0.0;
  for (double alpha : {0.1, 0.3, 0.5, 0.9}) {
    const auto R = potential_matrix(g, alpha, PotentialKind::RiemannLiouville);
    const auto W = potential_matrix(g, alpha, PotentialKind::Weyl);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(R[i * n + j] - W[j * n + i]));
    }
  }
  return {worst <= 1e-12, "max |R - W^T| = " + fmt(worst)};
}

Outcome c6_duality() {
  std::mt19937_64 rng(106);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto g = t % 2 ? random_grid(rng, 32) : share(Grid1D::uniform(0.0, 1.0, 32));
    const Weight w(random_weight(rng, g), 1.2 + 0.06 * t);
    const double a = ap(w).value;
    const double b = ap(w.dual_weight()).value;
    worst = std::max(worst, std::abs(b / std::pow(a, 1.0 / (w.p() - 1.0)) - 1.0));
  }
  return {worst <= 1e-10, "max relative error " + fmt(worst)};
}

Outcome c7_onesided_slopes() {
  Outcome o;
  for (const char* id : {"ONESIDED_MAX_PLUS", "ONESIDED_MAX_MINUS"}) {
    for (double p : {2.0, 3.0}) {
      ExperimentOverrides ov;
      ov.p = p;
      const auto s = build_experiment(id, ov);
      const auto t0 = Clock::now();
      const auto r = run_sweep(s);
      const double secs = seconds_since(t0);
      const bool ok = slope_within(r, 0.15) && secs < 60.0;
      o.pass = o.pass && ok;
      o.detail += std::string(id) + " p=" + fmt(p) + " slope " + (r.fit ? fmt(r.fit->slope) : "nan") + "/" +
                  fmt(r.predicted) + " " + fmt(secs) + "s; ";
      convergence.add(std::string(id) + " p=" + fmt(p), ratio_shift(s, r));
    }
  }
  return o;
}

Outcome c8_frac_maximal() {
  ExperimentOverrides ov;
  ov.p = 4.0 / 3.0;
  ov.alpha = 0.25;
  const auto s = build_experiment("FRAC_MAX_PLUS", ov);
  const auto t0 = Clock::now();
  const auto r = run_sweep(s);
  const double secs = seconds_since(t0);
  const auto c = lower_bound_constants(r, *s.lower_bound);
  const bool stable = c.size() == s.eps_list.size() && min_over(c) > 0.0 && max_over(c) / min_over(c) < 2.0;
  const bool ok = stable && slope_within(r, 0.15) && secs < 120.0;
  convergence.add("FRAC_MAX_PLUS", ratio_shift(s, r));
  return {ok, "slope " + (r.fit ? fmt(r.fit->slope) : std::string("nan")) + "/" + fmt(r.predicted) + ", c in [" +
                  fmt(min_over(c)) + ", " + fmt(max_over(c)) + "], " + fmt(secs) + "s"};
}

Outcome c9_closed_form() {
  const double p = 2.0;
  const double pc = p / (p - 1.0);
  const auto g = share(Grid1D::geometric_about(-1.0, 1.0, 2048, 0.0, std::pow(1e-12, 2.0 / 2048.0)));
  Outcome o;
  for (double gamma : {0.0, 0.25, 0.5}) {
    const double bound = std::max(std::pow(2.0, std::abs(gamma)),
                                  std::pow(4.0, p) / ((gamma + 1.0) * std::pow(gamma * (1.0 - pc) + 1.0, p - 1.0)));
    const double v = ap(Weight(power_weight(g, gamma, 0.0), p)).value;
    o.pass = o.pass && v <= bound && closed_form_power_bounds(gamma, p).ap_upper == bound;
    o.detail += "gamma=" + fmt(gamma) + " ap " + fmt(v) + " <= " + fmt(bound) + "; ";
  }
  return o;
}

Outcome c10_strong_fracmax() {
  ExperimentOverrides ov;
  ov.p = 4.0 / 3.0;
  ov.alpha = 0.25;
  const auto s = build_experiment("ONESIDED_STRONG_FRACMAX_PLUS", ov);
  const auto t0 = Clock::now();
  double worst = 0.0;
  const auto g = share(Grid1D::geometric_about(-1.0, 1.0, 32, 0.0, std::pow(1e-6, 2.0 / 32.0)));
  for (double eps : s.eps_list) {
    const GridFn u = power_function(g, s.test.at(eps), 0.0, s.support, s.support_radius);
    const GridFn2D brute = strong_maximal_oneside(tensor(u, u), s.op.side, s.op.alpha, OnesidedAlgo::Brute);
    const GridFn2D fact = strong_maximal_oneside_factored(u, u, s.op.side, s.op.alpha);
    for (std::size_t k = 0; k < brute.size(); ++k) {
      if (fact[k] != 0.0 || brute[k] != 0.0) worst = std::max(worst, std::abs(brute[k] / fact[k] - 1.0));
    }
  }
  const auto r = run_sweep(s);
  const double secs = seconds_since(t0);
  const auto c = lower_bound_constants(r, *s.lower_bound);
  const bool stable = c.size() == s.eps_list.size() && min_over(c) > 0.0 && max_over(c) / min_over(c) < 2.0;
  convergence.add("ONESIDED_STRONG_FRACMAX_PLUS", ratio_shift(s, r));
  return {worst <= 1e-12 && stable && secs < 120.0,
          "brute/factored max rel " + fmt(worst) + ", c in [" + fmt(min_over(c)) + ", " + fmt(max_over(c)) + "], " +
              fmt(secs) + "s"};
}

Outcome c11_product_hilbert() {
  const auto s = build_experiment("PRODUCT_HILBERT_P2");
  const auto t0 = Clock::now();
  const auto coarse = run_sweep(build_experiment("PRODUCT_HILBERT_P2", [&] {
    ExperimentOverrides o;
    o.n = s.n / 2;
    return o;
  }()));
  const auto r = run_sweep(s);
  const double secs = seconds_since(t0);
  // delta needed per row: Tf_norm = 4 (1 - delta) eps^-3.
  const auto cc = lower_bound_constants(coarse, *s.lower_bound);
  const auto cf = lower_bound_constants(r, *s.lower_bound);
  bool ok = cf.size() == s.eps_list.size() && cc.size() == cf.size() && secs < 120.0;
  double worst_delta = 0.0;
  bool monotone = true;
  for (std::size_t k = 0; ok && k < cf.size(); ++k) {
    const double dc = std::max(0.0, 1.0 - cc[k] / 4.0);
    const double df = std::max(0.0, 1.0 - cf[k] / 4.0);
    worst_delta = std::max(worst_delta, df);
    monotone = monotone && df <= dc;
  }
  ok = ok && worst_delta <= 0.25 && monotone;
  convergence.add("PRODUCT_HILBERT_P2", ratio_shift(s, r));
  return {ok, "delta " + fmt(worst_delta) + (monotone ? ", improves" : ", does not improve") + " under refinement, c in [" +
                  fmt(min_over(cf)) + ", " + fmt(max_over(cf)) + "], " + fmt(secs) + "s"};
}

Outcome c12_convergence() {
  return {convergence.worst < 0.02, "largest ratio shift " + fmt(convergence.worst) + " (" + convergence.where + ")"};
}

}  // namespace

int main() {
  configure_threads();
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
    double limit_s;  // 0: timed inside the criterion
  };
  const std::vector<Criterion> criteria{
      {"1 hull equals brute", c1_hull_brute, 5.0},
      {"2 constant-weight characteristics", c2_constant_weight, 1.0},
      {"3 doubling inequalities", c3_doubling, 30.0},
      {"4 pointwise dominations", c4_domination, 10.0},
      {"5 adjoint potential matrices", c5_adjoint, 0.0},
      {"6 duality identity", c6_duality, 0.0},
      {"7 one-sided maximal slopes", c7_onesided_slopes, 0.0},
      {"8 fractional maximal slope and lower bound", c8_frac_maximal, 0.0},
      {"9 closed-form power-weight bound", c9_closed_form, 10.0},
      {"10 anchored rectangle factorization and lower bound", c10_strong_fracmax, 0.0},
      {"11 product Hilbert lower bound", c11_product_hilbert, 0.0},
      {"12 grid convergence", c12_convergence, 0.0},
  };
  int failed = 0;
  for (const auto& [name, run, limit] : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = seconds_since(t0);
    if (limit > 0.0 && secs >= limit) {
      o.pass = false;
      o.detail += " (over the " + fmt(limit) + "s budget)";
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
