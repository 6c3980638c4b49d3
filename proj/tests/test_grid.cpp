#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "sharpwt/csv.hpp"
#include "sharpwt/errors.hpp"
#include "sharpwt/grid.hpp"

using namespace sharpwt;

namespace {

GridPtr unit(std::size_t n) { return share(Grid1D::uniform(0.0, 1.0, n)); }

GridFn random_fn(std::mt19937_64& rng, const GridPtr& g, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(g->size());
  for (auto& x : v) x = d(rng);
  return GridFn(g, std::move(v));
}

}  // namespace

TEST_CASE("grid boundaries are strictly increasing and hit the endpoints") {
  const Grid1D u = Grid1D::uniform(-1.0, 3.0, 8);
  CHECK(u.lo() == -1.0);
  CHECK(u.hi() == 3.0);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(u.width(i) == doctest::Approx(0.5).epsilon(1e-14));

  const Grid1D g = Grid1D::geometric_toward(0.0, 2.0, 40, Endpoint::Right, 0.9);
  CHECK(g.lo() == 0.0);
  CHECK(g.hi() == 2.0);
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    CHECK(g.boundary(i) < g.boundary(i + 1));
    CHECK(g.width(i + 1) / g.width(i) == doctest::Approx(0.9).epsilon(1e-10));
  }
  const Grid1D l = Grid1D::geometric_toward(0.0, 2.0, 40, Endpoint::Left, 0.9);
  for (std::size_t i = 0; i + 1 < l.size(); ++i) CHECK(l.width(i) / l.width(i + 1) == doctest::Approx(0.9).epsilon(1e-10));

  const Grid1D a = Grid1D::geometric_about(-1.0, 1.0, 20, 0.0, 0.8);
  CHECK(a.boundary(10) == 0.0);
  CHECK(a.width(9) == doctest::Approx(a.width(10)).epsilon(1e-12));
  CHECK(a.width(8) / a.width(9) == doctest::Approx(1.0 / 0.8).epsilon(1e-10));
}

TEST_CASE("grid construction rejects bad input") {
  CHECK_THROWS_AS(Grid1D::uniform(1.0, 0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D::uniform(0.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D::geometric_toward(0.0, 1.0, 4, Endpoint::Left, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D::from_boundaries({0.0, 1.0, 1.0}), std::invalid_argument);
  // Widths below ulp(2) stop the boundaries from increasing.
  CHECK_THROWS_AS(Grid1D::geometric_toward(0.0, 2.0, 16384, Endpoint::Right, 0.95), std::invalid_argument);
}

TEST_CASE("exponents tie q to p and alpha") {
  const Exponents e = Exponents::make(2.0);
  CHECK(e.q() == 2.0);
  const Exponents f = Exponents::make(4.0 / 3.0, 0.25);
  CHECK(f.q() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(f.p_conj() == doctest::Approx(4.0).epsilon(1e-14));
  CHECK_THROWS_AS(Exponents::make(1.0), std::invalid_argument);
  CHECK_THROWS_AS(Exponents::make(2.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(Exponents::make(2.0, -0.1), std::invalid_argument);
}

TEST_CASE("integrate examples") {
  CHECK(integrate(GridFn::constant(unit(7), 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(integrate(GridFn::zero(unit(7))) == 0.0);
  const GridFn f(unit(2), {2.0, 4.0});
  CHECK(integrate(f, {0, 2}) == 3.0);
  CHECK_THROWS_AS(integrate(f, {0, 3}), std::out_of_range);
}

TEST_CASE("integrate is additive over disjoint ranges") {
  std::mt19937_64 rng(1);
  const auto g = share(Grid1D::geometric_toward(0.0, 1.0, 50, Endpoint::Left, 0.9));
  const GridFn f = random_fn(rng, g, -2.0, 3.0);
  for (std::size_t k = 0; k <= 50; ++k) {
    const double a = integrate(f, {0, k});
    const double b = integrate(f, {k, 50});
    CHECK(a + b == doctest::Approx(integrate(f)).epsilon(1e-13));
  }
}

TEST_CASE("lp_norm examples and homogeneity") {
  const auto g = unit(2);
  CHECK(lp_norm(GridFn::constant(g, 1.0), GridFn::constant(g, 1.0), 3.0) == doctest::Approx(1.0));
  CHECK(lp_norm(GridFn::constant(g, 2.5), 1.7) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(lp_norm(GridFn(g, {1.0, 2.0}), GridFn(g, {1.0, 3.0}), 2.0) == doctest::Approx(std::sqrt(6.5)).epsilon(1e-15));
  std::mt19937_64 rng(2);
  const auto h = unit(33);
  for (int t = 0; t < 20; ++t) {
    const GridFn f = random_fn(rng, h, -1.0, 1.0);
    const GridFn w = random_fn(rng, h, 0.1, 5.0);
    const double c = -3.25;
    CHECK(lp_norm(f.map([c](double x) { return c * x; }), w, 2.5) ==
          doctest::Approx(std::abs(c) * lp_norm(f, w, 2.5)).epsilon(1e-13));
  }
}

TEST_CASE("weak_lp_norm examples and domination by lp_norm") {
  const auto g = unit(4);
  const GridFn chi(g, {0.0, 3.0, 3.0, 0.0});
  const GridFn w(g, {1.0, 2.0, 4.0, 1.0});
  CHECK(weak_lp_norm(chi, w, 2.0) == doctest::Approx(3.0 * std::sqrt(1.5)).epsilon(1e-15));
  CHECK(weak_lp_norm(GridFn::zero(g), w, 2.0) == 0.0);
  std::mt19937_64 rng(3);
  const auto h = unit(40);
  for (int t = 0; t < 100; ++t) {
    const GridFn f = random_fn(rng, h, -2.0, 2.0);
    const GridFn d = random_fn(rng, h, 0.01, 3.0);
    const double p = 1.0 + 3.0 * (t % 7) / 7.0;
    CHECK(weak_lp_norm(f, d, p) <= lp_norm(f, d, p) * (1.0 + 1e-14));
  }
}

TEST_CASE("power_weight examples") {
  const auto g = unit(2);
  const GridFn one = power_weight(g, 0.0, 0.0);
  CHECK(one[0] == 1.0);
  CHECK(one[1] == 1.0);
  const GridFn lin = power_weight(g, 1.0, 0.0);
  CHECK(lin[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(lin[1] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS_AS(power_weight(g, -1.0, 0.5), DomainError);
  CHECK_NOTHROW(power_weight(g, -1.5, 2.0));
  for (double gamma : {-0.9, -0.5, 0.3, 1.0, 2.7}) {
    CHECK(integrate(power_weight(unit(64), gamma, 0.0)) == doctest::Approx(1.0 / (gamma + 1.0)).epsilon(1e-13));
  }
}

TEST_CASE("power_weight integrates exactly over cell-aligned subintervals") {
  const auto g = share(Grid1D::geometric_about(-1.0, 1.0, 60, 0.0, 0.85));
  for (double gamma : {-0.7, 0.4, 1.9}) {
    const GridFn w = power_weight(g, gamma, 0.0);
    for (std::size_t i = 0; i < 60; i += 7) {
      for (std::size_t j = i + 1; j <= 60; j += 5) {
        const double a = g->boundary(i);
        const double b = g->boundary(j);
        const auto F = [gamma](double x) { return std::copysign(std::pow(std::abs(x), gamma + 1.0) / (gamma + 1.0), x); };
        CHECK(integrate(w, {i, j}) == doctest::Approx(F(b) - F(a)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("power cell averages stay finite far below the underflow threshold") {
  // x^{5/2} at these endpoints underflows although the averages are representable.
  const auto g = share(Grid1D::from_boundaries({0.0, 1e-200, 2e-200, 1.0}));
  const GridFn w = power_weight(g, 1.5, 0.0);
  CHECK(w[0] == doctest::Approx(std::pow(1e-200, 1.5) / 2.5).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx((std::pow(2.0, 2.5) - 1.0) / 2.5 * std::pow(1e-200, 1.5)).epsilon(1e-12));
  const GridFn s = power_weight(g, -0.5, 0.0);
  CHECK(std::isfinite(s[0]));
  CHECK(s[0] == doctest::Approx(2.0 * std::pow(1e-200, -0.5)).epsilon(1e-12));
}

TEST_CASE("power_function is supported on one side of the center") {
  const auto g = share(Grid1D::uniform(-1.0, 1.0, 4));
  const GridFn f = power_function(g, 1.0, 0.0, Endpoint::Left, 1.0);
  CHECK(f[0] == doctest::Approx(0.75));
  CHECK(f[1] == doctest::Approx(0.25));
  CHECK(f[2] == 0.0);
  CHECK(f[3] == 0.0);
  CHECK_THROWS_AS(power_function(g, -1.0, 0.0, Endpoint::Right, 1.0), DomainError);
}

TEST_CASE("weights cache their dual") {
  const auto g = unit(3);
  const Weight w(GridFn(g, {1.0, 4.0, 0.25}), 3.0);
  CHECK(w.dual()[1] == doctest::Approx(std::pow(4.0, -0.5)));
  CHECK(w.with_p(2.0).dual()[1] == doctest::Approx(0.25));
  CHECK_THROWS_AS(Weight(GridFn(g, {1.0, 0.0, 1.0}), 2.0), std::invalid_argument);
  CHECK_THROWS_AS(Weight(GridFn(g, {1.0, 1.0, 1.0}), 1.0), std::invalid_argument);
}

TEST_CASE("grid maps and reflections") {
  const Grid1D g = Grid1D::geometric_toward(0.0, 1.0, 5, Endpoint::Left, 0.5);
  const Grid1D m = g.mapped(2.0, 1.0);
  CHECK(m.lo() == 1.0);
  CHECK(m.hi() == 3.0);
  const Grid1D r = g.reflected();
  CHECK(r.width(0) == doctest::Approx(g.width(4)));
  CHECK(r.lo() == -1.0);
}

TEST_CASE("2D functions are row-major and tensor products factor") {
  const auto gx = unit(3);
  const auto gy = share(Grid1D::uniform(0.0, 2.0, 2));
  const GridFn u(gx, {1.0, 2.0, 3.0});
  const GridFn v(gy, {10.0, 20.0});
  const GridFn2D t = tensor(u, v);
  CHECK(t.at(2, 1) == 60.0);
  CHECK(t[t.grid().index(1, 0)] == 20.0);
  CHECK(integrate(t) == doctest::Approx(integrate(u) * integrate(v)));
  CHECK(t.slice(Axis::X, 1)[2] == 60.0);
  CHECK(t.slice(Axis::Y, 0)[1] == 20.0);
  const GridFn2D w = tensor(GridFn::constant(gx, 2.0), GridFn::constant(gy, 0.5));
  CHECK(lp_norm(t, w, 2.0) == doctest::Approx(lp_norm(u, GridFn::constant(gx, 2.0), 2.0) *
                                              lp_norm(v, GridFn::constant(gy, 0.5), 2.0)));
}

TEST_CASE("GridFn CSV round-trips exactly") {
  std::mt19937_64 rng(4);
  const auto g = share(Grid1D::geometric_toward(-1.0, 1.0, 17, Endpoint::Right, 0.77));
  const GridFn f = random_fn(rng, g, -1e5, 1e5);
  std::stringstream ss;
  write_csv(ss, f);
  CHECK(ss.str().rfind("cell_left,cell_right,value\n", 0) == 0);
  const GridFn back = read_gridfn_csv(ss);
  CHECK(back.grid() == f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);

  const GridFn2D t = tensor(f, random_fn(rng, share(Grid1D::uniform(0.0, 1.0, 3)), 0.0, 1.0));
  std::stringstream s2;
  write_csv(s2, t);
  const GridFn2D t2 = read_gridfn2d_csv(s2);
  CHECK(t2.grid().gx() == t.grid().gx());
  CHECK(t2.grid().gy() == t.grid().gy());
  for (std::size_t k = 0; k < t.size(); ++k) CHECK(t2[k] == t[k]);
}

TEST_CASE("malformed CSV reports the line number") {
  std::stringstream ss("cell_left,cell_right,value\n0,0.5,1\n0.5,1,abc\n");
  try {
    read_gridfn_csv(ss);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::stringstream gap("cell_left,cell_right,value\n0,0.5,1\n0.6,1,1\n");
  CHECK_THROWS_AS(read_gridfn_csv(gap), ParseError);
  std::stringstream nohead("0,1,1\n");
  CHECK_THROWS_AS(read_gridfn_csv(nohead), ParseError);
}
