#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sharpwt/opnd.hpp"
#include "sharpwt/reference.hpp"

using namespace sharpwt;

namespace {

GridFn random_fn(std::mt19937_64& rng, const GridPtr& g, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(g->size());
  for (auto& x : v) x = d(rng);
  return GridFn(g, std::move(v));
}

GridFn2D random_fn2(std::mt19937_64& rng, const Grid2DPtr& g, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(g->size());
  for (auto& x : v) x = d(rng);
  return GridFn2D(g, std::move(v));
}

Grid2DPtr square(std::size_t n) {
  const auto g = share(Grid1D::uniform(0.0, 1.0, n));
  return share(Grid2D(g, g));
}

double max_rel(const GridFn2D& a, const GridFn2D& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    worst = std::max(worst, std::abs(a[k] - b[k]) / std::max(std::abs(b[k]), 1e-300));
  }
  return worst;
}

double max_abs(const GridFn2D& a, const GridFn2D& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

}  // namespace

TEST_CASE("Op1D dispatches to the 1D operations") {
  std::mt19937_64 rng(51);
  const auto g = share(Grid1D::uniform(0.0, 1.0, 16));
  const GridFn f = random_fn(rng, g, -1.0, 1.0);
  const GridFn id = Op1D::identity()(f);
  const GridFn m = Op1D::maximal(Side::Minus, MaxAlgo::Brute)(f);
  const GridFn ref = maximal_oneside(f, Side::Minus);
  const GridFn h = Op1D::hilbert_op()(f);
  const GridFn hr = hilbert(f);
  for (std::size_t i = 0; i < 16; ++i) {
    CHECK(id[i] == f[i]);
    CHECK(m[i] == ref[i]);
    CHECK(h[i] == hr[i]);
  }
}

TEST_CASE("apply_axis examples") {
  std::mt19937_64 rng(52);
  const auto gx = share(Grid1D::uniform(0.0, 1.0, 8));
  const auto gy = share(Grid1D::geometric_toward(0.0, 2.0, 6, Endpoint::Left, 0.7));
  const GridFn u = random_fn(rng, gx, 0.0, 1.0);
  const GridFn v = random_fn(rng, gy, 0.0, 1.0);
  const GridFn2D f = tensor(u, v);
  const GridFn2D same = apply_axis(f, {Op1D::identity(), Axis::Y});
  for (std::size_t k = 0; k < f.size(); ++k) CHECK(same[k] == f[k]);

  const Op1D m = Op1D::maximal(Side::Plus);
  CHECK(max_rel(apply_axis(f, {m, Axis::X}), tensor(m(u), v)) < 1e-14);
  CHECK(max_rel(apply_axis(f, {m, Axis::Y}), tensor(u, m(v))) < 1e-14);
  const GridFn2D xy = apply_axis(apply_axis(f, {m, Axis::X}), {m, Axis::Y});
  const GridFn2D yx = apply_axis(apply_axis(f, {m, Axis::Y}), {m, Axis::X});
  CHECK(max_rel(xy, yx) < 1e-14);

  // For general f the two orders differ.
  const auto sq = square(8);
  bool differ = false;
  for (int t = 0; t < 10 && !differ; ++t) {
    const GridFn2D r = random_fn2(rng, sq, 0.0, 1.0);
    const Op1D mt = Op1D::maximal_twosided();
    differ = max_rel(apply_axis(apply_axis(r, {mt, Axis::X}), {mt, Axis::Y}),
                     apply_axis(apply_axis(r, {mt, Axis::Y}), {mt, Axis::X})) > 1e-12;
  }
  CHECK(differ);
}

TEST_CASE("strong maximal of a constant") {
  const GridFn2D c = GridFn2D::constant(square(6), 3.0);
  for (StrongAlgo a : {StrongAlgo::Rectangles, StrongAlgo::Composition}) {
    const GridFn2D m = strong_maximal(c, a);
    for (std::size_t k = 0; k < m.size(); ++k) CHECK(m[k] == doctest::Approx(3.0).epsilon(1e-14));
  }
}

TEST_CASE("strong maximal over rectangles matches the direct enumeration") {
  const auto sq = square(16);
  std::vector<double> v(256, 0.0);
  for (std::size_t j = 0; j < 8; ++j) {
    for (std::size_t i = 0; i < 8; ++i) v[sq->index(i, j)] = 1.0;
  }
  const GridFn2D chi(sq, v);
  const GridFn2D m = strong_maximal(chi, StrongAlgo::Rectangles);
  const auto ref = reference::strong_maximal(chi);
  for (std::size_t k = 0; k < 256; ++k) CHECK(m[k] == doctest::Approx(ref[k]).epsilon(1e-13));
  // At the cell nearest (3/4, 3/4) the best rectangle reaches from the corner block.
  CHECK(m.at(12, 12) == doctest::Approx(ref[sq->index(12, 12)]).epsilon(1e-13));
  CHECK(m.at(12, 12) > 0.0);
  CHECK(m.at(12, 12) < 1.0);

  std::mt19937_64 rng(53);
  const auto gx = share(Grid1D::geometric_toward(0.0, 1.0, 9, Endpoint::Right, 0.8));
  const auto gy = share(Grid1D::uniform(-1.0, 1.0, 7));
  const GridFn2D f = random_fn2(rng, share(Grid2D(gx, gy)), -1.0, 1.0);
  const GridFn2D mf = strong_maximal(f, StrongAlgo::Rectangles);
  const auto rf = reference::strong_maximal(f);
  for (std::size_t k = 0; k < f.size(); ++k) CHECK(mf[k] == doctest::Approx(rf[k]).epsilon(1e-12));
}

TEST_CASE("strong maximal is dominated by the iterated maximal operator") {
  std::mt19937_64 rng(54);
  for (int t = 0; t < 10; ++t) {
    const GridFn2D f = random_fn2(rng, square(12), -1.0, 1.0);
    const GridFn2D r = strong_maximal(f, StrongAlgo::Rectangles);
    const GridFn2D c = strong_maximal(f, StrongAlgo::Composition);
    for (std::size_t k = 0; k < f.size(); ++k) CHECK(r[k] <= c[k] * (1.0 + 1e-14));
  }
}

TEST_CASE("strong maximal is monotone and homogeneous; both algorithms agree on separable input") {
  std::mt19937_64 rng(55);
  const auto sq = square(10);
  const GridFn2D f = random_fn2(rng, sq, 0.0, 1.0);
  const GridFn2D bump = random_fn2(rng, sq, 0.0, 1.0);
  std::vector<double> hv(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) hv[k] = f[k] + bump[k];
  const GridFn2D mf = strong_maximal(f, StrongAlgo::Rectangles);
  const GridFn2D mh = strong_maximal(GridFn2D(sq, hv), StrongAlgo::Rectangles);
  const GridFn2D m8 = strong_maximal(f.map([](double x) { return 8.0 * x; }), StrongAlgo::Rectangles);
  for (std::size_t k = 0; k < f.size(); ++k) {
    CHECK(mf[k] <= mh[k]);
    CHECK(m8[k] == 8.0 * mf[k]);
  }
  const auto g = sq->gx_ptr();
  const GridFn2D s = tensor(random_fn(rng, g, 0.0, 1.0), random_fn(rng, g, 0.0, 1.0));
  CHECK(max_rel(strong_maximal(s, StrongAlgo::Rectangles), strong_maximal(s, StrongAlgo::Composition)) < 1e-12);
}

TEST_CASE("one-sided strong maximal of a constant") {
  const GridFn2D c = GridFn2D::constant(square(8), 2.0);
  for (Side s : {Side::Plus, Side::Minus}) {
    const GridFn2D m = strong_maximal_oneside(c, s, 0.0);
    for (std::size_t k = 0; k < m.size(); ++k) CHECK(m[k] == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("anchored rectangle operator factors on separable input") {
  std::mt19937_64 rng(56);
  const auto gx = share(Grid1D::geometric_toward(0.0, 1.0, 32, Endpoint::Right, 0.9));
  const auto gy = share(Grid1D::geometric_toward(0.0, 1.0, 32, Endpoint::Right, 0.9));
  const double eps = 0.1;
  const GridFn u = power_function(gx, eps - 1.0, 1.0, Endpoint::Left, 1.0);
  const GridFn v = power_function(gy, eps - 1.0, 1.0, Endpoint::Left, 1.0);
  const GridFn2D f = tensor(u, v);
  for (double alpha : {0.0, 0.25}) {
    for (Side s : {Side::Plus, Side::Minus}) {
      const GridFn2D brute = strong_maximal_oneside(f, s, alpha, OnesidedAlgo::Brute);
      const GridFn2D fact = strong_maximal_oneside_factored(u, v, s, alpha);
      CHECK(max_rel(brute, fact) <= 1e-12);
      CHECK(max_rel(strong_maximal_oneside(f, s, alpha, OnesidedAlgo::Composition), fact) <= 1e-12);
    }
  }
  const GridFn a = random_fn(rng, gx, 0.0, 1.0);
  const GridFn b = random_fn(rng, gy, 0.0, 1.0);
  CHECK(max_rel(strong_maximal_oneside(tensor(a, b), Side::Plus, 0.25), strong_maximal_oneside_factored(a, b, Side::Plus, 0.25)) <=
        1e-12);
}

TEST_CASE("anchored rectangle operator is bounded by the iterated operator") {
  std::mt19937_64 rng(57);
  const GridFn2D f = random_fn2(rng, square(10), 0.0, 1.0);
  for (Side s : {Side::Plus, Side::Minus}) {
    const GridFn2D b = strong_maximal_oneside(f, s, 0.0, OnesidedAlgo::Brute);
    const GridFn2D c = strong_maximal_oneside(f, s, 0.0, OnesidedAlgo::Composition);
    for (std::size_t k = 0; k < f.size(); ++k) CHECK(b[k] <= c[k] * (1.0 + 1e-14));
  }
}

TEST_CASE("product potentials") {
  std::mt19937_64 rng(58);
  const auto sq = square(32);
  const GridFn2D z = product_potential(GridFn2D::constant(sq, 0.0), 0.3, PotentialKind::Weyl);
  for (std::size_t k = 0; k < z.size(); ++k) CHECK(z[k] == 0.0);
  const auto g = sq->gx_ptr();
  const GridFn u = random_fn(rng, g, 0.0, 1.0);
  const GridFn v = random_fn(rng, g, -1.0, 1.0);
  for (PotentialKind k : {PotentialKind::Weyl, PotentialKind::RiemannLiouville}) {
    const GridFn2D p = product_potential(tensor(u, v), 0.3, k);
    const GridFn2D t = tensor(potential_oneside(u, 0.3, k), potential_oneside(v, 0.3, k));
    CHECK(max_abs(p, t) <= 1e-12);
    const GridFn2D f = random_fn2(rng, sq, -1.0, 1.0);
    const Op1D op = Op1D::potential_op(k, 0.3);
    const GridFn2D yx = apply_axis(apply_axis(f, {op, Axis::Y}), {op, Axis::X});
    CHECK(max_abs(product_potential(f, 0.3, k), yx) <= 1e-12);
  }
}

TEST_CASE("product Hilbert transform") {
  std::mt19937_64 rng(59);
  const auto g = share(Grid1D::uniform(-1.0, 1.0, 31));
  const auto sq = share(Grid2D(g, g));
  const GridFn u = random_fn(rng, g, -1.0, 1.0);
  const GridFn v = random_fn(rng, g, -1.0, 1.0);
  CHECK(max_abs(product_hilbert(tensor(u, v)), tensor(hilbert(u), hilbert(v))) <= 1e-12);
  const GridFn2D f = random_fn2(rng, sq, -1.0, 1.0);
  const Op1D h = Op1D::hilbert_op();
  CHECK(max_abs(product_hilbert(f), apply_axis(apply_axis(f, {h, Axis::Y}), {h, Axis::X})) <= 1e-12);
  // Even in x: the transform along x vanishes at the center column.
  std::vector<double> ov(sq->size());
  for (std::size_t j = 0; j < 31; ++j) {
    for (std::size_t i = 0; i < 31; ++i) ov[sq->index(i, j)] = f.at(i, j) + f.at(30 - i, j);
  }
  CHECK(std::abs(product_hilbert(GridFn2D(sq, ov)).at(15, 15)) <= 1e-13);
}

TEST_CASE("iterated maximal operator norms factor for separable input and product weights") {
  std::mt19937_64 rng(60);
  const auto g = share(Grid1D::geometric_toward(0.0, 1.0, 24, Endpoint::Right, 0.9));
  const GridFn u = random_fn(rng, g, 0.0, 1.0);
  const GridFn v = random_fn(rng, g, 0.0, 1.0);
  const GridFn w1 = random_fn(rng, g, 0.5, 2.0);
  const GridFn w2 = random_fn(rng, g, 0.5, 2.0);
  const Op1D m = Op1D::maximal_twosided();
  const GridFn2D mf = apply_axis(apply_axis(tensor(u, v), {m, Axis::Y}), {m, Axis::X});
  const double lhs = lp_norm(mf, tensor(w1, w2), 2.0);
  CHECK(lhs == doctest::Approx(lp_norm(m(u), w1, 2.0) * lp_norm(m(v), w2, 2.0)).epsilon(1e-12));
}
