// Times the parallel kernels against the serial references and reports the largest difference.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sharpwt/characteristics.hpp"
#include "sharpwt/op1d.hpp"
#include "sharpwt/opnd.hpp"
#include "sharpwt/parallel.hpp"
#include "sharpwt/reference.hpp"

using namespace sharpwt;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_rel(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]) / std::max(1e-300, std::abs(b[i])));
  }
  return d;
}

void row(const std::string& name, std::size_t n, double fast, double slow, double diff) {
  std::printf("%-28s %8zu %12.6f %12.6f %10.2f %12.3g\n", name.c_str(), n, fast, slow, slow / fast, diff);
}

GridFn random_positive(std::mt19937_64& rng, GridPtr g) {
  std::lognormal_distribution<double> d(0.0, 1.0);
  std::vector<double> v(g->size());
  for (auto& x : v) x = d(rng);
  return GridFn(g, std::move(v));
}

}  // namespace

int main() {
  const int threads = configure_threads();
  std::printf("threads=%d\n", threads);
  std::printf("%-28s %8s %12s %12s %10s %12s\n", "kernel", "n", "kernel_s", "reference_s", "speedup", "max_rel_diff");
  std::mt19937_64 rng(20240601);

  {
    const std::size_t n = 384;
    const auto g = share(Grid1D::uniform(0.0, 1.0, n));
    const Weight w(random_positive(rng, g), 2.5);
    double a = 0.0, b = 0.0;
    const double tf = seconds([&] { a = ap(w).value; });
    const double ts = seconds([&] { b = reference::ap(w); });
    row("ap", n, tf, ts, std::abs(a - b) / b);
  }
  {
    const std::size_t n = 384;
    const auto g = share(Grid1D::uniform(0.0, 1.0, n));
    const Weight w(random_positive(rng, g), 2.0);
    double a = 0.0, b = 0.0;
    const double tf = seconds([&] { a = ap_oneside(w, Side::Plus).value; });
    const double ts = seconds([&] { b = reference::ap_oneside_uniform(w, Side::Plus); });
    row("ap_plus", n, tf, ts, std::abs(a - b) / b);
  }
  {
    const std::size_t n = 4096;
    const auto g = share(Grid1D::geometric_toward(0.0, 1.0, n, Endpoint::Right, 0.999));
    const GridFn f = random_positive(rng, g);
    GridFn a = f;
    std::vector<double> b;
    const double tf = seconds([&] { a = maximal_oneside(f, Side::Plus, MaxAlgo::Hull); });
    const double ts = seconds([&] { b = reference::maximal_oneside(f, Side::Plus); });
    row("maximal_oneside(hull)", n, tf, ts, max_rel(a.values(), b));
  }
  {
    const std::size_t n = 256;
    const auto g = share(Grid1D::uniform(0.0, 1.0, n));
    const GridFn f = random_positive(rng, g);
    GridFn a = f;
    std::vector<double> b;
    const double tf = seconds([&] { a = maximal_twosided(f, MaxAlgo::Hull); });
    const double ts = seconds([&] { b = reference::maximal_twosided(f); });
    row("maximal_twosided", n, tf, ts, max_rel(a.values(), b));
  }
  {
    const std::size_t n = 20;
    const auto g = share(Grid1D::uniform(0.0, 1.0, n));
    const GridFn2D f = tensor(random_positive(rng, g), random_positive(rng, g));
    GridFn2D a = f;
    std::vector<double> b;
    const double tf = seconds([&] { a = strong_maximal(f, StrongAlgo::Rectangles); });
    const double ts = seconds([&] { b = reference::strong_maximal(f); });
    row("strong_maximal(rectangles)", n, tf, ts, max_rel(a.values(), b));
  }
  return 0;
}
