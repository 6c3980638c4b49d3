#pragma once

// Serial reference implementations used by the tests and the bench. They are written
// directly from the definitions and make no attempt at speed.

#include <span>
#include <vector>

#include "sharpwt/characteristics.hpp"
#include "sharpwt/grid.hpp"

namespace sharpwt::reference {

/// O(n^3) sup over cell intervals, each average summed directly.
double ap(const Weight& w);

/// Uniform grids only: windows of m whole cells on each side of every boundary.
double ap_oneside_uniform(const Weight& w, Side side);
double apq_oneside_uniform(const GridFn& w, const Exponents& e, Side side);

/// Direct window sums from each anchor.
std::vector<double> maximal_oneside(const GridFn& f, Side side);
std::vector<double> frac_maximal_oneside(const GridFn& f, double alpha, Side side);
std::vector<double> maximal_twosided(const GridFn& f);

/// Potential of chi_[a, b] at t in closed form.
double potential_indicator(double a, double b, double t, double alpha, PotentialKind kind);
/// Principal-value Hilbert transform of chi_[a, b] at t outside the open interval's endpoints.
double hilbert_indicator(double a, double b, double t);

/// Max over every rectangle containing each cell, sums accumulated cell by cell.
std::vector<double> strong_maximal(const GridFn2D& f);

/// Glo/GK on a uniform grid with window radii in whole cells, tails summed cell by cell.
double glo_uniform(const GridFn& v, const GridFn& w, const Exponents& e, Side side);

}  // namespace sharpwt::reference
