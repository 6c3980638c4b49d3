#pragma once

#include <span>
#include <vector>

#include "sharpwt/characteristics.hpp"
#include "sharpwt/grid.hpp"

namespace sharpwt {

enum class MaxAlgo { Brute, Hull };

/// Evaluation points of the one-sided maximal operators: cell left boundaries (Plus)
/// or cell right boundaries (Minus).
std::vector<double> anchors(const Grid1D& g, Side side);

/// One-sided maximal function at the anchors; Brute is O(n^2), Hull O(n).
GridFn maximal_oneside(const GridFn& f, Side side, MaxAlgo algo = MaxAlgo::Hull);

/// Max over cell intervals containing each cell; Brute is the O(n^3) triple loop,
/// Hull the O(n^2) running-max kernel. Both use the same candidate arithmetic.
GridFn maximal_twosided(const GridFn& f, MaxAlgo algo = MaxAlgo::Hull);

/// max over windows from the anchor of (sum |f| width)/length^{1-alpha}, 0 <= alpha < 1.
GridFn frac_maximal_oneside(const GridFn& f, double alpha, Side side);

/// W_alpha (Weyl) or R_alpha (Riemann-Liouville) at cell centers, 0 < alpha < 1.
GridFn potential_oneside(const GridFn& f, double alpha, PotentialKind kind);
/// The potential evaluated at arbitrary points of the domain.
std::vector<double> potential_at(const GridFn& f, double alpha, PotentialKind kind, std::span<const double> points);
/// n x n row-major matrix K with (potential f)_i = sum_j K[i,j] f_j at cell centers.
std::vector<double> potential_matrix(const Grid1D& g, double alpha, PotentialKind kind);

/// Principal-value Hilbert transform p.v. int f(t)/(x-t) dt at cell centers.
GridFn hilbert(const GridFn& f);

}  // namespace sharpwt
