#pragma once

#include <iosfwd>
#include <string>

#include "sharpwt/grid.hpp"

namespace sharpwt {

/// Shortest round-trip decimal (17 significant digits).
std::string format_real(double x);

void write_csv(std::ostream& out, const GridFn& f);
void write_csv(std::ostream& out, const GridFn2D& f);

/// Reads `cell_left,cell_right,value`; cells must be contiguous. Throws ParseError.
GridFn read_gridfn_csv(std::istream& in);
/// Reads `cell_left_x,cell_right_x,cell_left_y,cell_right_y,value` in row-major order.
GridFn2D read_gridfn2d_csv(std::istream& in);

}  // namespace sharpwt
