#include "sharpwt/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sharpwt/errors.hpp"

namespace sharpwt {

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const GridFn& f) {
  out << "cell_left,cell_right,value\n";
  const auto& g = f.grid();
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << format_real(g.boundary(i)) << ',' << format_real(g.boundary(i + 1)) << ',' << format_real(f[i]) << '\n';
  }
}

void write_csv(std::ostream& out, const GridFn2D& f) {
  out << "cell_left_x,cell_right_x,cell_left_y,cell_right_y,value\n";
  const auto& gx = f.grid().gx();
  const auto& gy = f.grid().gy();
  for (std::size_t j = 0; j < gy.size(); ++j) {
    for (std::size_t i = 0; i < gx.size(); ++i) {
      out << format_real(gx.boundary(i)) << ',' << format_real(gx.boundary(i + 1)) << ','
          << format_real(gy.boundary(j)) << ',' << format_real(gy.boundary(j + 1)) << ','
          << format_real(f.at(i, j)) << '\n';
    }
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_row(const std::string& line, std::size_t lineno, std::size_t fields) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    double v = 0.0;
    const auto* first = item.data();
    const auto* last = item.data() + item.size();
    const auto res = std::from_chars(first, last, v);
    if (item.empty() || res.ec != std::errc() || res.ptr != last) {
      throw ParseError(lineno, "not a number: '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.size() != fields) {
    throw ParseError(lineno, "expected " + std::to_string(fields) + " fields, got " + std::to_string(out.size()));
  }
  return out;
}

// Reads non-empty lines after the header; returns (line number, fields) pairs.
std::vector<std::pair<std::size_t, std::vector<double>>> read_rows(std::istream& in, const std::string& header,
                                                                   std::size_t fields) {
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false;
  std::vector<std::pair<std::size_t, std::vector<double>>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (!saw_header) {
      if (t != header) throw ParseError(lineno, "expected header '" + header + "'");
      saw_header = true;
      continue;
    }
    rows.emplace_back(lineno, parse_row(t, lineno, fields));
  }
  if (!saw_header) throw ParseError(lineno == 0 ? 1 : lineno, "missing header");
  if (rows.empty()) throw ParseError(lineno, "no data rows");
  return rows;
}

}  // namespace

GridFn read_gridfn_csv(std::istream& in) {
  const auto rows = read_rows(in, "cell_left,cell_right,value", 3);
  std::vector<double> b{rows.front().second[0]};
  std::vector<double> v;
  for (const auto& [lineno, r] : rows) {
    if (r[0] != b.back()) throw ParseError(lineno, "cell does not start where the previous one ended");
    if (!(r[1] > r[0])) throw ParseError(lineno, "cell_right must exceed cell_left");
    b.push_back(r[1]);
    v.push_back(r[2]);
  }
  try {
    return GridFn(share(Grid1D::from_boundaries(std::move(b))), std::move(v));
  } catch (const std::invalid_argument& e) {
    throw ParseError(rows.back().first, e.what());
  }
}

GridFn2D read_gridfn2d_csv(std::istream& in) {
  const auto rows = read_rows(in, "cell_left_x,cell_right_x,cell_left_y,cell_right_y,value", 5);
  std::vector<double> bx{rows.front().second[0]};
  for (const auto& [lineno, r] : rows) {
    if (r[2] != rows.front().second[2]) break;
    if (r[0] != bx.back()) throw ParseError(lineno, "x cells are not contiguous");
    bx.push_back(r[1]);
  }
  const std::size_t nx = bx.size() - 1;
  if (rows.size() % nx != 0) throw ParseError(rows.back().first, "row count is not a multiple of the x cell count");
  const std::size_t ny = rows.size() / nx;
  std::vector<double> by{rows.front().second[2]};
  std::vector<double> v(rows.size());
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const auto& [lineno, r] = rows[j * nx + i];
      if (r[0] != bx[i] || r[1] != bx[i + 1]) throw ParseError(lineno, "x cell does not match the first row");
      if (i == 0) {
        if (r[2] != by.back()) throw ParseError(lineno, "y cells are not contiguous");
        by.push_back(r[3]);
      } else if (r[2] != by[j] || r[3] != by[j + 1]) {
        throw ParseError(lineno, "y cell changes within a row");
      }
      v[j * nx + i] = r[4];
    }
  }
  try {
    auto g = share(Grid2D(share(Grid1D::from_boundaries(std::move(bx))), share(Grid1D::from_boundaries(std::move(by)))));
    return GridFn2D(std::move(g), std::move(v));
  } catch (const std::invalid_argument& e) {
    throw ParseError(rows.back().first, e.what());
  }
}

}  // namespace sharpwt
