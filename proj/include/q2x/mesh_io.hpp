#pragma once

// Element mesh text format, one element per line:
//
//   S x1 y1 z1 x2 y2 z2 rho
//   T x1 y1 z1 x2 y2 z2 x3 y3 z3 rho
//   Q x1 y1 z1 x2 y2 z2 x3 y3 z3 x4 y4 z4 rho
//
// Whitespace-separated decimals; '#' starts a comment that runs to the end of
// the line; blank lines are ignored. Errors carry the 1-based line number.

#include <istream>
#include <string>
#include <vector>

#include "q2x/simplex.hpp"

namespace q2x {

std::vector<SimplexElement<double>> parse_mesh(std::istream& in);

/// Reads a mesh file; a missing file is a ParseError at line 0.
std::vector<SimplexElement<double>> read_mesh_file(const std::string& path);

}  // namespace q2x
