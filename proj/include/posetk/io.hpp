#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "posetk/linalg.hpp"
#include "posetk/topology.hpp"

namespace posetk {

// Either a poset (from `order:` or `basis:` lines) or a covering (`cover:`
// lines). Blank lines and text after '#' are ignored.
using PosetInput = std::variant<Poset, GroundSpace>;

PosetInput parse_input(std::string_view text);

// Poset file, or a covering file reduced by quotient_by_covering.
Poset parse_poset(std::string_view text);
GroundSpace parse_covering(std::string_view text);

// Canonical text: the points line followed by one `order:` line per covering
// pair, sorted by point position.
std::string format_poset(const Poset& p);
std::string format_covering(const GroundSpace& space);

// First token k, then k*k integers in row-major order.
IntMatrix parse_matrix(std::string_view text);
// Rows only, entries right-aligned to a common width.
std::string format_matrix(const IntMatrix& m);
// format_matrix preceded by the k line; parse_matrix reads it back.
std::string format_matrix_file(const IntMatrix& m);

// "1,-7,1", "1 -7 1" or "(1, -7, 1)".
IntVector parse_vector(std::string_view text);
std::string format_vector(const IntVector& v);

std::string read_file(const std::string& path);

}  // namespace posetk
