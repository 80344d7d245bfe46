#pragma once

// Built-in example decompositions.

#include <string>
#include <vector>

#include "celldga/cellcomplex.hpp"

namespace celldga {

// A single square with its four boundary edges and corners.
Decomposition square_decomposition(const SquareType& t, const std::string& prefix = "");

// Name used by the catalog for a single square, e.g. "square-8-n4-k1-r".
std::string square_name(const SquareType& t);

// Every valid single-square type with n in 2..6, all parameters, both reflections.
std::vector<SquareType> catalog_square_types();

// Two flat sheets over a rows x cols grid of Type 1 squares with periodic gluing.
Decomposition torus_grid(int rows, int cols, int n = 2);
// Two Type 1 squares glued along their whole boundary.
Decomposition sphere_pair(int n = 2);
// A Type 9 square next to a Type 1 square.
Decomposition cusp_pair(int n = 2, int k = 1);
// A Type 13 square whose lower edge is shared with a Type 9 square.
Decomposition swallowtail_pair(int n);

std::vector<std::string> catalog_names();
// Throws Parse for an unknown name.
Decomposition catalog_entry(const std::string& name);

}  // namespace celldga
