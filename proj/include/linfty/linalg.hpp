#pragma once

#include <vector>

#include "linfty/scalar.hpp"

namespace linfty {

using Matrix = std::vector<std::vector<Scalar>>;

/// Rank over Q by fraction-exact Gaussian elimination.
int rank(Matrix m);

/// Basis of {x : m x = 0}; m has `cols` columns.
std::vector<std::vector<Scalar>> nullspace(Matrix m, int cols);

}  // namespace linfty
