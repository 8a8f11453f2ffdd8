#pragma once

#include <optional>
#include <vector>

#include "pillow/rational.hpp"

namespace pillow {

// Exact Gaussian elimination. Solves A x = b (A may be rectangular,
// overdetermined systems are checked for consistency). Free variables are
// set to zero, deterministically in column order.
std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> A, std::vector<Rat> b);

// rank of A (destructive on a copy)
int matrix_rank(std::vector<std::vector<Rat>> A);

}  // namespace pillow
