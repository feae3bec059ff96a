#pragma once

#include <optional>
#include <vector>

#include "fdo/scalar.hpp"

namespace fdo {

using QVector = std::vector<Scalar>;
using QMatrix = std::vector<QVector>;

// Exact basis of the right null space {v : m v = 0}; empty iff full column
// rank. Row echelon is computed by Bareiss fraction-free elimination on a
// denominator-cleared integer copy.
std::vector<QVector> kernel_basis(const QMatrix& m, int cols);

int matrix_rank(const QMatrix& m, int cols);

// One exact solution of A x = b, or nullopt when inconsistent.
std::optional<QVector> solve_linear(const QMatrix& a, const QVector& b);

} // namespace fdo
