#pragma once

#include <optional>
#include <vector>

#include "unaware/rational.hpp"

namespace unaware {

using Matrix = std::vector<std::vector<Rational>>;

/// Either a solution of A x = b (free variables set to 0) or a row
/// combination c with c^T A = 0 and c^T b != 0.
struct LinearSolution {
  std::optional<std::vector<Rational>> x;
  std::optional<std::vector<Rational>> certificate;
};

/// Exact Gauss-Jordan elimination. Throws Error("DimensionMismatch").
LinearSolution solve_exact(const Matrix& a, const std::vector<Rational>& b);

}  // namespace unaware
