#include "unaware/exact_linear.hpp"

#include "unaware/errors.hpp"

namespace unaware {

LinearSolution solve_exact(const Matrix& a, const std::vector<Rational>& b) {
  const std::size_t m = a.size();
  if (b.size() != m) throw Error("DimensionMismatch", "right-hand side has the wrong length");
  const std::size_t n = m ? a[0].size() : 0;
  for (const auto& row : a)
    if (row.size() != n) throw Error("DimensionMismatch", "ragged matrix");

  // Rows carry [A | b | I] so row operations are tracked.
  Matrix w(m, std::vector<Rational>(n + 1 + m, Rational(0)));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) w[r][c] = a[r][c];
    w[r][n] = b[r];
    w[r][n + 1 + r] = 1;
  }
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < m; ++c) {
    std::size_t p = rank;
    while (p < m && w[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(w[p], w[rank]);
    const Rational inv = 1 / w[rank][c];
    for (auto& v : w[rank]) v *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank || w[r][c] == 0) continue;
      const Rational f = w[r][c];
      for (std::size_t k = 0; k < w[r].size(); ++k) w[r][k] -= f * w[rank][k];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  LinearSolution out;
  for (std::size_t r = rank; r < m; ++r) {
    if (w[r][n] != 0) {
      out.certificate = std::vector<Rational>(w[r].begin() + static_cast<std::ptrdiff_t>(n + 1), w[r].end());
      return out;
    }
  }
  std::vector<Rational> x(n, Rational(0));
  for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = w[r][n];
  out.x = std::move(x);
  return out;
}

}  // namespace unaware
