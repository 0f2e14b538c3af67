#include "hypermatch/rational_simplex.h"

#include <stdexcept>

namespace hypermatch {

LpSolution SolveLinearProgram(const LinearProgram& lp) {
  const std::size_t rows = lp.b.size();
  const std::size_t cols = lp.c.size();
  if (lp.a.size() != rows) throw InputError("constraint matrix row count mismatch");
  for (const auto& row : lp.a) {
    if (row.size() != cols) throw InputError("constraint matrix column count mismatch");
  }
  for (const Rational& bi : lp.b) {
    if (bi < 0) throw InputError("right-hand side must be nonnegative");
  }

  // Columns [0, cols) are structural, [cols, cols+rows) are slacks.
  const std::size_t width = cols + rows;
  std::vector<std::vector<Rational>> tab(rows, std::vector<Rational>(width + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) tab[i][j] = lp.a[i][j];
    tab[i][cols + i] = 1;
    tab[i][width] = lp.b[i];
  }
  // Reduced costs c_j - c_B B^-1 A_j; the last entry holds -objective.
  std::vector<Rational> reduced(width + 1);
  for (std::size_t j = 0; j < cols; ++j) reduced[j] = lp.c[j];
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) basis[i] = cols + i;

  LpSolution out;
  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < width; ++j) {
      if (reduced[j] > 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = rows;
    Rational best_ratio;
    for (std::size_t i = 0; i < rows; ++i) {
      if (tab[i][enter] <= 0) continue;
      Rational ratio = tab[i][width] / tab[i][enter];
      if (leave == rows || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == rows) {
      out.bounded = false;
      return out;
    }

    Rational pivot = tab[leave][enter];
    for (std::size_t j = 0; j <= width; ++j) {
      if (tab[leave][j] != 0) tab[leave][j] /= pivot;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || tab[i][enter] == 0) continue;
      Rational factor = tab[i][enter];
      for (std::size_t j = 0; j <= width; ++j) {
        if (tab[leave][j] != 0) tab[i][j] -= factor * tab[leave][j];
      }
    }
    if (reduced[enter] != 0) {
      Rational factor = reduced[enter];
      for (std::size_t j = 0; j <= width; ++j) {
        if (tab[leave][j] != 0) reduced[j] -= factor * tab[leave][j];
      }
    }
    basis[leave] = enter;
    ++out.pivots;
  }

  out.primal.assign(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < cols) out.primal[basis[i]] = tab[i][width];
  }
  out.dual.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) out.dual[i] = -reduced[cols + i];
  out.objective = -reduced[width];
  return out;
}

}  // namespace hypermatch
