#pragma once

#include <vector>

#include "hypermatch/numeric.h"

namespace hypermatch {

// max c·x  s.t.  A x <= b,  x >= 0, with b >= 0 so the origin is feasible.
// Dense tableau over exact rationals with Bland's rule, so it terminates.
struct LinearProgram {
  std::vector<std::vector<Rational>> a;  // rows x columns
  std::vector<Rational> b;
  std::vector<Rational> c;
};

struct LpSolution {
  bool bounded = true;
  Rational objective;
  std::vector<Rational> primal;  // one per column
  std::vector<Rational> dual;    // one per row, y >= 0 with yA >= c at optimum
  int pivots = 0;
};

LpSolution SolveLinearProgram(const LinearProgram& lp);

}  // namespace hypermatch
