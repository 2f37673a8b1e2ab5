#pragma once

#include <vector>

#include "wpage/rational.hpp"

namespace wpage {

struct LpSolution {
  Rational objective;
  std::vector<Rational> x;
};

// Exact primal simplex (Bland's rule) for the box-covering form
//   min c.x  s.t.  A x >= b,  0 <= x <= 1,
// which is the shape of every LP in this project. Requires A.1 >= b so
// x = 1 is a basic feasible start; throws invalid_argument otherwise.
LpSolution solve_box_covering_lp(const std::vector<std::vector<Rational>>& a,
                                 const std::vector<Rational>& b,
                                 const std::vector<Rational>& c);

}  // namespace wpage
