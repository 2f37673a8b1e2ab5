#include "wpage/simplex.hpp"

#include <stdexcept>

namespace wpage {

LpSolution solve_box_covering_lp(const std::vector<std::vector<Rational>>& a,
                                 const std::vector<Rational>& b,
                                 const std::vector<Rational>& c) {
  const int nv = (int)c.size();
  const int m1 = (int)a.size();
  const Rational zero(0), one(1);

  for (int r = 0; r < m1; r++) {
    if ((int)a[r].size() != nv) throw std::invalid_argument("lp row width mismatch");
    Rational rowsum;
    for (const auto& v : a[r]) rowsum += v;
    if (rowsum < b[r]) throw std::invalid_argument("lp: x = 1 is infeasible");
  }

  // Columns: x_0..x_{nv-1}, u_0..u_{nv-1}, s_0..s_{m1-1}; RHS last.
  // Rows 0..nv-1: x_i + u_i = 1 (basic x_i).
  // Rows nv..nv+m1-1, canonical form with x eliminated:
  //   sum_i a_ri u_i + s_r = sum_i a_ri - b_r (basic s_r).
  const int ncols = 2 * nv + m1;
  const int nrows = nv + m1;
  std::vector<std::vector<Rational>> t((size_t)nrows,
                                       std::vector<Rational>((size_t)ncols + 1));
  std::vector<int> basis((size_t)nrows);

  for (int i = 0; i < nv; i++) {
    t[i][(size_t)i] = one;
    t[i][(size_t)(nv + i)] = one;
    t[i][(size_t)ncols] = one;
    basis[i] = i;
  }
  for (int r = 0; r < m1; r++) {
    auto& row = t[(size_t)(nv + r)];
    Rational rhs;
    for (int i = 0; i < nv; i++) {
      row[(size_t)(nv + i)] = a[r][(size_t)i];
      rhs += a[r][(size_t)i];
    }
    row[(size_t)(2 * nv + r)] = one;
    row[(size_t)ncols] = rhs - b[r];
    basis[(size_t)(nv + r)] = 2 * nv + r;
  }

  // Reduced-cost row; the value cell holds -z so the pivot update applies
  // uniformly. Start at x = 1: z = sum c, rc(u_i) = -c_i.
  std::vector<Rational> zrow((size_t)ncols + 1);
  for (int i = 0; i < nv; i++) {
    zrow[(size_t)(nv + i)] = -c[(size_t)i];
    zrow[(size_t)ncols] -= c[(size_t)i];
  }

  for (;;) {
    int enter = -1;
    for (int j = 0; j < ncols; j++) {
      if (zrow[(size_t)j] < zero) {  // Bland: first improving column
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    int leave = -1;
    Rational best_ratio;
    for (int r = 0; r < nrows; r++) {
      const Rational& coef = t[(size_t)r][(size_t)enter];
      if (coef > zero) {
        Rational ratio = t[(size_t)r][(size_t)ncols] / coef;
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[(size_t)r] < basis[(size_t)leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) throw std::runtime_error("lp unbounded; box constraints missing");

    auto& prow = t[(size_t)leave];
    Rational pivot = prow[(size_t)enter];
    for (auto& v : prow) v /= pivot;
    for (int r = 0; r < nrows; r++) {
      if (r == leave) continue;
      Rational factor = t[(size_t)r][(size_t)enter];
      if (factor.is_zero()) continue;
      for (int j = 0; j <= ncols; j++)
        t[(size_t)r][(size_t)j] -= factor * prow[(size_t)j];
    }
    Rational zf = zrow[(size_t)enter];
    if (!zf.is_zero())
      for (int j = 0; j <= ncols; j++) zrow[(size_t)j] -= zf * prow[(size_t)j];
    basis[(size_t)leave] = enter;
  }

  LpSolution sol;
  sol.objective = -zrow[(size_t)ncols];
  sol.x.assign((size_t)nv, zero);
  for (int r = 0; r < nrows; r++)
    if (basis[(size_t)r] < nv)
      sol.x[(size_t)basis[(size_t)r]] = t[(size_t)r][(size_t)ncols];
  return sol;
}

}  // namespace wpage
