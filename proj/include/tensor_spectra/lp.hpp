#pragma once

#include "tensor_spectra/fields.hpp"
#include "tensor_spectra/matrix.hpp"

#include <cstddef>
#include <vector>

namespace tenspec {

/// max c^T x subject to A x (rel) b, x >= 0, where rel is -1 (<=), 0 (=), +1 (>=).
struct LinProg {
  std::size_t nvars = 0;
  Matrix<Rat> A;
  std::vector<Rat> b;
  std::vector<int> rel;
  std::vector<Rat> c;

  static LinProg equalities(Matrix<Rat> A_, std::vector<Rat> b_, std::vector<Rat> c_) {
    LinProg lp;
    lp.nvars = A_.cols;
    lp.rel.assign(A_.rows, 0);
    lp.A = std::move(A_);
    lp.b = std::move(b_);
    lp.c = std::move(c_);
    return lp;
  }
};

struct LPSolution {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::optimal;
  Rat objective = 0;
  std::vector<Rat> x;       // length nvars when optimal
  std::vector<Rat> farkas;  // per original row when infeasible
};

/*
 * Infeasibility certificate check, all in exact arithmetic:
 *   sum_i y_i A[i][j] <= 0 for every column j,
 *   y_i <= 0 on <= rows, y_i >= 0 on >= rows (free on equalities),
 *   sum_i y_i b_i > 0.
 * Any y passing these proves {x >= 0 : Ax rel b} is empty.
 */
inline bool verify_farkas(const LinProg& lp, const std::vector<Rat>& y) {
  if (y.size() != lp.A.rows) return false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (lp.rel[i] < 0 && y[i] > 0) return false;
    if (lp.rel[i] > 0 && y[i] < 0) return false;
  }
  for (std::size_t j = 0; j < lp.nvars; ++j) {
    Rat s = 0;
    for (std::size_t i = 0; i < lp.A.rows; ++i) s += y[i] * lp.A.at(i, j);
    if (s > 0) return false;
  }
  Rat t = 0;
  for (std::size_t i = 0; i < y.size(); ++i) t += y[i] * lp.b[i];
  return t > 0;
}

namespace detail {

// Dense exact-rational two-phase simplex with Bland's rule. Sized for the
// small systems produced here (tens of rows/columns), not for bulk use.
class SimplexTableau {
 public:
  std::size_t m, n_struct, n_total;
  std::vector<std::vector<Rat>> T;  // m rows of n_total + 1 (rhs last)
  std::vector<Rat> obj;             // reduced costs + value slot (last = -z)
  std::vector<std::size_t> basis;

  SimplexTableau(std::size_t rows, std::size_t structural)
      : m(rows), n_struct(structural), n_total(structural + rows) {
    T.assign(m, std::vector<Rat>(n_total + 1, Rat(0)));
    obj.assign(n_total + 1, Rat(0));
    basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      basis[i] = n_struct + i;
      T[i][n_struct + i] = 1;
    }
  }

  void pivot(std::size_t r, std::size_t col) {
    Rat ip = Rat(1) / T[r][col];
    for (auto& v : T[r]) v *= ip;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || T[i][col] == 0) continue;
      Rat f = T[i][col];
      for (std::size_t j = 0; j <= n_total; ++j) T[i][j] -= f * T[r][j];
    }
    if (obj[col] != 0) {
      Rat f = obj[col];
      for (std::size_t j = 0; j <= n_total; ++j) obj[j] -= f * T[r][j];
    }
    basis[r] = col;
  }

  // Bland: entering = lowest column with positive reduced cost, leaving =
  // lowest basis index among minimum-ratio rows. allow(j) gates candidates.
  template <class Allow>
  bool iterate(Allow allow, bool& unbounded) {
    std::size_t enter = n_total;
    for (std::size_t j = 0; j < n_total; ++j)
      if (allow(j) && obj[j] > 0) {
        enter = j;
        break;
      }
    if (enter == n_total) return false;  // optimal
    std::size_t leave = m;
    Rat best_ratio = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      Rat ratio = T[i][n_total] / T[i][enter];
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) {
      unbounded = true;
      return false;
    }
    pivot(leave, enter);
    return true;
  }
};

}  // namespace detail

inline LPSolution solve_lp(const LinProg& lp) {
  std::size_t m = lp.A.rows;
  LPSolution out;
  if (m == 0) {
    for (std::size_t j = 0; j < lp.nvars; ++j)
      if (lp.c[j] > 0) {
        out.status = LPSolution::Status::unbounded;
        return out;
      }
    out.x.assign(lp.nvars, Rat(0));
    return out;
  }

  std::size_t nslack = 0;
  for (int r : lp.rel)
    if (r != 0) ++nslack;
  std::size_t nsc = lp.nvars + nslack;

  // structural part: [A | slack columns], rows sign-normalized so rhs >= 0
  std::vector<std::vector<Rat>> rows(m, std::vector<Rat>(nsc, Rat(0)));
  std::vector<Rat> rhs(lp.b);
  std::vector<bool> flip(m, false);
  {
    std::size_t s = lp.nvars;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < lp.nvars; ++j) rows[i][j] = lp.A.at(i, j);
      if (lp.rel[i] != 0) rows[i][s++] = (lp.rel[i] < 0) ? Rat(1) : Rat(-1);
      if (rhs[i] < 0) {
        flip[i] = true;
        rhs[i] = -rhs[i];
        for (auto& v : rows[i]) v = -v;
      }
    }
  }

  detail::SimplexTableau tab(m, nsc);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < nsc; ++j) tab.T[i][j] = rows[i][j];
    tab.T[i][tab.n_total] = rhs[i];
  }
  // phase 1: maximize minus the artificial sum
  for (std::size_t j = 0; j < nsc; ++j) {
    Rat s = 0;
    for (std::size_t i = 0; i < m; ++i) s += tab.T[i][j];
    tab.obj[j] = s;
  }
  {
    Rat s = 0;
    for (std::size_t i = 0; i < m; ++i) s += tab.T[i][tab.n_total];
    tab.obj[tab.n_total] = s;  // = -z with z = -sum b
  }
  bool unbounded = false;
  while (tab.iterate([](std::size_t) { return true; }, unbounded)) {
  }

  Rat phase1 = -tab.obj[tab.n_total];
  if (phase1 < 0) {
    out.status = LPSolution::Status::infeasible;
    out.farkas.assign(m, Rat(0));
    for (std::size_t i = 0; i < m; ++i) {
      // multiplier from the artificial column's reduced cost, then negated
      Rat yi = Rat(-1) - (tab.obj[nsc + i] - 0);
      // obj currently holds phase-1 reduced costs where artificial cost is -1
      Rat hat = -yi;
      out.farkas[i] = flip[i] ? -hat : hat;
    }
    return out;
  }

  // pivot artificials out of the basis; drop redundant rows
  for (std::size_t i = 0; i < tab.m;) {
    if (tab.basis[i] < nsc) {
      ++i;
      continue;
    }
    std::size_t j = 0;
    while (j < nsc && tab.T[i][j] == 0) ++j;
    if (j < nsc) {
      tab.pivot(i, j);
      ++i;
    } else {
      tab.T.erase(tab.T.begin() + i);
      tab.basis.erase(tab.basis.begin() + i);
      --tab.m;
    }
  }

  // phase 2 objective over structural + slack columns only
  std::fill(tab.obj.begin(), tab.obj.end(), Rat(0));
  for (std::size_t j = 0; j < lp.nvars; ++j) tab.obj[j] = lp.c[j];
  for (std::size_t i = 0; i < tab.m; ++i) {
    std::size_t bj = tab.basis[i];
    Rat cb = bj < lp.nvars ? lp.c[bj] : Rat(0);
    if (cb == 0) continue;
    for (std::size_t j = 0; j <= tab.n_total; ++j) tab.obj[j] -= cb * tab.T[i][j];
  }
  auto allow = [&](std::size_t j) { return j < nsc; };
  unbounded = false;
  while (tab.iterate(allow, unbounded)) {
  }
  if (unbounded) {
    out.status = LPSolution::Status::unbounded;
    return out;
  }
  out.x.assign(lp.nvars, Rat(0));
  for (std::size_t i = 0; i < tab.m; ++i)
    if (tab.basis[i] < lp.nvars) out.x[tab.basis[i]] = tab.T[i][tab.n_total];
  out.objective = -tab.obj[tab.n_total];
  return out;
}

}  // namespace tenspec
