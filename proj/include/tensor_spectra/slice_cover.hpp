#pragma once

#include "tensor_spectra/params.hpp"
#include "tensor_spectra/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace tenspec {

/*
 * Coordinate slice covers. Every support triple is charged to one active
 * axis; using r_i distinct coordinate values on axis i costs
 * sum_i r_i^{1/xi_i}. The minimum over all covers is an upper bound for the
 * weighted decomposition rank of any tensor with that support, and the
 * search below returns the exact minimum over covers together with a
 * checkable witness.
 */

struct CoverResult {
  double value = 0;                          // sum_i r_i^{1/xi_i}
  bool exact = false;                        // value also held exactly below
  Int exact_value = 0;                       // valid when exact
  std::array<int, 3> r{0, 0, 0};             // distinct coordinates used per axis
  std::array<std::vector<int>, 3> slices;    // those coordinate values, sorted
  Support support;                           // sorted triples the assignment indexes
  std::vector<int> assignment;               // axis in {0,1,2} per support triple
  std::uint64_t nodes = 0;                   // branch-and-bound nodes expanded
};

namespace detail {

struct CoverCostCtx {
  std::array<bool, 3> active{};
  std::array<double, 3> inv_xi{};
  std::array<unsigned, 3> int_exp{};
  bool exact = false;

  explicit CoverCostCtx(const Weighting& xi) {
    exact = true;
    for (int i = 0; i < 3; ++i) {
      active[i] = xi.active(i);
      if (!active[i]) continue;
      inv_xi[i] = 1.0 / xi[i];
      double r = std::round(inv_xi[i]);
      if (std::abs(inv_xi[i] - r) < 1e-9 && r >= 1 && r < 64)
        int_exp[i] = static_cast<unsigned>(r);
      else
        exact = false;
    }
  }

  Int int_cost(const std::array<int, 3>& r) const {
    Int s = 0;
    for (int i = 0; i < 3; ++i)
      if (active[i] && r[i] > 0) s += boost::multiprecision::pow(Int(r[i]), int_exp[i]);
    return s;
  }
  double dbl_cost(const std::array<int, 3>& r) const {
    double s = 0;
    for (int i = 0; i < 3; ++i)
      if (active[i] && r[i] > 0) s += std::pow(static_cast<double>(r[i]), inv_xi[i]);
    return s;
  }
  // -1 / 0 / +1 as cost(a) is below / tied with / above cost(b)
  int compare(const std::array<int, 3>& a, const std::array<int, 3>& b) const {
    if (exact) {
      Int ca = int_cost(a), cb = int_cost(b);
      return ca < cb ? -1 : (ca == cb ? 0 : 1);
    }
    double ca = dbl_cost(a), cb = dbl_cost(b);
    if (ca < cb - 1e-12) return -1;
    if (cb < ca - 1e-12) return 1;
    return 0;
  }
};

inline int lex3(const std::array<int, 3>& a, const std::array<int, 3>& b) {
  for (int i = 0; i < 3; ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

class CoverSearch {
 public:
  CoverSearch(Support supp, std::array<int, 3> dims, const Weighting& xi, std::uint64_t budget)
      : supp_(std::move(supp)), dims_(dims), ctx_(xi), budget_(budget) {
    n_ = supp_.size();
    assign_.assign(n_, -1);
    for (int a = 0; a < 3; ++a) used_[a].assign(dims_[a] + 1, 0);
  }

  CoverResult run() {
    CoverResult out;
    out.support = supp_;
    if (n_ == 0) {
      out.exact = ctx_.exact;
      return out;
    }
    seed(out);
    order_by_degree();
    best_r_ = out.r;
    best_assign_ = out.assignment;
    dfs();
    out.r = best_r_;
    out.assignment = best_assign_;
    finish(out);
    return out;
  }

 private:
  Support supp_;
  std::array<int, 3> dims_;
  CoverCostCtx ctx_;
  std::uint64_t budget_, nodes_ = 0;
  std::size_t n_;
  std::vector<std::size_t> order_;
  std::vector<int> assign_;
  std::array<std::vector<int>, 3> used_;  // per-axis coordinate multiplicity
  std::array<int, 3> r_{0, 0, 0};
  std::array<int, 3> best_r_{};
  std::vector<int> best_assign_;

  // start from the cheapest single-axis cover so pruning bites immediately
  void seed(CoverResult& out) {
    bool have = false;
    for (int a = 0; a < 3; ++a) {
      if (!ctx_.active[a]) continue;
      std::vector<int> seen(dims_[a] + 1, 0);
      std::array<int, 3> r{0, 0, 0};
      for (auto& t : supp_)
        if (!seen[t[a]]++) ++r[a];
      if (!have || better(r, out.r)) {
        out.r = r;
        out.assignment.assign(n_, a);
        have = true;
      }
    }
  }

  bool better(const std::array<int, 3>& a, const std::array<int, 3>& b) const {
    int c = ctx_.compare(a, b);
    return c < 0 || (c == 0 && lex3(a, b) < 0);
  }

  void order_by_degree() {
    std::array<std::vector<int>, 3> cnt;
    for (int a = 0; a < 3; ++a) cnt[a].assign(dims_[a] + 1, 0);
    for (auto& t : supp_)
      for (int a = 0; a < 3; ++a) ++cnt[a][t[a]];
    std::vector<long> deg(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (int a = 0; a < 3; ++a)
        if (ctx_.active[a]) deg[i] += cnt[a][supp_[i][a]] - 1;
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t x, std::size_t y) { return deg[x] > deg[y]; });
  }

  void place(std::size_t i, int a) {
    assign_[i] = a;
    if (!used_[a][supp_[i][a]]++) ++r_[a];
  }
  void unplace(std::size_t i) {
    int a = assign_[i];
    assign_[i] = -1;
    if (!--used_[a][supp_[i][a]]) --r_[a];
  }

  void dfs() {
    if (++nodes_ > budget_) throw budget_error("cover search exceeded node budget");
    int c = ctx_.compare(r_, best_r_);
    if (c > 0 || (c == 0 && lex3(r_, best_r_) >= 0)) return;

    // zero-cost moves: a triple whose coordinate is already open on some
    // allowed axis can take that axis without changing any r_i
    std::vector<std::size_t> trail;
    bool moved = true;
    while (moved) {
      moved = false;
      for (std::size_t idx : order_) {
        if (assign_[idx] != -1) continue;
        for (int a = 0; a < 3; ++a) {
          if (!ctx_.active[a] || !used_[a][supp_[idx][a]]) continue;
          place(idx, a);
          trail.push_back(idx);
          moved = true;
          break;
        }
      }
    }

    std::size_t pick = n_;
    for (std::size_t idx : order_)
      if (assign_[idx] == -1) {
        pick = idx;
        break;
      }

    if (pick == n_) {
      int cc = ctx_.compare(r_, best_r_);
      if (cc < 0 || (cc == 0 && lex3(r_, best_r_) < 0)) {
        best_r_ = r_;
        best_assign_ = assign_;
      }
    } else {
      for (int a = 0; a < 3; ++a) {
        if (!ctx_.active[a]) continue;
        place(pick, a);
        dfs();
        unplace(pick);
      }
    }
    for (auto it = trail.rbegin(); it != trail.rend(); ++it) unplace(*it);
  }

  void finish(CoverResult& out) {
    for (int a = 0; a < 3; ++a) {
      std::vector<char> seen(dims_[a] + 1, 0);
      for (std::size_t i = 0; i < n_; ++i)
        if (out.assignment[i] == a && !seen[supp_[i][a]]) {
          seen[supp_[i][a]] = 1;
          out.slices[a].push_back(supp_[i][a]);
        }
      std::sort(out.slices[a].begin(), out.slices[a].end());
    }
    out.value = ctx_.dbl_cost(out.r);
    out.exact = ctx_.exact;
    if (ctx_.exact) out.exact_value = ctx_.int_cost(out.r);
    out.nodes = nodes_;
  }
};

}  // namespace detail

/// Exact minimum-cost coordinate cover; ties resolved toward the
/// lexicographically least (r1,r2,r3).
inline CoverResult weighted_cover_value(Support supp, std::array<int, 3> dims, const Weighting& xi,
                                        std::uint64_t node_budget = 20'000'000) {
  std::sort(supp.begin(), supp.end());
  supp.erase(std::unique(supp.begin(), supp.end()), supp.end());
  for (auto& t : supp)
    for (int a = 0; a < 3; ++a)
      if (t[a] < 1 || t[a] > dims[a]) throw input_error("support triple out of range");
  detail::CoverSearch search(std::move(supp), dims, xi, node_budget);
  return search.run();
}

template <class F>
CoverResult weighted_cover_value(const SparseTensor<F>& t, const Weighting& xi,
                                 std::uint64_t node_budget = 20'000'000) {
  return weighted_cover_value(t.support(), t.dims, xi, node_budget);
}

/// Recompute a witness's cost from scratch; throws on any malformed witness.
inline double verify_cover(const Support& supp, std::array<int, 3> dims,
                           const std::vector<int>& assignment, const Weighting& xi) {
  Support sorted = supp;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (assignment.size() != sorted.size())
    throw input_error("cover witness does not assign every support triple");
  detail::CoverCostCtx ctx(xi);
  std::array<std::vector<char>, 3> seen;
  for (int a = 0; a < 3; ++a) seen[a].assign(dims[a] + 1, 0);
  std::array<int, 3> r{0, 0, 0};
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    int a = assignment[i];
    if (a < 0 || a > 2) throw input_error("cover witness has an unassigned triple");
    if (!ctx.active[a]) throw input_error("cover witness uses a forbidden axis");
    int coord = sorted[i][a];
    if (coord < 1 || coord > dims[a]) throw input_error("cover witness index out of range");
    if (!seen[a][coord]) {
      seen[a][coord] = 1;
      ++r[a];
    }
  }
  return ctx.dbl_cost(r);
}

/// Cover everything with the single cheapest axis: min over active i of m_i^{1/xi_i}.
inline double general_ub(std::array<int, 3> dims, const Weighting& xi) {
  double best = 0;
  bool have = false;
  for (int i = 0; i < 3; ++i) {
    if (!xi.active(i)) continue;
    double v = std::pow(static_cast<double>(dims[i]), 1.0 / xi[i]);
    if (!have || v < best) {
      best = v;
      have = true;
    }
  }
  return best;
}

/*
 * Diagonal one-parameter subgroup splitting axis i into a leading block of
 * size r_i (weight a_i) and its complement (weight b_i), with
 * r_i a_i + (m_i - r_i) b_i = 0 on every axis. When every r_i < m_i/3 the
 * weights are chosen so that all blocks touching at least one leading part
 * carry strictly positive total weight.
 */
struct OneParamSubgroup {
  std::array<int, 3> dims{};
  std::array<int, 3> split{};         // r_i; 0 means the axis is not acted on
  std::array<Int, 3> lead_weight{};   // a_i (0 on identity axes)
  std::array<Int, 3> tail_weight{};   // b_i
};

inline OneParamSubgroup destabilizing_1psg(std::array<int, 3> dims, std::array<int, 3> sizes) {
  OneParamSubgroup out;
  out.dims = dims;
  out.split = sizes;
  for (int i = 0; i < 3; ++i) {
    if (sizes[i] < 0 || 3 * sizes[i] >= dims[i])
      throw input_error("subgroup split sizes must satisfy 0 <= r_i < m_i/3");
  }
  Int prod = 1;
  for (int i = 0; i < 3; ++i)
    if (sizes[i] > 0) prod *= sizes[i];
  for (int i = 0; i < 3; ++i) {
    if (sizes[i] == 0) continue;  // identity on this axis
    out.lead_weight[i] = Int(dims[i] - sizes[i]) * (prod / sizes[i]);
    out.tail_weight[i] = -prod;
  }
  return out;
}

/// Total weights of the nonempty blocks containing at least one leading part.
inline std::vector<Int> mixed_block_weights(const OneParamSubgroup& g) {
  std::vector<Int> out;
  for (int mask = 1; mask < 8; ++mask) {
    Int w = 0;
    bool empty = false;
    for (int i = 0; i < 3; ++i) {
      if (mask & (1 << i)) {
        if (g.split[i] == 0) empty = true;
        w += g.lead_weight[i];
      } else {
        w += g.tail_weight[i];
      }
    }
    if (!empty) out.push_back(w);
  }
  return out;
}

/// 3^{-1/min_i xi_i} * min_i m_i^{1/xi_i}; needs every axis active.
inline double semistable_lower_bound(std::array<int, 3> dims, const Weighting& xi) {
  double mn = 1e300, mnxi = 1e300;
  for (int i = 0; i < 3; ++i) {
    if (!xi.active(i)) throw input_error("semistable bound needs all axis weights positive");
    mn = std::min(mn, std::pow(static_cast<double>(dims[i]), 1.0 / xi[i]));
    mnxi = std::min(mnxi, xi[i]);
  }
  return std::pow(3.0, -1.0 / mnxi) * mn;
}

}  // namespace tenspec
