#pragma once

// Slow, independent reference implementations used only by the tests.
// Deliberately written with different algorithms from the library so the two
// sides can cross-check each other.

#include "tensor_spectra/entropy.hpp"
#include "tensor_spectra/fields.hpp"
#include "tensor_spectra/matrix.hpp"
#include "tensor_spectra/params.hpp"
#include "tensor_spectra/rep_dims.hpp"
#include "tensor_spectra/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <vector>

namespace tenspec::oracle {

// Minimum weighted cover cost by trying all 3^|S| axis assignments.
// Returns the cost and the lexicographically smallest optimal (r1,r2,r3).
struct ExhaustiveCover {
  double value = 0;
  std::array<int, 3> r{};
};

inline ExhaustiveCover exhaustive_cover(const Support& S, const Weighting& xi) {
  Support supp = S;
  std::sort(supp.begin(), supp.end());
  supp.erase(std::unique(supp.begin(), supp.end()), supp.end());
  std::size_t n = supp.size();
  ExhaustiveCover best;
  best.value = 1e300;
  std::vector<int> assign(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == n) {
      std::array<std::vector<int>, 3> used;
      for (std::size_t s = 0; s < n; ++s) used[assign[s]].push_back(supp[s][assign[s]]);
      std::array<int, 3> r{};
      double cost = 0;
      for (int i = 0; i < 3; ++i) {
        std::sort(used[i].begin(), used[i].end());
        used[i].erase(std::unique(used[i].begin(), used[i].end()), used[i].end());
        r[i] = static_cast<int>(used[i].size());
        if (r[i] > 0) cost += std::pow(double(r[i]), 1.0 / xi[i]);
      }
      if (cost < best.value - 1e-9 ||
          (std::abs(cost - best.value) <= 1e-9 && r < best.r)) {
        best.value = cost;
        best.r = r;
      }
      return;
    }
    for (int axis = 0; axis < 3; ++axis) {
      if (!xi.active(axis)) continue;
      assign[pos] = axis;
      rec(pos + 1);
    }
  };
  rec(0);
  return best;
}

// Entropy objective over a barycentric grid of distributions on the support.
// grid_res steps per coordinate; only practical for |S| <= 4.
inline double grid_zeta_log2(const Support& S, std::array<int, 3> dims, const ThetaWeights& th,
                             int grid_res) {
  Support supp = S;
  std::sort(supp.begin(), supp.end());
  supp.erase(std::unique(supp.begin(), supp.end()), supp.end());
  std::size_t n = supp.size();
  double best = -1e300;
  std::vector<int> c(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int rem) {
    if (pos == n - 1) {
      c[pos] = rem;
      std::array<std::vector<double>, 3> q;
      for (int i = 0; i < 3; ++i) q[i].assign(dims[i], 0.0);
      for (std::size_t s = 0; s < n; ++s)
        for (int i = 0; i < 3; ++i) q[i][supp[s][i] - 1] += double(c[s]) / grid_res;
      double v = 0;
      for (int i = 0; i < 3; ++i) v += th[i] * entropy(q[i]);
      best = std::max(best, v);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      c[pos] = v;
      rec(pos + 1, rem - v);
    }
  };
  rec(0, grid_res);
  return best;
}

// Max over the same grid of min_i H(q_i)/xi_i (the polytope max-min form).
inline double grid_awsr_log2(const Support& S, std::array<int, 3> dims, const Weighting& xi,
                             int grid_res) {
  Support supp = S;
  std::sort(supp.begin(), supp.end());
  supp.erase(std::unique(supp.begin(), supp.end()), supp.end());
  std::size_t n = supp.size();
  double best = -1e300;
  std::vector<int> c(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int rem) {
    if (pos == n - 1) {
      c[pos] = rem;
      std::array<std::vector<double>, 3> q;
      for (int i = 0; i < 3; ++i) q[i].assign(dims[i], 0.0);
      for (std::size_t s = 0; s < n; ++s)
        for (int i = 0; i < 3; ++i) q[i][supp[s][i] - 1] += double(c[s]) / grid_res;
      double v = 1e300;
      for (int i = 0; i < 3; ++i)
        if (xi.active(i)) v = std::min(v, entropy(q[i]) / xi[i]);
      best = std::max(best, v);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      c[pos] = v;
      rec(pos + 1, rem - v);
    }
  };
  rec(0, grid_res);
  return best;
}

// Same grid, min-entropy objective: min_i (-log2 max q_i)/xi_i.
inline double grid_min_entropy_g_log2(const Support& S, std::array<int, 3> dims,
                                      const Weighting& xi, int grid_res) {
  Support supp = S;
  std::sort(supp.begin(), supp.end());
  supp.erase(std::unique(supp.begin(), supp.end()), supp.end());
  std::size_t n = supp.size();
  double best = -1e300;
  std::vector<int> c(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int rem) {
    if (pos == n - 1) {
      c[pos] = rem;
      std::array<std::vector<double>, 3> q;
      for (int i = 0; i < 3; ++i) q[i].assign(dims[i], 0.0);
      for (std::size_t s = 0; s < n; ++s)
        for (int i = 0; i < 3; ++i) q[i][supp[s][i] - 1] += double(c[s]) / grid_res;
      double v = 1e300;
      for (int i = 0; i < 3; ++i)
        if (xi.active(i)) v = std::min(v, min_entropy(q[i]) / xi[i]);
      best = std::max(best, v);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      c[pos] = v;
      rec(pos + 1, rem - v);
    }
  };
  rec(0, grid_res);
  return best;
}

// Rank of a small rational matrix as the largest r with a nonzero r x r minor,
// determinants by Laplace expansion. Exponential; rows*cols <= ~36.
inline Rat laplace_det(const std::vector<std::vector<Rat>>& m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Rat det = 0;
  int sign = 1;
  for (std::size_t c = 0; c < n; ++c) {
    if (!is_zero(m[0][c])) {
      std::vector<std::vector<Rat>> sub(n - 1, std::vector<Rat>(n - 1));
      for (std::size_t i = 1; i < n; ++i) {
        std::size_t jj = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == c) continue;
          sub[i - 1][jj++] = m[i][j];
        }
      }
      Rat term = m[0][c] * laplace_det(sub);
      det += (sign > 0) ? term : Rat(-term);
    }
    sign = -sign;
  }
  return det;
}

inline int minor_rank(const Matrix<Rat>& m) {
  int rows = static_cast<int>(m.rows), cols = static_cast<int>(m.cols);
  int cap = std::min(rows, cols);
  for (int r = cap; r >= 1; --r) {
    std::vector<int> ri(r), ci(r);
    std::function<bool(int, int)> pick_cols = [&](int pos, int start) -> bool {
      if (pos == r) {
        std::vector<std::vector<Rat>> sub(r, std::vector<Rat>(r));
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) sub[i][j] = m.at(ri[i], ci[j]);
        return !is_zero(laplace_det(sub));
      }
      for (int c = start; c < cols; ++c) {
        ci[pos] = c;
        if (pick_cols(pos + 1, c + 1)) return true;
      }
      return false;
    };
    std::function<bool(int, int)> pick_rows = [&](int pos, int start) -> bool {
      if (pos == r) return pick_cols(0, 0);
      for (int i = start; i < rows; ++i) {
        ri[pos] = i;
        if (pick_rows(pos + 1, i + 1)) return true;
      }
      return false;
    };
    if (pick_rows(0, 0)) return r;
  }
  return 0;
}

// Standard Young tableaux counted by direct backtracking fill.
inline long syt_count(const Partition& lam) {
  int k = lam.weight();
  int d = lam.length();
  std::vector<int> fill(d, 0);  // cells already filled per row
  std::function<long(int)> rec = [&](int next) -> long {
    if (next > k) return 1;
    long total = 0;
    for (int i = 0; i < d; ++i) {
      if (fill[i] >= lam.parts[i]) continue;
      if (i > 0 && fill[i - 1] <= fill[i]) continue;  // column must grow downward
      ++fill[i];
      total += rec(next + 1);
      --fill[i];
    }
    return total;
  };
  return rec(1);
}

// Nonzero-component test by enumerating all multisets of k support triples.
inline bool component_nonzero_brute(const Support& S, int k,
                                    const std::array<std::vector<int>, 3>& w) {
  Support supp = S;
  std::sort(supp.begin(), supp.end());
  supp.erase(std::unique(supp.begin(), supp.end()), supp.end());
  std::size_t n = supp.size();
  std::vector<int> x(n, 0);
  std::function<bool(std::size_t, int)> rec = [&](std::size_t pos, int rem) -> bool {
    if (pos == n - 1) {
      x[pos] = rem;
      std::array<std::vector<int>, 3> got;
      for (int i = 0; i < 3; ++i) got[i].assign(w[i].size(), 0);
      for (std::size_t s = 0; s < n; ++s)
        for (int i = 0; i < 3; ++i) got[i][supp[s][i] - 1] += x[s];
      return got == w;
    }
    for (int v = 0; v <= rem; ++v) {
      x[pos] = v;
      if (rec(pos + 1, rem - v)) return true;
    }
    return false;
  };
  return rec(0, k);
}

// Deterministic random supports and tensors for property tests.
inline Support random_support(std::mt19937_64& rng, std::array<int, 3>& dims, int max_dim = 3,
                              int max_nnz = 9) {
  std::uniform_int_distribution<int> dd(1, max_dim);
  for (int i = 0; i < 3; ++i) dims[i] = dd(rng);
  std::uniform_int_distribution<int> nn(1, max_nnz);
  int want = nn(rng);
  Support s;
  for (int tries = 0; tries < 200 && static_cast<int>(s.size()) < want; ++tries) {
    Index3 ix{int(rng() % dims[0]) + 1, int(rng() % dims[1]) + 1, int(rng() % dims[2]) + 1};
    if (std::find(s.begin(), s.end(), ix) == s.end()) s.push_back(ix);
  }
  std::sort(s.begin(), s.end());
  return s;
}

inline SparseTensor<Rat> random_rational_tensor(std::mt19937_64& rng, int max_dim = 3) {
  std::array<int, 3> dims{};
  Support s = random_support(rng, dims, max_dim);
  SparseTensor<Rat> t(dims);
  std::uniform_int_distribution<int> vv(1, 9);
  for (auto& ix : s) t.set(ix[0], ix[1], ix[2], Rat(vv(rng)));
  return t;
}

}  // namespace tenspec::oracle
