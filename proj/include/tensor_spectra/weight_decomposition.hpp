#pragma once

#include "tensor_spectra/params.hpp"
#include "tensor_spectra/support_polytope.hpp"
#include "tensor_spectra/tensor.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace tenspec {

/*
 * Weight components of Kronecker powers. A type assigns each axis a
 * composition of k counting coordinate occurrences; the component indexed by
 * a type is nonzero exactly when some multiset of k support triples realizes
 * all three compositions, and its axis-i dimension is the multinomial
 * C(k; w_i).
 */

struct TypeTriple {
  int k = 0;
  std::array<std::vector<int>, 3> w;  // composition of k into dims[i] parts
};

inline double log2_int(const Int& v) {
  if (v <= 0) throw input_error("log2 of nonpositive integer");
  return static_cast<double>(
      boost::multiprecision::log2(boost::multiprecision::cpp_bin_float_50(v)));
}

inline Int binomial(long n, long r) {
  if (r < 0 || r > n) return 0;
  Int out = 1;
  for (long i = 0; i < r; ++i) out = out * (n - i) / (i + 1);
  return out;
}

inline Int multinomial(int k, const std::vector<int>& parts) {
  Int out = 1;
  long rem = k;
  for (int p : parts) {
    out *= binomial(rem, p);
    rem -= p;
  }
  return out;
}

inline Int count_types(std::array<int, 3> dims, int k) {
  Int c = 1;
  for (int i = 0; i < 3; ++i) c *= binomial(k + dims[i] - 1, dims[i] - 1);
  return c;
}

/// All type triples in lexicographic order, streamed to the callback.
inline void enumerate_types(std::array<int, 3> dims, int k,
                            const std::function<void(const TypeTriple&)>& fn,
                            Int budget = Int(10'000'000)) {
  if (k < 1) throw input_error("power k must be >= 1");
  if (count_types(dims, k) > budget)
    throw budget_error("type enumeration too large; lower k or raise --budget");
  TypeTriple t;
  t.k = k;
  // compositions of k into m parts, lexicographic per axis, nested over axes
  std::function<void(int)> rec_axis = [&](int axis) {
    if (axis == 3) {
      fn(t);
      return;
    }
    int m = dims[axis];
    std::vector<int>& w = t.w[axis];
    w.assign(m, 0);
    std::function<void(int, int)> rec = [&](int pos, int rem) {
      if (pos == m - 1) {
        w[pos] = rem;
        rec_axis(axis + 1);
        return;
      }
      for (int v = 0; v <= rem; ++v) {
        w[pos] = v;
        rec(pos + 1, rem - v);
      }
    };
    rec(0, k);
  };
  rec_axis(0);
}

/*
 * Nonzero test for one component: search for multiplicities over support
 * triples realizing the three compositions. Distinct basis vectors can never
 * cancel, so this combinatorial feasibility is the whole story.
 */
inline std::optional<std::map<Index3, int>> component_nonzero(const Support& S,
                                                              std::array<int, 3> dims,
                                                              const TypeTriple& t) {
  for (int i = 0; i < 3; ++i) {
    if (static_cast<int>(t.w[i].size()) != dims[i]) throw input_error("type length mismatch");
    int sum = 0;
    for (int v : t.w[i]) {
      if (v < 0) throw input_error("negative type entry");
      sum += v;
    }
    if (sum != t.k) throw input_error("type does not sum to k");
  }
  Support supp = S;
  std::sort(supp.begin(), supp.end());
  supp.erase(std::unique(supp.begin(), supp.end()), supp.end());
  std::size_t n = supp.size();

  // last position where each axis coordinate can still be served
  std::array<std::vector<int>, 3> last;
  for (int i = 0; i < 3; ++i) last[i].assign(dims[i] + 1, -1);
  for (std::size_t j = 0; j < n; ++j)
    for (int i = 0; i < 3; ++i) last[i][supp[j][i]] = static_cast<int>(j);

  std::array<std::vector<int>, 3> res = t.w;
  std::vector<int> mult(n, 0);
  std::map<std::pair<std::size_t, std::array<std::vector<int>, 3>>, bool> failed;

  std::function<bool(std::size_t, int)> dfs = [&](std::size_t j, int rem) -> bool {
    if (rem == 0) return true;
    if (j == n) return false;
    for (int i = 0; i < 3; ++i)
      for (int a = 1; a <= dims[i]; ++a)
        if (res[i][a - 1] > 0 && last[i][a] < static_cast<int>(j)) return false;
    auto key = std::make_pair(j, res);
    auto it = failed.find(key);
    if (it != failed.end()) return false;
    int cap = rem;
    for (int i = 0; i < 3; ++i) cap = std::min(cap, res[i][supp[j][i] - 1]);
    for (int c = cap; c >= 0; --c) {
      for (int i = 0; i < 3; ++i) res[i][supp[j][i] - 1] -= c;
      mult[j] = c;
      if (dfs(j + 1, rem - c)) return true;
      mult[j] = 0;
      for (int i = 0; i < 3; ++i) res[i][supp[j][i] - 1] += c;
    }
    failed.emplace(std::move(key), true);
    return false;
  };

  if (!dfs(0, t.k)) return std::nullopt;
  std::map<Index3, int> cert;
  for (std::size_t j = 0; j < n; ++j)
    if (mult[j] > 0) cert[supp[j]] = mult[j];
  return cert;
}

struct MxiResult {
  double log2_value = 0;
  bool exact = false;   // all active 1/xi_i integral: exact_value is exact
  Int exact_value = 0;
  TypeTriple witness;
  std::map<Index3, int> certificate;  // realizing multiset
};

/*
 * M_{xi,k}: maximum over nonzero components of min over active axes of
 * C(k; w_i)^{1/xi_i}. Enumerates realizing multisets directly: every
 * multiset of k support triples is a certificate for its own type, and every
 * nonzero type has one, so the sweep is complete and needs no feasibility
 * search.
 */
inline MxiResult m_xi_k(const Support& S, std::array<int, 3> dims, const Weighting& xi, int k,
                        Int budget = Int(10'000'000)) {
  if (k < 1) throw input_error("power k must be >= 1");
  Support supp = S;
  std::sort(supp.begin(), supp.end());
  supp.erase(std::unique(supp.begin(), supp.end()), supp.end());
  std::size_t n = supp.size();
  if (n == 0) throw input_error("empty support");
  if (binomial(k + static_cast<long>(n) - 1, static_cast<long>(n) - 1) > budget)
    throw budget_error("multiset enumeration too large; lower k or raise --budget");

  std::vector<int> act = xi.active_axes();
  bool exact = true;
  std::array<unsigned, 3> e{};
  for (int i : act) {
    double inv = 1.0 / xi[i];
    double r = std::round(inv);
    if (std::abs(inv - r) < 1e-9 && r >= 1 && r < 64)
      e[i] = static_cast<unsigned>(r);
    else
      exact = false;
  }

  MxiResult best;
  best.log2_value = -1;
  std::array<std::vector<int>, 3> w;
  for (int i = 0; i < 3; ++i) w[i].assign(dims[i], 0);
  std::vector<int> x(n, 0);

  auto consider = [&]() {
    std::array<Int, 3> dim_i{};
    for (int i : act) dim_i[i] = multinomial(k, w[i]);
    if (exact) {
      Int v;
      bool first = true;
      for (int i : act) {
        Int p = boost::multiprecision::pow(dim_i[i], e[i]);
        if (first || p < v) {
          v = p;
          first = false;
        }
      }
      if (!best.exact || v > best.exact_value) {
        best.exact = true;
        best.exact_value = v;
        best.log2_value = log2_int(v);
        best.witness.k = k;
        best.witness.w = w;
        best.certificate.clear();
        for (std::size_t j = 0; j < n; ++j)
          if (x[j] > 0) best.certificate[supp[j]] = x[j];
      }
    } else {
      double v = 1e300;
      for (int i : act) v = std::min(v, log2_int(dim_i[i]) / xi[i]);
      if (v > best.log2_value + 1e-12) {
        best.log2_value = v;
        best.witness.k = k;
        best.witness.w = w;
        best.certificate.clear();
        for (std::size_t j = 0; j < n; ++j)
          if (x[j] > 0) best.certificate[supp[j]] = x[j];
      }
    }
  };

  std::function<void(std::size_t, int)> rec = [&](std::size_t j, int rem) {
    if (j == n - 1) {
      x[j] = rem;
      for (int i = 0; i < 3; ++i) w[i][supp[j][i] - 1] += rem;
      consider();
      for (int i = 0; i < 3; ++i) w[i][supp[j][i] - 1] -= rem;
      x[j] = 0;
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      x[j] = v;
      for (int i = 0; i < 3; ++i) w[i][supp[j][i] - 1] += v;
      rec(j + 1, rem - v);
      for (int i = 0; i < 3; ++i) w[i][supp[j][i] - 1] -= v;
      x[j] = 0;
    }
  };
  rec(0, k);
  return best;
}

struct ConvergenceRow {
  int k;
  double log2_m;       // log2 M_{xi,k}
  double rate;         // log2(M)/k, the per-copy exponent
  double polytope_log2;
  double gap;          // polytope_log2 - rate (nonnegative up to tol)
};

inline std::vector<ConvergenceRow> convergence_profile(const Support& S, std::array<int, 3> dims,
                                                       const Weighting& xi,
                                                       const std::vector<int>& k_list,
                                                       Int budget = Int(10'000'000),
                                                       double tol = 1e-6) {
  auto poly = awsr_primal(S, dims, xi, tol);
  std::vector<ConvergenceRow> rows;
  for (int k : k_list) {
    auto m = m_xi_k(S, dims, xi, k, budget);
    ConvergenceRow r;
    r.k = k;
    r.log2_m = m.log2_value;
    r.rate = m.log2_value / k;
    r.polytope_log2 = poly.log2_value;
    r.gap = poly.log2_value - r.rate;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace tenspec
