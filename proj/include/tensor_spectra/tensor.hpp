#pragma once

#include "tensor_spectra/fields.hpp"
#include "tensor_spectra/matrix.hpp"

#include <array>
#include <map>
#include <vector>

namespace tenspec {

/// 1-based coordinate triple.
using Index3 = std::array<int, 3>;

/// Sorted list of occupied positions.
using Support = std::vector<Index3>;

template <class F>
struct SparseTensor {
  std::array<int, 3> dims{0, 0, 0};
  std::map<Index3, F> entries;

  SparseTensor() = default;
  explicit SparseTensor(std::array<int, 3> d) : dims(d) {}

  void set(int i, int j, int k, F v) {
    Index3 idx{i, j, k};
    check_index(idx);
    if (is_zero(v))
      entries.erase(idx);
    else
      entries[idx] = std::move(v);
  }

  void check_index(const Index3& idx) const {
    for (int a = 0; a < 3; ++a)
      if (idx[a] < 1 || idx[a] > dims[a]) throw input_error("tensor index out of range");
  }

  F at(int i, int j, int k) const {
    auto it = entries.find(Index3{i, j, k});
    return it == entries.end() ? F{} : it->second;
  }

  Support support() const {
    Support s;
    s.reserve(entries.size());
    for (auto& [idx, v] : entries) s.push_back(idx);
    return s;
  }
};

/// Unit diagonal tensor of size n (ones at (i,i,i)).
template <class F = Rat>
SparseTensor<F> diagonal_tensor(int n, F one = F(1)) {
  SparseTensor<F> t({n, n, n});
  for (int i = 1; i <= n; ++i) t.set(i, i, i, one);
  return t;
}

/*
 * Matrix multiplication tensor <n1,n2,n3> with axis sizes
 * (n1 n2, n2 n3, n3 n1). Index pairs are flattened row-major:
 * (i,j) -> (i-1) n2 + j on axis 1, (j,k) -> (j-1) n3 + k on axis 2,
 * (k,i) -> (k-1) n1 + i on axis 3.
 */
template <class F = Rat>
SparseTensor<F> matmul_tensor(int n1, int n2, int n3, F one = F(1)) {
  SparseTensor<F> t({n1 * n2, n2 * n3, n3 * n1});
  for (int i = 1; i <= n1; ++i)
    for (int j = 1; j <= n2; ++j)
      for (int k = 1; k <= n3; ++k)
        t.set((i - 1) * n2 + j, (j - 1) * n3 + k, (k - 1) * n1 + i, one);
  return t;
}

/// 2x2x2 tensor with ones at 112, 121, 211.
template <class F = Rat>
SparseTensor<F> w_tensor(F one = F(1)) {
  SparseTensor<F> t({2, 2, 2});
  t.set(1, 1, 2, one);
  t.set(1, 2, 1, one);
  t.set(2, 1, 1, one);
  return t;
}

/// Flatten along `axis` (0,1,2): rows indexed by that axis, columns by the
/// remaining two in row-major order.
template <class F>
Matrix<F> flatten(const SparseTensor<F>& t, int axis) {
  const auto& d = t.dims;
  int r, c;
  if (axis == 0) {
    r = d[0];
    c = d[1] * d[2];
  } else if (axis == 1) {
    r = d[1];
    c = d[0] * d[2];
  } else {
    r = d[2];
    c = d[0] * d[1];
  }
  Matrix<F> m(r, c);
  for (auto& [idx, v] : t.entries) {
    int i = idx[0], j = idx[1], k = idx[2];
    if (axis == 0)
      m.at(i - 1, (j - 1) * d[2] + (k - 1)) = v;
    else if (axis == 1)
      m.at(j - 1, (i - 1) * d[2] + (k - 1)) = v;
    else
      m.at(k - 1, (i - 1) * d[1] + (j - 1)) = v;
  }
  return m;
}

template <class F>
std::size_t flattening_rank(const SparseTensor<F>& t, int axis) {
  return rank_of(flatten(t, axis));
}

/// Kronecker (tensor) product; index pairs flatten as (a-1)*dimS + b.
template <class F>
SparseTensor<F> kronecker(const SparseTensor<F>& t, const SparseTensor<F>& s) {
  SparseTensor<F> out({t.dims[0] * s.dims[0], t.dims[1] * s.dims[1], t.dims[2] * s.dims[2]});
  for (auto& [ti, tv] : t.entries)
    for (auto& [si, sv] : s.entries) {
      F prod = tv * sv;
      if (is_zero(prod)) continue;
      out.set((ti[0] - 1) * s.dims[0] + si[0], (ti[1] - 1) * s.dims[1] + si[1],
              (ti[2] - 1) * s.dims[2] + si[2], prod);
    }
  return out;
}

/// Block-diagonal direct sum.
template <class F>
SparseTensor<F> direct_sum(const SparseTensor<F>& t, const SparseTensor<F>& s) {
  SparseTensor<F> out({t.dims[0] + s.dims[0], t.dims[1] + s.dims[1], t.dims[2] + s.dims[2]});
  for (auto& [idx, v] : t.entries) out.set(idx[0], idx[1], idx[2], v);
  for (auto& [idx, v] : s.entries)
    out.set(idx[0] + t.dims[0], idx[1] + t.dims[1], idx[2] + t.dims[2], v);
  return out;
}

/// Support-level Kronecker product (structure only, no coefficients).
inline Support support_product(const Support& a, std::array<int, 3> adims, const Support& b,
                               std::array<int, 3> bdims) {
  (void)adims;
  Support out;
  out.reserve(a.size() * b.size());
  for (auto& x : a)
    for (auto& y : b)
      out.push_back(Index3{(x[0] - 1) * bdims[0] + y[0], (x[1] - 1) * bdims[1] + y[1],
                           (x[2] - 1) * bdims[2] + y[2]});
  return out;
}

/// Support of the block-diagonal direct sum.
inline Support direct_sum_support(const Support& a, std::array<int, 3> adims, const Support& b) {
  Support out = a;
  out.reserve(a.size() + b.size());
  for (auto& y : b) out.push_back(Index3{y[0] + adims[0], y[1] + adims[1], y[2] + adims[2]});
  return out;
}

}  // namespace tenspec
