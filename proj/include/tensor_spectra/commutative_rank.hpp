#pragma once

#include "tensor_spectra/matrix.hpp"
#include "tensor_spectra/tensor.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace tenspec {

struct CommRankResult {
  std::size_t rank = 0;
  int trials = 0;
  std::string field;  // where the substitutions were drawn
};

/*
 * Commutative rank of the matrix pencil sum_k x_k T[.,.,k]: the maximum rank
 * of any linear combination of the axis-3 slices. Computed with randomized
 * substitutions (Schwartz-Zippel); the generic rank is attained except with
 * probability <= min(m1,m2)/|domain| per trial, and the result is always a
 * valid lower bound since every substitution is exact.
 */
inline CommRankResult commutative_rank(const SparseTensor<Rat>& t, std::uint64_t seed = 0,
                                       int trials = 20) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uint64_t domain = 64ull * t.dims[0] * t.dims[1] * t.dims[2] + 97;
  CommRankResult out;
  out.trials = trials;
  out.field = "rational";
  std::size_t cap = static_cast<std::size_t>(std::min(t.dims[0], t.dims[1]));
  for (int trial = 0; trial < trials && out.rank < cap; ++trial) {
    std::vector<Int> x(t.dims[2]);
    for (auto& v : x) v = Int(rng() % domain);
    Matrix<Rat> m(t.dims[0], t.dims[1]);
    for (auto& [idx, val] : t.entries)
      m.at(idx[0] - 1, idx[1] - 1) += val * Rat(x[idx[2] - 1]);
    out.rank = std::max(out.rank, rank_of(m));
  }
  return out;
}

inline CommRankResult commutative_rank(const SparseTensor<GFp>& t, std::uint64_t seed = 0,
                                       int trials = 20) {
  std::uint64_t p = 0;
  for (auto& [idx, v] : t.entries)
    if (v.p) p = v.p;
  CommRankResult out;
  out.trials = trials;
  if (p == 0) {  // zero tensor
    out.field = "gf";
    return out;
  }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uint64_t want = 64ull * t.dims[0] * t.dims[1] * t.dims[2] + 97;
  std::size_t cap = static_cast<std::size_t>(std::min(t.dims[0], t.dims[1]));
  if (p > want) {
    out.field = "gf(" + std::to_string(p) + ")";
    for (int trial = 0; trial < trials && out.rank < cap; ++trial) {
      std::vector<GFp> x(t.dims[2]);
      for (auto& v : x) v = GFp(static_cast<std::int64_t>(rng() % p), p);
      Matrix<GFp> m(t.dims[0], t.dims[1]);
      for (auto& [idx, val] : t.entries) {
        GFp add = val * x[idx[2] - 1];
        m.at(idx[0] - 1, idx[1] - 1) = m.at(idx[0] - 1, idx[1] - 1) + add;
      }
      out.rank = std::max(out.rank, rank_of(std::move(m)));
    }
    return out;
  }
  // base field too small: move to the smallest extension with > want elements
  unsigned e = 1;
  double size = static_cast<double>(p);
  while (size <= static_cast<double>(want)) {
    size *= static_cast<double>(p);
    ++e;
  }
  auto fld = GFpExtField::make(p, e);
  out.field = "gf(" + std::to_string(p) + "^" + std::to_string(e) + ")";
  for (int trial = 0; trial < trials && out.rank < cap; ++trial) {
    std::vector<GFpExt> x(t.dims[2]);
    for (auto& v : x) {
      detail::Poly c(e);
      for (auto& cc : c) cc = rng() % p;
      v = GFpExt(fld, std::move(c));
    }
    Matrix<GFpExt> m(t.dims[0], t.dims[1]);
    for (auto& [idx, val] : t.entries) {
      GFpExt add = GFpExt::from_base(fld, val.v) * x[idx[2] - 1];
      m.at(idx[0] - 1, idx[1] - 1) = m.at(idx[0] - 1, idx[1] - 1) + add;
    }
    out.rank = std::max(out.rank, rank_of(std::move(m)));
  }
  return out;
}

}  // namespace tenspec
