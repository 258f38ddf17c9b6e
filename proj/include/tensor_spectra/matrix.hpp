#pragma once

#include "tensor_spectra/fields.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace tenspec {

/// Dense row-major matrix over any field type with +,-,*,/ and is_zero.
template <class F>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<F> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  F& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const F& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// Rank by fraction-free Bareiss elimination; exact over the integers.
inline std::size_t bareiss_rank(Matrix<Int> m) {
  std::size_t r = 0;
  Int prev = 1;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t piv = r;
    while (piv < m.rows && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    for (std::size_t i = r + 1; i < m.rows; ++i) {
      for (std::size_t j = c + 1; j < m.cols; ++j)
        m.at(i, j) = (m.at(r, c) * m.at(i, j) - m.at(i, c) * m.at(r, j)) / prev;
      m.at(i, c) = 0;
    }
    prev = m.at(r, c);
    ++r;
  }
  return r;
}

/// Rank by plain Gaussian elimination; works for GFp, GFpExt, Rat.
template <class F>
std::size_t rank_of(Matrix<F> m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t piv = r;
    while (piv < m.rows && is_zero(m.at(piv, c))) ++piv;
    if (piv == m.rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    F inv_p = m.at(r, c).inverse();
    for (std::size_t i = r + 1; i < m.rows; ++i) {
      if (is_zero(m.at(i, c))) continue;
      F f = m.at(i, c) * inv_p;
      for (std::size_t j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    ++r;
  }
  return r;
}

inline std::size_t rank_of(const Matrix<Rat>& m) {
  // clear denominators row by row, then run the fraction-free routine
  Matrix<Int> z(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    Int lcm = 1;
    for (std::size_t j = 0; j < m.cols; ++j) {
      Int d = rat_den(m.at(i, j));
      lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    }
    for (std::size_t j = 0; j < m.cols; ++j) {
      const Rat& q = m.at(i, j);
      z.at(i, j) = rat_num(q) * (lcm / rat_den(q));
    }
  }
  return bareiss_rank(std::move(z));
}

/// Basis of the right kernel {x : m x = 0} over the rationals (exact RREF).
inline std::vector<std::vector<Rat>> kernel_basis(Matrix<Rat> m) {
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t piv = r;
    while (piv < m.rows && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    Rat ip = Rat(1) / m.at(r, c);
    for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) *= ip;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c);
      for (std::size_t j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (std::size_t free_c = 0; free_c < m.cols; ++free_c) {
    if (is_pivot[free_c]) continue;
    std::vector<Rat> v(m.cols, Rat(0));
    v[free_c] = 1;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = -m.at(k, free_c);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace tenspec
