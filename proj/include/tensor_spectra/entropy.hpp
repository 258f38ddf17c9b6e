#pragma once

#include <cmath>
#include <vector>

namespace tenspec {

/// x log2(1/x), continuously extended by 0 at x = 0.
inline double xlog2_inv(double x) { return x <= 0.0 ? 0.0 : -x * std::log2(x); }

/// Shannon entropy in bits of a (sub)probability vector.
inline double entropy(const std::vector<double>& p) {
  double h = 0;
  for (double x : p) h += xlog2_inv(x);
  return h;
}

/// Binary entropy h(x) in bits.
inline double binary_entropy(double x) { return xlog2_inv(x) + xlog2_inv(1.0 - x); }

/// Min-entropy in bits: -log2 max_i p_i (0 for the empty vector).
inline double min_entropy(const std::vector<double>& p) {
  double mx = 0;
  for (double x : p) mx = std::max(mx, x);
  return mx <= 0.0 ? 0.0 : -std::log2(mx);
}

}  // namespace tenspec
