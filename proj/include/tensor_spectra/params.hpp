#pragma once

#include "tensor_spectra/fields.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace tenspec {

inline std::array<double, 3> parse_triple(const std::string& text) {
  std::array<double, 3> out{};
  std::stringstream ss(text);
  std::string tok;
  int n = 0;
  while (std::getline(ss, tok, ',')) {
    if (n >= 3) throw input_error("expected exactly three comma separated values");
    Rat q = parse_rational(tok);
    out[n++] = static_cast<double>(q);
  }
  if (n != 3) throw input_error("expected exactly three comma separated values");
  return out;
}

/// Axis weighting xi: entries in [0,1], largest entry exactly 1.
/// A zero entry disables its axis (no slices allowed there).
struct Weighting {
  std::array<double, 3> xi{1.0, 1.0, 1.0};

  Weighting() = default;
  explicit Weighting(std::array<double, 3> x) : xi(x) { validate(); }
  static Weighting parse(const std::string& text) { return Weighting(parse_triple(text)); }

  void validate() const {
    double mx = std::max({xi[0], xi[1], xi[2]});
    for (double v : xi)
      if (!(v >= 0.0) || v > 1.0) throw input_error("weighting entries must lie in [0,1]");
    if (std::abs(mx - 1.0) > 1e-12) throw input_error("weighting must have maximum entry 1");
  }

  bool active(int axis) const { return xi[axis] > 0.0; }
  std::vector<int> active_axes() const {
    std::vector<int> out;
    for (int i = 0; i < 3; ++i)
      if (active(i)) out.push_back(i);
    return out;
  }
  double operator[](int i) const { return xi[i]; }
};

/// Probability weights theta on the three axes: nonnegative, summing to 1.
struct ThetaWeights {
  std::array<double, 3> th{1.0 / 3, 1.0 / 3, 1.0 / 3};

  ThetaWeights() = default;
  explicit ThetaWeights(std::array<double, 3> t) : th(t) { validate(); }
  static ThetaWeights parse(const std::string& text) { return ThetaWeights(parse_triple(text)); }

  void validate() const {
    double sum = 0;
    for (double v : th) {
      if (!(v >= 0.0)) throw input_error("theta entries must be nonnegative");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw input_error("theta must sum to 1");
  }

  std::vector<int> support() const {
    std::vector<int> out;
    for (int i = 0; i < 3; ++i)
      if (th[i] > 0.0) out.push_back(i);
    return out;
  }
  double operator[](int i) const { return th[i]; }
};

inline double dot(const ThetaWeights& t, const Weighting& w) {
  return t[0] * w[0] + t[1] * w[1] + t[2] * w[2];
}

/// True when theta is supported inside the active axes of xi.
inline bool theta_compatible(const ThetaWeights& t, const Weighting& w) {
  for (int i = 0; i < 3; ++i)
    if (w[i] == 0.0 && t[i] > 0.0) return false;
  return true;
}

}  // namespace tenspec
