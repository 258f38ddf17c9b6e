#pragma once

#include "tensor_spectra/fields.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace tenspec {

/// Partition of an integer: weakly decreasing positive parts.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  explicit Partition(std::vector<int> p) : parts(std::move(p)) { validate(); }

  void validate() const {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] <= 0) throw input_error("partition parts must be positive");
      if (i > 0 && parts[i] > parts[i - 1]) throw input_error("partition parts must be weakly decreasing");
    }
  }
  int weight() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
  }
  int length() const { return static_cast<int>(parts.size()); }
};

/// All partitions of k (optionally with at most max_len parts), largest part first.
inline std::vector<Partition> partitions_of(int k, int max_len = -1) {
  if (k < 0) throw input_error("cannot partition a negative integer");
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rem, int cap) {
    if (rem == 0) {
      out.push_back(Partition(cur));
      return;
    }
    if (max_len >= 0 && static_cast<int>(cur.size()) >= max_len) return;
    for (int p = std::min(rem, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(rem - p, p);
      cur.pop_back();
    }
  };
  rec(k, k);
  return out;
}

inline Int factorial(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Number of standard Young tableaux of shape lambda, by the hook length formula.
inline Int specht_dim_exact(const Partition& lam) {
  int k = lam.weight();
  if (k == 0) return 1;
  int d = lam.length();
  std::vector<int> conj(lam.parts[0], 0);  // conj[j] = # rows with part > j
  for (int j = 0; j < lam.parts[0]; ++j)
    for (int i = 0; i < d; ++i)
      if (lam.parts[i] > j) ++conj[j];
  Int hooks = 1;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < lam.parts[i]; ++j) hooks *= (lam.parts[i] - j - 1) + (conj[j] - i - 1) + 1;
  return factorial(k) / hooks;
}

struct SpechtBounds {
  Rat lower;  // k! / prod (lambda_i + d - i)!  (not always integral)
  Int upper;  // k! / prod lambda_i!  (the multinomial)
};

/// Closed-form sandwich around the hook length count.
inline SpechtBounds specht_bounds(const Partition& lam) {
  int k = lam.weight();
  int d = lam.length();
  Int lo_den = 1, up_den = 1;
  for (int i = 0; i < d; ++i) {
    lo_den *= factorial(lam.parts[i] + d - (i + 1));
    up_den *= factorial(lam.parts[i]);
  }
  SpechtBounds b;
  b.lower = Rat(factorial(k), lo_den);
  b.upper = factorial(k) / up_den;
  return b;
}

/// Polynomial bound on the count of irreducible GL_m blocks in degree k.
inline Int schur_dim_bound(int m, int k) {
  if (m < 1 || k < 0) throw input_error("need m >= 1 and k >= 0");
  Int out = 1;
  Int base = k + 1;
  long e = static_cast<long>(m) * (m - 1) / 2;
  for (long i = 0; i < e; ++i) out *= base;
  return out;
}

struct EntropyRateReport {
  bool holds = false;
  Partition shape;     // n * lambda
  Int dim;             // its standard tableaux count
  Int lhs;             // dim * prod lambda_i^(lambda_i n)
  Int rhs;             // k^(k n)
};

/*
 * Exact integer check that tableaux counts grow no faster than the entropy
 * rate of the normalized shape: dim[n*lambda] <= 2^(H(lambda/k) k n), written
 * multiplicatively so both sides are integers.
 */
inline EntropyRateReport entropy_rate_check(const Partition& lam, int n, long cell_budget = 100000) {
  if (n < 1) throw input_error("power n must be >= 1");
  int k = lam.weight();
  if (static_cast<long>(k) * n > cell_budget)
    throw budget_error("scaled shape too large; lower n or raise the budget");
  std::vector<int> scaled(lam.parts);
  for (int& p : scaled) p *= n;
  EntropyRateReport rep;
  rep.shape = Partition(scaled);
  rep.dim = specht_dim_exact(rep.shape);
  Int lhs = rep.dim;
  for (int p : lam.parts) {
    Int f = boost::multiprecision::pow(Int(p), static_cast<unsigned>(p) * n);
    lhs *= f;
  }
  rep.lhs = lhs;
  rep.rhs = boost::multiprecision::pow(Int(k), static_cast<unsigned>(k) * n);
  rep.holds = rep.lhs <= rep.rhs;
  return rep;
}

struct LrReport {
  bool holds = false;
  Partition sum;  // componentwise lambda + mu
  Int dim_sum, dim_lam, dim_mu;
};

/// dim[lambda + mu] >= dim[lambda] * dim[mu], exactly.
inline LrReport lr_superadditivity_check(const Partition& lam, const Partition& mu) {
  std::vector<int> s(std::max(lam.parts.size(), mu.parts.size()), 0);
  for (std::size_t i = 0; i < lam.parts.size(); ++i) s[i] += lam.parts[i];
  for (std::size_t i = 0; i < mu.parts.size(); ++i) s[i] += mu.parts[i];
  LrReport rep;
  rep.sum = Partition(s);
  rep.dim_sum = specht_dim_exact(rep.sum);
  rep.dim_lam = specht_dim_exact(lam);
  rep.dim_mu = specht_dim_exact(mu);
  rep.holds = rep.dim_sum >= rep.dim_lam * rep.dim_mu;
  return rep;
}

}  // namespace tenspec
