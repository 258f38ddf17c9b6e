#pragma once

#include "tensor_spectra/matrix.hpp"
#include "tensor_spectra/params.hpp"
#include "tensor_spectra/tensor.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <vector>

namespace tenspec {

/*
 * A support is tight when there are injective integer maps u_i on the axes
 * with u1(j1) + u2(j2) + u3(j3) = 0 on every support triple. A constant sum
 * is just as good (shift one map), so the verifier accepts it too.
 */

struct TightWitness {
  std::array<std::vector<Int>, 3> u;  // u[i][a-1] is the value at coordinate a
};

enum class TightStatus { found, not_tight, inconclusive };

struct TightResult {
  TightStatus status = TightStatus::inconclusive;
  TightWitness witness;  // populated when status == found
  // populated when status == not_tight: coordinates forced_a, forced_b on
  // axis forced_axis take equal values in every solution of the sum system
  int forced_axis = -1;
  int forced_a = 0, forced_b = 0;
  long radius_used = 0;
};

inline bool verify_tight_witness(const Support& S, std::array<int, 3> dims,
                                 const TightWitness& w) {
  for (int i = 0; i < 3; ++i) {
    if (static_cast<int>(w.u[i].size()) != dims[i]) throw input_error("witness length mismatch");
    std::vector<Int> sorted = w.u[i];
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 1; k < sorted.size(); ++k)
      if (sorted[k] == sorted[k - 1]) return false;
  }
  if (S.empty()) return true;
  Int c = w.u[0][S[0][0] - 1] + w.u[1][S[0][1] - 1] + w.u[2][S[0][2] - 1];
  for (auto& t : S)
    if (w.u[0][t[0] - 1] + w.u[1][t[1] - 1] + w.u[2][t[2] - 1] != c) return false;
  return true;
}

namespace detail {

struct TightSystem {
  std::array<std::vector<int>, 3> occ;       // occurring coordinates per axis, sorted
  std::array<std::map<int, int>, 3> var_of;  // coordinate -> variable column
  std::size_t nvars = 0;
  std::vector<std::vector<Int>> kernel;  // primitive integer kernel basis

  TightSystem(const Support& S, std::array<int, 3> dims) {
    for (auto& t : S)
      for (int i = 0; i < 3; ++i) occ[i].push_back(t[i]);
    for (int i = 0; i < 3; ++i) {
      std::sort(occ[i].begin(), occ[i].end());
      occ[i].erase(std::unique(occ[i].begin(), occ[i].end()), occ[i].end());
      for (int a : occ[i]) var_of[i][a] = static_cast<int>(nvars++);
    }
    Matrix<Rat> A(S.size(), nvars);
    for (std::size_t r = 0; r < S.size(); ++r)
      for (int i = 0; i < 3; ++i) A.at(r, var_of[i].at(S[r][i])) += 1;
    for (auto& vec : kernel_basis(std::move(A))) {
      Int lcm = 1;
      for (auto& q : vec) {
        Int d = rat_den(q);
        lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
      }
      std::vector<Int> iv(nvars);
      Int g = 0;
      for (std::size_t j = 0; j < nvars; ++j) {
        iv[j] = rat_num(vec[j]) * (lcm / rat_den(vec[j]));
        g = boost::multiprecision::gcd(g, iv[j]);
      }
      if (g > 1)
        for (auto& x : iv) x /= g;
      kernel.push_back(std::move(iv));
    }
  }

  // coordinates a, b on axis i are equal across the whole solution space
  bool forced_equal(int i, int a, int b) const {
    int va = var_of[i].at(a), vb = var_of[i].at(b);
    for (auto& k : kernel)
      if (k[va] != k[vb]) return false;
    return true;
  }
};

inline bool injective_on_occurring(const TightSystem& sys, const std::vector<Int>& u) {
  for (int i = 0; i < 3; ++i) {
    std::vector<Int> vals;
    vals.reserve(sys.occ[i].size());
    for (int a : sys.occ[i]) vals.push_back(u[sys.var_of[i].at(a)]);
    std::sort(vals.begin(), vals.end());
    for (std::size_t k = 1; k < vals.size(); ++k)
      if (vals[k] == vals[k - 1]) return false;
  }
  return true;
}

inline TightWitness pad_witness(const TightSystem& sys, const std::vector<Int>& u,
                                std::array<int, 3> dims) {
  TightWitness w;
  for (int i = 0; i < 3; ++i) {
    w.u[i].assign(dims[i], 0);
    Int mx = 0;
    for (int a : sys.occ[i]) {
      Int v = u[sys.var_of[i].at(a)];
      w.u[i][a - 1] = v;
      mx = std::max(mx, Int(boost::multiprecision::abs(v)));
    }
    // unconstrained coordinates get fresh values clear of the used range
    Int next = mx + 1;
    std::vector<bool> occupied(dims[i] + 1, false);
    for (int a : sys.occ[i]) occupied[a] = true;
    for (int a = 1; a <= dims[i]; ++a)
      if (!occupied[a]) w.u[i][a - 1] = next++;
  }
  return w;
}

}  // namespace detail

/*
 * Kernel-lattice search. Solves the zero-sum system exactly over the
 * occurring coordinates, reports a forced-equality certificate when the
 * kernel cannot separate two coordinates, and otherwise looks for an
 * injective point among integer combinations of the kernel basis, doubling
 * the coefficient radius. Small kernels are swept exhaustively (new shell
 * per radius); larger ones use seeded random coefficients.
 */
inline TightResult find_tight_witness(const Support& S, std::array<int, 3> dims,
                                      long radius_max = 1'000'000, std::uint64_t seed = 0) {
  if (S.empty()) throw input_error("tightness needs a nonempty support");
  detail::TightSystem sys(S, dims);
  TightResult out;

  for (int i = 0; i < 3; ++i)
    for (std::size_t x = 0; x < sys.occ[i].size(); ++x)
      for (std::size_t y = x + 1; y < sys.occ[i].size(); ++y)
        if (sys.forced_equal(i, sys.occ[i][x], sys.occ[i][y])) {
          out.status = TightStatus::not_tight;
          out.forced_axis = i;
          out.forced_a = sys.occ[i][x];
          out.forced_b = sys.occ[i][y];
          return out;
        }

  std::size_t d = sys.kernel.size();
  auto try_coeffs = [&](const std::vector<Int>& c) -> bool {
    std::vector<Int> u(sys.nvars, 0);
    for (std::size_t k = 0; k < d; ++k) {
      if (c[k] == 0) continue;
      for (std::size_t j = 0; j < sys.nvars; ++j) u[j] += c[k] * sys.kernel[k][j];
    }
    if (!detail::injective_on_occurring(sys, u)) return false;
    out.witness = detail::pad_witness(sys, u, dims);
    out.status = TightStatus::found;
    return true;
  };

  if (d == 0) {
    // only the zero solution; injective iff each axis occurs at most once
    std::vector<Int> zero;
    if (try_coeffs(zero)) return out;
    out.status = TightStatus::inconclusive;
    return out;
  }

  long prev_rad = 0;
  for (long rad = 1; rad <= radius_max; rad = (rad > radius_max / 2) ? radius_max + 1 : rad * 2) {
    out.radius_used = rad;
    if (d <= 4) {
      // exhaustive over the new shell prev_rad < max|c| <= rad
      std::vector<Int> c(d, -rad);
      std::vector<long> cc(d, -rad);
      while (true) {
        long mx = 0;
        for (long v : cc) mx = std::max(mx, std::abs(v));
        if (mx > prev_rad) {
          for (std::size_t k = 0; k < d; ++k) c[k] = cc[k];
          if (try_coeffs(c)) return out;
        }
        std::size_t k = 0;
        while (k < d && ++cc[k] > rad) cc[k++] = -rad;
        if (k == d) break;
      }
    } else {
      std::mt19937_64 rng(seed * 0x100000001b3ull + static_cast<std::uint64_t>(rad));
      std::vector<Int> c(d);
      for (int trial = 0; trial < 4000; ++trial) {
        for (auto& x : c) {
          long span = 2 * rad + 1;
          x = Int(static_cast<long>(rng() % static_cast<std::uint64_t>(span)) - rad);
        }
        if (try_coeffs(c)) return out;
      }
    }
    prev_rad = rad;
  }
  out.status = TightStatus::inconclusive;
  return out;
}

template <class F>
TightResult find_tight_witness(const SparseTensor<F>& t, long radius_max = 1'000'000,
                               std::uint64_t seed = 0) {
  return find_tight_witness(t.support(), t.dims, radius_max, seed);
}

}  // namespace tenspec
