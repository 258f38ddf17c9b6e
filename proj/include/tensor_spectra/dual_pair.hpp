#pragma once

#include "tensor_spectra/params.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace tenspec {

/*
 * Generic minimax correspondence between simplex functions f(theta) and
 * weighting functions g(xi), both in log2 domain:
 *   g(xi)  = min_{theta in Theta(xi)} f(theta) / <theta,xi>
 *   f(theta) = max_{xi} g(xi) * <theta,xi>
 * Functions are carried as dense grids so the transforms are data-driven.
 */

constexpr int kMaxGridRes = 256;

/// Dense values on the probability simplex at barycentric resolution res.
struct ThetaGridFn {
  int res = 0;
  std::vector<double> vals;  // index k1*(res+1)+k2, defined for k1+k2 <= res
  bool convex = false;       // metadata: set when known convex in theta

  double& at(int k1, int k2) { return vals[static_cast<std::size_t>(k1) * (res + 1) + k2]; }
  double at(int k1, int k2) const { return vals[static_cast<std::size_t>(k1) * (res + 1) + k2]; }

  static ThetaGridFn build(int res, const std::function<double(const ThetaWeights&)>& fn) {
    if (res < 1 || res > kMaxGridRes) throw input_error("grid resolution out of range");
    ThetaGridFn g;
    g.res = res;
    g.vals.assign(static_cast<std::size_t>(res + 1) * (res + 1), 0.0);
    for (int k1 = 0; k1 <= res; ++k1)
      for (int k2 = 0; k1 + k2 <= res; ++k2) {
        ThetaWeights th({double(k1) / res, double(k2) / res, double(res - k1 - k2) / res});
        g.at(k1, k2) = fn(th);
      }
    return g;
  }

  /// Piecewise-linear interpolation on the standard triangulation.
  double interpolate(const std::array<double, 3>& th) const {
    double a = std::clamp(th[0], 0.0, 1.0) * res;
    double b = std::clamp(th[1], 0.0, 1.0) * res;
    if (a + b > res) {  // renormalize tiny overshoot onto the simplex
      double s = res / (a + b);
      a *= s;
      b *= s;
    }
    int ia = std::min(static_cast<int>(a), res - 1);
    int ib = std::min(static_cast<int>(b), res - 1);
    while (ia + ib > res - 1) (ia > ib) ? --ia : --ib;
    double fa = a - ia, fb = b - ib;
    if (fa + fb <= 1.0)
      return (1 - fa - fb) * at(ia, ib) + fa * at(ia + 1, ib) + fb * at(ia, ib + 1);
    return (fa + fb - 1) * at(ia + 1, ib + 1) + (1 - fa) * at(ia, ib + 1) +
           (1 - fb) * at(ia + 1, ib);
  }
};

/// Dense values on the three top faces of the weighting body (max coord = 1).
struct XiGridFn {
  int res = 0;
  std::array<std::vector<double>, 3> face;  // face f: xi_f = 1, index a*(res+1)+b

  double& at(int f, int a, int b) { return face[f][static_cast<std::size_t>(a) * (res + 1) + b]; }
  double at(int f, int a, int b) const {
    return face[f][static_cast<std::size_t>(a) * (res + 1) + b];
  }

  static std::array<double, 3> face_point(int f, double u, double v) {
    std::array<double, 3> xi{};
    xi[f] = 1.0;
    int o1 = (f == 0) ? 1 : 0;
    int o2 = (f == 2) ? 1 : 2;
    xi[o1] = u;
    xi[o2] = v;
    return xi;
  }

  static XiGridFn build(int res, const std::function<double(const Weighting&)>& fn) {
    if (res < 1 || res > kMaxGridRes) throw input_error("grid resolution out of range");
    XiGridFn g;
    g.res = res;
    for (int f = 0; f < 3; ++f) {
      g.face[f].assign(static_cast<std::size_t>(res + 1) * (res + 1), 0.0);
      for (int a = 0; a <= res; ++a)
        for (int b = 0; b <= res; ++b) {
          auto xi = face_point(f, double(a) / res, double(b) / res);
          g.at(f, a, b) = fn(Weighting(xi));
        }
    }
    return g;
  }

  double interpolate(const std::array<double, 3>& xi) const {
    int f = 0;
    for (int i = 1; i < 3; ++i)
      if (xi[i] > xi[f]) f = i;
    int o1 = (f == 0) ? 1 : 0;
    int o2 = (f == 2) ? 1 : 2;
    double a = std::clamp(xi[o1], 0.0, 1.0) * res;
    double b = std::clamp(xi[o2], 0.0, 1.0) * res;
    int ia = std::min(static_cast<int>(a), res - 1);
    int ib = std::min(static_cast<int>(b), res - 1);
    double fa = a - ia, fb = b - ib;
    return (1 - fa) * (1 - fb) * at(f, ia, ib) + fa * (1 - fb) * at(f, ia + 1, ib) +
           (1 - fa) * fb * at(f, ia, ib + 1) + fa * fb * at(f, ia + 1, ib + 1);
  }
};

struct GfromF {
  double value = 0;  // log2 domain
  std::array<double, 3> theta{};
};

namespace detail {

inline double golden_min_1d(const std::function<double(double)>& h, double lo, double hi,
                            int iters) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = h(x1), f2 = h(x2);
  for (int it = 0; it < iters; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = h(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = h(x2);
    }
  }
  return (f1 <= f2) ? x1 : x2;
}

}  // namespace detail

/// g(xi) = min over compatible theta of f(theta)/<theta,xi>, from f's grid.
inline GfromF g_from_f(const ThetaGridFn& f, const Weighting& xi) {
  std::vector<int> act = xi.active_axes();
  auto ratio = [&](const std::array<double, 3>& th) {
    double d = th[0] * xi[0] + th[1] * xi[1] + th[2] * xi[2];
    if (d < 1e-15) return 1e300;
    return f.interpolate(th) / d;
  };
  GfromF best;
  best.value = 1e300;
  int R = f.res;
  for (int k1 = 0; k1 <= R; ++k1)
    for (int k2 = 0; k1 + k2 <= R; ++k2) {
      int k3 = R - k1 - k2;
      if ((!xi.active(0) && k1 > 0) || (!xi.active(1) && k2 > 0) || (!xi.active(2) && k3 > 0))
        continue;
      std::array<double, 3> th{double(k1) / R, double(k2) / R, double(k3) / R};
      double d = th[0] * xi[0] + th[1] * xi[1] + th[2] * xi[2];
      if (d < 1e-15) continue;
      double v = f.at(k1, k2) / d;
      if (v < best.value - 1e-15) {
        best.value = v;
        best.theta = th;
      }
    }
  // refine along coordinate pairs of the active axes
  for (int pass = 0; pass < 3; ++pass)
    for (std::size_t ai = 0; ai < act.size(); ++ai)
      for (std::size_t bi = ai + 1; bi < act.size(); ++bi) {
        int i = act[ai], j = act[bi];
        double tot = best.theta[i] + best.theta[j];
        if (tot < 1e-12) continue;
        auto h = [&](double t) {
          auto th = best.theta;
          th[i] = t;
          th[j] = tot - t;
          return ratio(th);
        };
        double t = detail::golden_min_1d(h, 0.0, tot, 32);
        double v = h(t);
        if (v < best.value - 1e-15) {
          best.value = v;
          best.theta[i] = t;
          best.theta[j] = tot - t;
        }
      }
  return best;
}

struct FfromG {
  double value = 0;  // log2 domain
  std::array<double, 3> xi{};
};

/// f(theta) = max over weightings of g(xi)*<theta,xi>, from g's grid.
inline FfromG f_from_g(const XiGridFn& g, const ThetaWeights& th) {
  auto score = [&](const std::array<double, 3>& xi) {
    return g.interpolate(xi) * (th[0] * xi[0] + th[1] * xi[1] + th[2] * xi[2]);
  };
  FfromG best;
  best.value = -1e300;
  int R = g.res;
  int best_f = 0;
  for (int f = 0; f < 3; ++f)
    for (int a = 0; a <= R; ++a)
      for (int b = 0; b <= R; ++b) {
        auto xi = XiGridFn::face_point(f, double(a) / R, double(b) / R);
        double v = g.at(f, a, b) * (th[0] * xi[0] + th[1] * xi[1] + th[2] * xi[2]);
        if (v > best.value + 1e-15) {
          best.value = v;
          best.xi = xi;
          best_f = f;
        }
      }
  int o1 = (best_f == 0) ? 1 : 0;
  int o2 = (best_f == 2) ? 1 : 2;
  for (int pass = 0; pass < 2; ++pass)
    for (int c : {o1, o2}) {
      auto h = [&](double t) {
        auto xi = best.xi;
        xi[c] = t;
        return -score(xi);
      };
      double t = detail::golden_min_1d(h, 0.0, 1.0, 32);
      if (-h(t) > best.value + 1e-15) {
        best.value = -h(t);
        best.xi[c] = t;
      }
    }
  return best;
}

enum class TransferMode { product, sum };

struct TransferViolation {
  std::array<double, 3> point{};
  double lhs = 0;  // combined side that should not exceed rhs
  double rhs = 0;
};

struct TransferReport {
  bool hypothesis_holds = false;
  bool conclusion_checked = false;  // false when the hypothesis already failed
  bool conclusion_holds = false;
  long hypothesis_violation_count = 0;
  long conclusion_violation_count = 0;
  std::vector<TransferViolation> hypothesis_violations;  // capped sample
  std::vector<TransferViolation> conclusion_violations;
  double worst_hypothesis_margin = 0;  // max of lhs-rhs over the grid
  double worst_conclusion_margin = 0;
};

/*
 * Checks whether super-multiplicativity (product mode, log domain) or
 * super-additivity (sum mode, value domain) of f under the combination
 * transfers to g. The hypothesis is swept on the theta grid; only when it
 * holds is the conclusion asserted and swept on the xi grid.
 */
inline TransferReport check_transfer(const ThetaGridFn& fS, const ThetaGridFn& fT,
                                     const ThetaGridFn& fST, const XiGridFn& gS,
                                     const XiGridFn& gT, const XiGridFn& gST, TransferMode mode,
                                     double tol = 1e-9) {
  if (fS.res != fT.res || fS.res != fST.res) throw input_error("theta grids disagree on resolution");
  if (gS.res != gT.res || gS.res != gST.res) throw input_error("xi grids disagree on resolution");
  constexpr std::size_t kMaxStored = 16;
  TransferReport rep;
  rep.worst_hypothesis_margin = -1e300;
  int R = fS.res;
  for (int k1 = 0; k1 <= R; ++k1)
    for (int k2 = 0; k1 + k2 <= R; ++k2) {
      double lhs, rhs;
      if (mode == TransferMode::product) {
        lhs = fS.at(k1, k2) + fT.at(k1, k2);
        rhs = fST.at(k1, k2);
      } else {
        lhs = std::exp2(fS.at(k1, k2)) + std::exp2(fT.at(k1, k2));
        rhs = std::exp2(fST.at(k1, k2));
      }
      rep.worst_hypothesis_margin = std::max(rep.worst_hypothesis_margin, lhs - rhs);
      if (lhs > rhs + tol) {
        ++rep.hypothesis_violation_count;
        if (rep.hypothesis_violations.size() < kMaxStored)
          rep.hypothesis_violations.push_back(
              {{double(k1) / R, double(k2) / R, double(R - k1 - k2) / R}, lhs, rhs});
      }
    }
  rep.hypothesis_holds = rep.hypothesis_violation_count == 0;
  if (!rep.hypothesis_holds) return rep;

  rep.conclusion_checked = true;
  rep.worst_conclusion_margin = -1e300;
  int Q = gS.res;
  for (int f = 0; f < 3; ++f)
    for (int a = 0; a <= Q; ++a)
      for (int b = 0; b <= Q; ++b) {
        double lhs, rhs;
        if (mode == TransferMode::product) {
          lhs = gS.at(f, a, b) + gT.at(f, a, b);
          rhs = gST.at(f, a, b);
        } else {
          lhs = std::exp2(gS.at(f, a, b)) + std::exp2(gT.at(f, a, b));
          rhs = std::exp2(gST.at(f, a, b));
        }
        rep.worst_conclusion_margin = std::max(rep.worst_conclusion_margin, lhs - rhs);
        if (lhs > rhs + tol) {
          ++rep.conclusion_violation_count;
          if (rep.conclusion_violations.size() < kMaxStored)
            rep.conclusion_violations.push_back(
                {XiGridFn::face_point(f, double(a) / Q, double(b) / Q), lhs, rhs});
        }
      }
  rep.conclusion_holds = rep.conclusion_violation_count == 0;
  return rep;
}

}  // namespace tenspec
