#pragma once

#include "tensor_spectra/entropy.hpp"
#include "tensor_spectra/lp.hpp"
#include "tensor_spectra/params.hpp"
#include "tensor_spectra/tensor.hpp"
#include "tensor_spectra/tightness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <vector>

namespace tenspec {

/*
 * Optimization over distributions p on a support S. The feasible region of
 * marginal triples is a compact polytope; the functionals below are
 * maximizations of entropy expressions over it, reported with witnesses and
 * certified gaps in the exponent (base-2 log) domain.
 */

struct MarginalTriple {
  std::array<std::vector<double>, 3> q;
};

struct FunctionalResult {
  double value = 1;       // 2^log2_value
  double log2_value = 0;  // the optimized exponent
  std::vector<double> witness;
  Support support;        // sorted support the witness indexes
  double certified_gap = 0;  // exponent-domain width of the enclosing bracket
  bool upper_bound_only = false;
};

inline Support canonical_support(Support S, std::array<int, 3> dims) {
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  if (S.empty()) throw input_error("empty support");
  for (auto& t : S)
    for (int i = 0; i < 3; ++i)
      if (t[i] < 1 || t[i] > dims[i]) throw input_error("support triple out of range");
  return S;
}

inline MarginalTriple marginals(const Support& S, std::array<int, 3> dims,
                                const std::vector<double>& p) {
  MarginalTriple m;
  for (int i = 0; i < 3; ++i) m.q[i].assign(dims[i], 0.0);
  for (std::size_t s = 0; s < S.size(); ++s)
    for (int i = 0; i < 3; ++i) m.q[i][S[s][i] - 1] += p[s];
  return m;
}

inline std::array<std::vector<Rat>, 3> marginals_exact(const Support& S, std::array<int, 3> dims,
                                                       const std::vector<Rat>& p) {
  std::array<std::vector<Rat>, 3> m;
  for (int i = 0; i < 3; ++i) m[i].assign(dims[i], Rat(0));
  for (std::size_t s = 0; s < S.size(); ++s)
    for (int i = 0; i < 3; ++i) m[i][S[s][i] - 1] += p[s];
  return m;
}

namespace detail {

inline void project_simplex(std::vector<double>& v) {
  // Euclidean projection onto {x >= 0, sum x = 1}
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0, theta = 0;
  int k = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cum += u[j];
    double t = (cum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0) {
      theta = t;
      k = static_cast<int>(j + 1);
    }
  }
  (void)k;
  double sum = 0;
  for (auto& x : v) {
    x = std::max(0.0, x - theta);
    sum += x;
  }
  if (sum > 0)
    for (auto& x : v) x /= sum;
  else
    std::fill(v.begin(), v.end(), 1.0 / v.size());
}

struct FWOutcome {
  std::vector<double> p;
  double value = 0;
  double gap = 0;  // linearization bound: optimum <= value + gap
  int iters = 0;
};

/*
 * Frank-Wolfe with away steps over the probability simplex, maximizing a
 * concave objective. The linear subproblem is vertex selection, and the
 * linearization gap max_j g_j - <g,p> certifies how far the current value
 * can be from the optimum. Golden-section handles the exact line search.
 */
template <class Obj, class Grad>
FWOutcome fw_maximize(std::size_t n, Obj&& obj, Grad&& grad, const std::vector<double>* warm,
                      double tol, int max_iters) {
  FWOutcome out;
  out.p.assign(n, 1.0 / static_cast<double>(n));
  if (warm && warm->size() == n) {
    double s = 0;
    for (double x : *warm) s += std::max(0.0, x);
    if (s > 0.5) {
      out.p = *warm;
      for (auto& x : out.p) x = std::max(0.0, x) / s;
    }
  }
  std::vector<double> g(n), trial(n);
  auto line_search = [&](const std::vector<double>& base, const std::vector<double>& dir,
                         double hi) {
    // maximize obj(base + t*dir) for t in [0, hi]; concave in t
    double a = 0, b = hi;
    const double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    auto val = [&](double t) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = base[i] + t * dir[i];
      return obj(trial);
    };
    double f1 = val(x1), f2 = val(x2);
    for (int it = 0; it < 48; ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = val(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = val(x1);
      }
    }
    return 0.5 * (a + b);
  };

  for (out.iters = 0; out.iters < max_iters; ++out.iters) {
    grad(out.p, g);
    std::size_t fw = 0, away = n;
    double gdotp = 0;
    for (std::size_t j = 0; j < n; ++j) {
      gdotp += g[j] * out.p[j];
      if (g[j] > g[fw]) fw = j;
      if (out.p[j] > 1e-15 && (away == n || g[j] < g[away])) away = j;
    }
    double fw_gap = g[fw] - gdotp;
    out.gap = fw_gap;
    if (fw_gap <= tol) break;
    double away_gap = (away < n) ? gdotp - g[away] : -1.0;

    std::vector<double> dir(n);
    double hi;
    if (fw_gap >= away_gap || away == n) {
      for (std::size_t j = 0; j < n; ++j) dir[j] = -out.p[j];
      dir[fw] += 1.0;
      hi = 1.0;
    } else {
      for (std::size_t j = 0; j < n; ++j) dir[j] = out.p[j];
      dir[away] -= 1.0;
      double pa = out.p[away];
      hi = (pa < 1.0 - 1e-12) ? pa / (1.0 - pa) : 1.0;
    }
    double t = line_search(out.p, dir, hi);
    if (t <= 0) break;
    double sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
      out.p[j] = std::max(0.0, out.p[j] + t * dir[j]);
      sum += out.p[j];
    }
    for (auto& x : out.p) x /= sum;
  }
  out.value = obj(out.p);
  // refresh the certificate at the final point
  grad(out.p, g);
  double gdotp = 0, gmax = g[0];
  for (std::size_t j = 0; j < n; ++j) {
    gdotp += g[j] * out.p[j];
    gmax = std::max(gmax, g[j]);
  }
  out.gap = std::max(0.0, gmax - gdotp);
  return out;
}

constexpr double kGradClamp = 1e-300;

}  // namespace detail

/// max over p of sum_i theta_i H(p_i), reported as 2^max with an exact
/// Frank-Wolfe linearization certificate in the exponent.
inline FunctionalResult support_functional_zeta(Support S, std::array<int, 3> dims,
                                                const ThetaWeights& th, double tol = 1e-8,
                                                const std::vector<double>* warm = nullptr,
                                                int max_iters = 20000) {
  S = canonical_support(std::move(S), dims);
  std::size_t n = S.size();

  auto obj = [&](const std::vector<double>& p) {
    MarginalTriple m = marginals(S, dims, p);
    double v = 0;
    for (int i = 0; i < 3; ++i)
      if (th[i] > 0) v += th[i] * entropy(m.q[i]);
    return v;
  };
  auto grad = [&](const std::vector<double>& p, std::vector<double>& g) {
    MarginalTriple m = marginals(S, dims, p);
    for (std::size_t s = 0; s < n; ++s) {
      double acc = 0;
      for (int i = 0; i < 3; ++i) {
        if (th[i] <= 0) continue;
        double q = std::max(m.q[i][S[s][i] - 1], detail::kGradClamp);
        acc -= th[i] * (std::log2(q) + M_LOG2E);
      }
      g[s] = acc;
    }
  };

  auto fw = detail::fw_maximize(n, obj, grad, warm, tol, max_iters);
  FunctionalResult out;
  out.support = std::move(S);
  out.witness = std::move(fw.p);
  out.log2_value = fw.value;
  out.value = std::exp2(fw.value);
  out.certified_gap = fw.gap;
  return out;
}

/*
 * max over p of min over active axes of H(p_i)/xi_i, reported as a power of
 * two. Temperature-halved soft-min smoothing keeps the inner problem smooth
 * and concave; each stage contributes the global bound
 * optimum <= psi_t(p) + fw_gap + t log2(#active), and the final value is
 * polished with plain projected supergradient steps on the raw objective.
 */
inline FunctionalResult awsr_primal(Support S, std::array<int, 3> dims, const Weighting& xi,
                                    double tol = 1e-8) {
  S = canonical_support(std::move(S), dims);
  std::size_t n = S.size();
  std::vector<int> act = xi.active_axes();
  double logK = std::log2(static_cast<double>(std::max<std::size_t>(act.size(), 2)));

  auto axis_scores = [&](const std::vector<double>& p, std::array<double, 3>& a) {
    MarginalTriple m = marginals(S, dims, p);
    for (int i : act) a[i] = entropy(m.q[i]) / xi[i];
  };
  auto phi = [&](const std::vector<double>& p) {
    std::array<double, 3> a{};
    axis_scores(p, a);
    double v = 1e300;
    for (int i : act) v = std::min(v, a[i]);
    return v;
  };

  double t0 = 1.0;
  double t_final = std::max(tol / (4.0 * logK), 1e-12);
  std::vector<double> p(n, 1.0 / n);
  double upper = 1e300;
  for (int i : act) upper = std::min(upper, std::log2(static_cast<double>(dims[i])) / xi[i]);

  for (double t = t0;; t *= 0.5) {
    auto obj = [&](const std::vector<double>& q) {
      std::array<double, 3> a{};
      axis_scores(q, a);
      double amin = 1e300;
      for (int i : act) amin = std::min(amin, a[i]);
      double s = 0;
      for (int i : act) s += std::exp2(-(a[i] - amin) / t);
      return amin - t * std::log2(s);
    };
    auto grad = [&](const std::vector<double>& q, std::vector<double>& g) {
      MarginalTriple m = marginals(S, dims, q);
      std::array<double, 3> a{};
      for (int i : act) a[i] = entropy(m.q[i]) / xi[i];
      double amin = 1e300;
      for (int i : act) amin = std::min(amin, a[i]);
      std::array<double, 3> lam{};
      double z = 0;
      for (int i : act) z += (lam[i] = std::exp2(-(a[i] - amin) / t));
      for (int i : act) lam[i] /= z;
      for (std::size_t s = 0; s < n; ++s) {
        double acc = 0;
        for (int i : act) {
          double qv = std::max(m.q[i][S[s][i] - 1], detail::kGradClamp);
          acc -= lam[i] / xi[i] * (std::log2(qv) + M_LOG2E);
        }
        g[s] = acc;
      }
    };
    double stage_tol = std::max(tol / 4.0, t * logK / 4.0);
    auto fw = detail::fw_maximize(n, obj, grad, &p, stage_tol, 300);
    p = fw.p;
    upper = std::min(upper, fw.value + fw.gap + t * logK);
    if (t <= t_final) break;
  }

  // subgradient polish on the unsmoothed objective
  std::vector<double> best_p = p;
  double best_phi = phi(p);
  {
    std::vector<double> cur = p, g(n);
    for (int step = 0; step < 500; ++step) {
      MarginalTriple m = marginals(S, dims, cur);
      int imin = act[0];
      double amin = 1e300;
      for (int i : act) {
        double a = entropy(m.q[i]) / xi[i];
        if (a < amin) {
          amin = a;
          imin = i;
        }
      }
      for (std::size_t s = 0; s < n; ++s) {
        double qv = std::max(m.q[imin][S[s][imin] - 1], detail::kGradClamp);
        g[s] = -(std::log2(qv) + M_LOG2E) / xi[imin];
      }
      double eta = 0.05 / std::sqrt(static_cast<double>(step + 1));
      for (std::size_t s = 0; s < n; ++s) cur[s] += eta * g[s];
      detail::project_simplex(cur);
      double v = phi(cur);
      if (v > best_phi) {
        best_phi = v;
        best_p = cur;
      }
    }
  }

  FunctionalResult out;
  out.support = std::move(S);
  out.witness = std::move(best_p);
  out.log2_value = best_phi;
  out.value = std::exp2(best_phi);
  out.certified_gap = std::max(0.0, upper - best_phi);
  return out;
}

namespace detail {

struct ThetaGridPoint {
  std::array<double, 3> th;
};

// barycentric grid of resolution 1/res over the axes listed in act
inline std::vector<ThetaGridPoint> theta_grid(const std::vector<int>& act, int res) {
  std::vector<ThetaGridPoint> out;
  if (act.size() == 1) {
    ThetaGridPoint p{};
    p.th[act[0]] = 1.0;
    out.push_back(p);
    return out;
  }
  if (act.size() == 2) {
    for (int k = 0; k <= res; ++k) {
      ThetaGridPoint p{};
      p.th[act[0]] = static_cast<double>(k) / res;
      p.th[act[1]] = static_cast<double>(res - k) / res;
      out.push_back(p);
    }
    return out;
  }
  for (int k1 = 0; k1 <= res; ++k1)
    for (int k2 = 0; k2 + k1 <= res; ++k2) {
      ThetaGridPoint p{};
      p.th[act[0]] = static_cast<double>(k1) / res;
      p.th[act[1]] = static_cast<double>(k2) / res;
      p.th[act[2]] = static_cast<double>(res - k1 - k2) / res;
      out.push_back(p);
    }
  return out;
}

}  // namespace detail

/*
 * Dual route: minimize log2 zeta_theta / <theta,xi> over the face of the
 * theta simplex supported on active axes. The ratio is quasiconvex, so a
 * coarse barycentric sweep followed by golden-section refinement along
 * coordinate-pair lines locates the minimum; the reported bracket pairs the
 * dual upper bound with the primal objective of the best inner witness.
 */
inline FunctionalResult awsr_dual(Support S, std::array<int, 3> dims, const Weighting& xi,
                                  double tol = 1e-8, int theta_res = 64) {
  S = canonical_support(std::move(S), dims);
  std::vector<int> act = xi.active_axes();
  double ztol = tol / 4.0;

  std::vector<double> warm;
  double best_D = 1e300, best_dot = 1.0, best_ub = 1e300;
  std::array<double, 3> best_th{};
  std::vector<double> best_witness;

  auto eval = [&](const std::array<double, 3>& thv) {
    ThetaWeights th(thv);
    auto z = support_functional_zeta(S, dims, th, ztol, warm.empty() ? nullptr : &warm, 20000);
    warm = z.witness;
    double dot = 0;
    for (int i : act) dot += thv[i] * xi[i];
    double D = z.log2_value / dot;
    if (D < best_D) {
      best_D = D;
      best_dot = dot;
      best_th = thv;
      best_ub = (z.log2_value + z.certified_gap) / dot;
      best_witness = z.witness;
    }
    return D;
  };

  for (auto& gp : detail::theta_grid(act, theta_res)) eval(gp.th);

  // refinement: move mass between one pair of active axes at a time
  if (act.size() >= 2) {
    const double inv_phi = 0.6180339887498949;
    for (int pass = 0; pass < 3; ++pass) {
      for (std::size_t x = 0; x < act.size(); ++x)
        for (std::size_t y = x + 1; y < act.size(); ++y) {
          int i = act[x], j = act[y];
          double total = best_th[i] + best_th[j];
          if (total <= 1e-12) continue;
          auto line = [&](double s) {
            std::array<double, 3> th = best_th;
            th[i] = s;
            th[j] = total - s;
            return eval(th);
          };
          double a = 0, b = total;
          double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
          double f1 = line(x1), f2 = line(x2);
          for (int it = 0; it < 32; ++it) {
            if (f1 > f2) {
              a = x1;
              x1 = x2;
              f1 = f2;
              x2 = a + inv_phi * (b - a);
              f2 = line(x2);
            } else {
              b = x2;
              x2 = x1;
              f2 = f1;
              x1 = b - inv_phi * (b - a);
              f1 = line(x1);
            }
          }
          line(0.5 * (a + b));
        }
    }
  }

  // primal value of the inner witness is a valid lower bound on the optimum
  double lower = -1e300;
  {
    MarginalTriple m = marginals(S, dims, best_witness);
    double v = 1e300;
    for (int i : act) v = std::min(v, entropy(m.q[i]) / xi[i]);
    lower = v;
  }

  FunctionalResult out;
  out.support = std::move(S);
  out.witness = std::move(best_witness);
  out.log2_value = best_D;
  out.value = std::exp2(best_D);
  out.certified_gap = std::max(0.0, best_ub - lower);
  (void)best_dot;
  return out;
}

/// max over p of sum_i theta_i Hmin(p_i) (not concave; seeded multistart
/// ascent) with the per-axis LP bound sum_i theta_i (-log2 min max marginal)
/// as the certificate.
inline FunctionalResult min_entropy_zeta(Support S, std::array<int, 3> dims,
                                         const ThetaWeights& th, double tol = 1e-8,
                                         std::uint64_t seed = 0) {
  S = canonical_support(std::move(S), dims);
  std::size_t n = S.size();
  (void)tol;

  auto obj = [&](const std::vector<double>& p) {
    MarginalTriple m = marginals(S, dims, p);
    double v = 0;
    for (int i = 0; i < 3; ++i)
      if (th[i] > 0) v += th[i] * min_entropy(m.q[i]);
    return v;
  };

  std::vector<double> best_p;
  double best = -1e300;
  for (int start = 0; start < 8; ++start) {
    std::vector<double> p(n);
    if (start == 0) {
      std::fill(p.begin(), p.end(), 1.0 / n);
    } else {
      std::mt19937_64 rng(seed * 1000003ull + start);
      double sum = 0;
      for (auto& x : p) {
        double u = (rng() >> 11) * 0x1.0p-53 + 1e-12;
        x = -std::log(u);
        sum += x;
      }
      for (auto& x : p) x /= sum;
    }
    std::vector<double> g(n);
    double cur_best = obj(p);
    std::vector<double> cur_best_p = p;
    for (int step = 0; step < 400; ++step) {
      MarginalTriple m = marginals(S, dims, p);
      std::fill(g.begin(), g.end(), 0.0);
      for (int i = 0; i < 3; ++i) {
        if (th[i] <= 0) continue;
        int amax = 0;
        for (int a = 1; a < dims[i]; ++a)
          if (m.q[i][a] > m.q[i][amax]) amax = a;
        double qv = std::max(m.q[i][amax], detail::kGradClamp);
        double coef = -th[i] * M_LOG2E / qv;
        for (std::size_t s = 0; s < n; ++s)
          if (S[s][i] - 1 == amax) g[s] += coef;
      }
      double eta = 0.2 / std::sqrt(static_cast<double>(step + 1));
      for (std::size_t s = 0; s < n; ++s) p[s] += eta * g[s];
      detail::project_simplex(p);
      double v = obj(p);
      if (v > cur_best) {
        cur_best = v;
        cur_best_p = p;
      }
    }
    if (cur_best > best) {
      best = cur_best;
      best_p = cur_best_p;
    }
  }

  // upper bound: each axis optimized separately by exact LP
  double ub = 0;
  for (int i = 0; i < 3; ++i) {
    if (th[i] <= 0) continue;
    // minimize t subject to marginal_i(p) <= t entrywise, p a distribution
    std::size_t rows = dims[i] + 1;
    LinProg lp;
    lp.nvars = n + 1;  // p then t
    lp.A = Matrix<Rat>(rows, lp.nvars);
    lp.b.assign(rows, Rat(0));
    lp.rel.assign(rows, -1);
    for (std::size_t s = 0; s < n; ++s) lp.A.at(S[s][i] - 1, s) = 1;
    for (int a = 0; a < dims[i]; ++a) lp.A.at(a, n) = -1;
    for (std::size_t s = 0; s < n; ++s) lp.A.at(dims[i], s) = 1;
    lp.rel[dims[i]] = 0;
    lp.b[dims[i]] = 1;
    lp.c.assign(lp.nvars, Rat(0));
    lp.c[n] = -1;  // maximize -t
    auto sol = solve_lp(lp);
    double mstar = (sol.status == LPSolution::Status::optimal)
                       ? static_cast<double>(-sol.objective)
                       : 1.0 / dims[i];
    ub += th[i] * (-std::log2(std::max(mstar, 1e-300)));
  }

  FunctionalResult out;
  out.support = std::move(S);
  out.witness = std::move(best_p);
  out.log2_value = best;
  out.value = std::exp2(best);
  out.certified_gap = std::max(0.0, ub - best);
  return out;
}

/*
 * max over p of min over active axes of Hmin(p_i)/xi_i. Equivalent to
 * minimizing the convex max_i (max_a marginal)^{1/xi_i}, so bisection on the
 * exponent with an exact rational feasibility LP at each level gives a
 * globally certified bracket.
 */
inline FunctionalResult min_entropy_g(Support S, std::array<int, 3> dims, const Weighting& xi,
                                      double tol = 1e-8) {
  S = canonical_support(std::move(S), dims);
  std::size_t n = S.size();
  std::vector<int> act = xi.active_axes();

  auto phi = [&](const std::vector<double>& p) {
    MarginalTriple m = marginals(S, dims, p);
    double v = 1e300;
    for (int i : act) v = std::min(v, min_entropy(m.q[i]) / xi[i]);
    return v;
  };

  auto feasible = [&](double c, std::vector<Rat>& witness) {
    std::size_t rows = 1;
    for (int i : act) rows += dims[i];
    LinProg lp;
    lp.nvars = n;
    lp.A = Matrix<Rat>(rows, n);
    lp.b.assign(rows, Rat(0));
    lp.rel.assign(rows, -1);
    std::size_t r = 0;
    for (int i : act) {
      // marginal bound 2^{-c xi_i}, rounded up to a nearby dyadic rational
      double beta = std::exp2(-c * xi[i]);
      Int num = Int(static_cast<long long>(std::ceil(std::ldexp(beta, 53)))) + 1;
      Rat bound(num, Int(1) << 53);
      for (int a = 0; a < dims[i]; ++a, ++r) {
        for (std::size_t s = 0; s < n; ++s)
          if (S[s][i] - 1 == a) lp.A.at(r, s) = 1;
        lp.b[r] = bound;
      }
    }
    for (std::size_t s = 0; s < n; ++s) lp.A.at(r, s) = 1;
    lp.rel[r] = 0;
    lp.b[r] = 1;
    lp.c.assign(n, Rat(0));
    auto sol = solve_lp(lp);
    if (sol.status != LPSolution::Status::optimal) return false;
    witness = sol.x;
    return true;
  };

  std::vector<double> w0(n, 1.0 / n);
  double lo = phi(w0);
  double hi = 1e300;
  for (int i : act) hi = std::min(hi, std::log2(static_cast<double>(dims[i])) / xi[i]);
  hi += 1e-9;
  std::vector<Rat> wit;
  std::vector<double> best_w = w0;
  for (int it = 0; it < 64 && hi - lo > tol / 2; ++it) {
    double mid = 0.5 * (lo + hi);
    if (feasible(mid, wit)) {
      lo = mid;
      best_w.assign(n, 0.0);
      for (std::size_t s = 0; s < n; ++s) best_w[s] = static_cast<double>(wit[s]);
    } else {
      hi = mid;
    }
  }

  double achieved = phi(best_w);
  FunctionalResult out;
  out.support = std::move(S);
  out.witness = std::move(best_w);
  out.log2_value = achieved;
  out.value = std::exp2(achieved);
  out.certified_gap = std::max(0.0, hi - achieved);
  return out;
}

/// Exact feasibility of "all three marginals uniform" with a rational witness
/// or a Farkas certificate, both re-verified before returning.
struct MarginalFeasibility {
  bool feasible = false;
  std::vector<Rat> witness;  // distribution over the sorted support
  std::vector<Rat> farkas;   // certificate rows follow lp
  LinProg lp;
  Support support;
};

inline MarginalFeasibility uniform_marginals_feasible(Support S, std::array<int, 3> dims) {
  S = canonical_support(std::move(S), dims);
  std::size_t n = S.size();
  std::size_t rows = dims[0] + dims[1] + dims[2];
  LinProg lp;
  lp.nvars = n;
  lp.A = Matrix<Rat>(rows, n);
  lp.b.assign(rows, Rat(0));
  lp.rel.assign(rows, 0);
  lp.c.assign(n, Rat(0));
  std::size_t r = 0;
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < dims[i]; ++a, ++r) {
      for (std::size_t s = 0; s < n; ++s)
        if (S[s][i] - 1 == a) lp.A.at(r, s) = 1;
      lp.b[r] = Rat(1, dims[i]);
    }

  auto sol = solve_lp(lp);
  MarginalFeasibility out;
  out.lp = lp;
  out.support = std::move(S);
  if (sol.status == LPSolution::Status::optimal) {
    out.feasible = true;
    out.witness = sol.x;
    auto m = marginals_exact(out.support, dims, out.witness);
    for (int i = 0; i < 3; ++i)
      for (int a = 0; a < dims[i]; ++a)
        if (m[i][a] != Rat(1, dims[i])) throw std::logic_error("marginal witness failed recheck");
  } else {
    out.feasible = false;
    out.farkas = sol.farkas;
    if (!verify_farkas(lp, out.farkas)) throw std::logic_error("farkas certificate failed recheck");
  }
  return out;
}

/*
 * max over xi in the weight domain of G_xi^{<theta,xi>}, with G_xi from the
 * dual route. The domain's three faces (max coordinate pinned at 1) are
 * swept on a coarse grid with cheap inner resolution, the best face point is
 * polished coordinate-wise, and the winner is re-evaluated at full inner
 * resolution. Rejects supports without a tightness witness.
 */
inline FunctionalResult field_quantum_functional(Support S, std::array<int, 3> dims,
                                                 const ThetaWeights& th, int xi_res = 6,
                                                 double tol = 1e-6) {
  S = canonical_support(std::move(S), dims);
  auto tight = find_tight_witness(S, dims);
  if (tight.status != TightStatus::found)
    throw input_error("field functional needs a tight support");

  auto score_at = [&](const std::array<double, 3>& xiv, int res) {
    Weighting xi(xiv);
    auto g = awsr_dual(S, dims, xi, tol, res);
    double dot = 0;
    for (int i = 0; i < 3; ++i) dot += th[i] * xiv[i];
    return std::make_pair(dot * g.log2_value, std::move(g));
  };

  std::array<double, 3> best_xi{1.0, 1.0, 1.0};
  double best_score = -1e300;
  std::set<std::array<long, 3>> seen;
  for (int face = 0; face < 3; ++face) {
    for (int a = 0; a <= xi_res; ++a)
      for (int b = 0; b <= xi_res; ++b) {
        std::array<double, 3> xiv{};
        xiv[face] = 1.0;
        xiv[(face + 1) % 3] = static_cast<double>(a) / xi_res;
        xiv[(face + 2) % 3] = static_cast<double>(b) / xi_res;
        std::array<long, 3> key{std::lround(xiv[0] * 720), std::lround(xiv[1] * 720),
                                std::lround(xiv[2] * 720)};
        if (!seen.insert(key).second) continue;
        auto [score, g] = score_at(xiv, 16);
        if (score > best_score + 1e-15) {
          best_score = score;
          best_xi = xiv;
        }
      }
  }

  // coordinate polish on the winning face (keep its pinned coordinate at 1)
  {
    int face = 0;
    for (int i = 1; i < 3; ++i)
      if (best_xi[i] > best_xi[face]) face = i;
    const double inv_phi = 0.6180339887498949;
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < 3; ++i) {
        if (i == face) continue;
        double a = 0, b = 1;
        auto val = [&](double x) {
          std::array<double, 3> xiv = best_xi;
          xiv[i] = x;
          return score_at(xiv, 16).first;
        };
        double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
        double f1 = val(x1), f2 = val(x2);
        for (int it = 0; it < 20; ++it) {
          if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = val(x2);
          } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = val(x1);
          }
        }
        double xm = 0.5 * (a + b);
        double fm = val(xm);
        if (fm > best_score + 1e-15) {
          best_score = fm;
          best_xi[i] = xm;
        }
      }
  }

  auto [final_score, final_g] = score_at(best_xi, 64);
  double reported = std::max(final_score, best_score);

  FunctionalResult out;
  out.support = std::move(S);
  out.witness = final_g.witness;
  out.log2_value = reported;
  out.value = std::exp2(reported);
  out.certified_gap = final_g.certified_gap + std::abs(reported - final_score);
  return out;
}

}  // namespace tenspec
