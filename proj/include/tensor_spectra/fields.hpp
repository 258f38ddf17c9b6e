#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace tenspec {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_zero(const Rat& x) { return x == 0; }
inline bool is_zero(const Int& x) { return x == 0; }

/// Thrown on malformed user input (files, CLI values, bad parameters).
struct input_error : std::runtime_error {
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when a work budget would be exceeded.
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Prime field element. The modulus travels with the value; a default
// constructed element (p == 0) acts as a context-free zero so that generic
// containers and elimination code can hold zeros without knowing p.
struct GFp {
  std::uint64_t v = 0;
  std::uint64_t p = 0;

  GFp() = default;
  GFp(std::int64_t value, std::uint64_t prime) : p(prime) {
    if (prime < 2 || prime >= (1ull << 31))
      throw input_error("gf modulus must be a prime in [2, 2^31)");
    std::int64_t m = value % static_cast<std::int64_t>(prime);
    if (m < 0) m += static_cast<std::int64_t>(prime);
    v = static_cast<std::uint64_t>(m);
  }

  bool zero() const { return v == 0; }

  static std::uint64_t merge_mod(const GFp& a, const GFp& b) {
    if (a.p == 0) return b.p;
    if (b.p == 0) return a.p;
    if (a.p != b.p) throw input_error("gf modulus mismatch");
    return a.p;
  }

  friend GFp operator+(const GFp& a, const GFp& b) {
    std::uint64_t m = merge_mod(a, b);
    if (m == 0) return GFp{};
    GFp r;
    r.p = m;
    r.v = a.v + b.v;
    if (r.v >= m) r.v -= m;
    return r;
  }
  friend GFp operator-(const GFp& a, const GFp& b) {
    std::uint64_t m = merge_mod(a, b);
    if (m == 0) return GFp{};
    GFp r;
    r.p = m;
    r.v = (a.v + m - b.v) % m;
    return r;
  }
  friend GFp operator*(const GFp& a, const GFp& b) {
    std::uint64_t m = merge_mod(a, b);
    if (m == 0) return GFp{};
    if (a.p == 0 || b.p == 0) {
      GFp r;
      r.p = m;
      r.v = 0;
      return r;
    }
    GFp r;
    r.p = m;
    r.v = (a.v * b.v) % m;
    return r;
  }
  GFp inverse() const {
    if (p == 0 || v == 0) throw std::domain_error("gf inverse of zero");
    // extended Euclid on (v, p)
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(v);
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    GFp out;
    out.p = p;
    out.v = static_cast<std::uint64_t>(t);
    return out;
  }
  friend GFp operator/(const GFp& a, const GFp& b) { return a * b.inverse(); }
  friend bool operator==(const GFp& a, const GFp& b) {
    merge_mod(a, b);
    return a.v == b.v;
  }
};

inline bool is_zero(const GFp& x) { return x.zero(); }

namespace detail {

using Poly = std::vector<std::uint64_t>;  // coefficients mod p, low degree first

inline void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, std::uint64_t p) {
  Poly prod(a.size() + b.size() - (a.empty() || b.empty() ? 0 : 1), 0);
  if (a.empty() || b.empty()) return {};
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  // reduce mod the monic modulus
  std::size_t e = mod.size() - 1;
  for (std::size_t d = prod.size(); d-- > e;) {
    std::uint64_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (std::size_t j = 0; j < e; ++j) {
      std::uint64_t sub = (c * mod[j]) % p;
      prod[d - e + j] = (prod[d - e + j] + p - sub) % p;
    }
  }
  prod.resize(e);
  poly_trim(prod);
  return prod;
}

inline Poly poly_powmod(Poly base, std::uint64_t exp, const Poly& mod, std::uint64_t p) {
  Poly result{1};
  while (exp > 0) {
    if (exp & 1) result = poly_mulmod(result, base, mod, p);
    base = poly_mulmod(base, base, mod, p);
    exp >>= 1;
  }
  return result;
}

inline Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    // a mod b with b made monic on the fly
    std::uint64_t lead = b.back();
    GFp inv_lead(static_cast<std::int64_t>(lead), p);
    std::uint64_t il = inv_lead.inverse().v;
    while (a.size() >= b.size() && !a.empty()) {
      std::uint64_t c = (a.back() * il) % p;
      std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) {
        std::uint64_t sub = (c * b[j]) % p;
        a[shift + j] = (a[shift + j] + p - sub) % p;
      }
      poly_trim(a);
    }
    std::swap(a, b);
  }
  return a;
}

}  // namespace detail

/*
 * Extension field GF(p^e), used only to enlarge the substitution domain for
 * polynomial identity testing when the base prime is too small. The modulus
 * is the lexicographically first monic irreducible of degree e; irreducibility
 * is checked with the Frobenius criterion (x^{p^e} = x mod f, and
 * gcd(x^{p^{e/l}} - x, f) = 1 for every prime l dividing e).
 */
class GFpExtField {
 public:
  std::uint64_t p;
  unsigned e;
  detail::Poly modulus;  // monic, degree e

  static std::shared_ptr<const GFpExtField> make(std::uint64_t p, unsigned e) {
    auto f = std::make_shared<GFpExtField>();
    f->p = p;
    f->e = e;
    if (e == 1) {
      f->modulus = {0, 1};
      return f;
    }
    detail::Poly cand(e + 1, 0);
    cand[e] = 1;
    // counter over the low e coefficients, lexicographic from constant term
    while (true) {
      if (is_irreducible(cand, p, e)) break;
      unsigned i = 0;
      while (i < e && ++cand[i] == p) cand[i++] = 0;
      if (i == e) throw std::logic_error("no irreducible polynomial found");
    }
    f->modulus = cand;
    return f;
  }

  static bool is_irreducible(const detail::Poly& f, std::uint64_t p, unsigned e) {
    using namespace detail;
    Poly x{0, 1};
    // frob[i] = x^{p^i} mod f, built by repeated powering by p
    Poly frob = x;
    std::vector<Poly> stages(e + 1);
    stages[0] = x;
    for (unsigned i = 1; i <= e; ++i) {
      frob = poly_powmod(frob, p, f, p);
      stages[i] = frob;
    }
    Poly diff = stages[e];
    // x^{p^e} - x must vanish mod f
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    poly_trim(diff);
    if (!diff.empty()) return false;
    for (unsigned l = 2; l <= e; ++l) {
      if (e % l != 0) continue;
      bool lprime = true;
      for (unsigned d = 2; d * d <= l; ++d)
        if (l % d == 0) lprime = false;
      if (!lprime) continue;
      Poly g = stages[e / l];
      if (g.size() < 2) g.resize(2, 0);
      g[1] = (g[1] + p - 1) % p;
      poly_trim(g);
      Poly gc = poly_gcd(f, g, p);
      if (gc.size() != 1) return false;
    }
    return true;
  }
};

/// Element of GF(p^e); a default constructed element is the shared zero.
struct GFpExt {
  std::shared_ptr<const GFpExtField> fld;
  detail::Poly c;  // reduced, degree < e

  GFpExt() = default;
  GFpExt(std::shared_ptr<const GFpExtField> f, detail::Poly coeffs) : fld(std::move(f)), c(std::move(coeffs)) {
    detail::poly_trim(c);
  }
  static GFpExt from_base(std::shared_ptr<const GFpExtField> f, std::uint64_t v) {
    detail::Poly cc;
    if (v % f->p != 0) cc = {v % f->p};
    return GFpExt(std::move(f), std::move(cc));
  }

  bool zero() const { return c.empty(); }

  static const std::shared_ptr<const GFpExtField>& merge(const GFpExt& a, const GFpExt& b) {
    if (!a.fld) return b.fld;
    if (!b.fld) return a.fld;
    if (a.fld->p != b.fld->p || a.fld->e != b.fld->e) throw input_error("extension field mismatch");
    return a.fld;
  }

  friend GFpExt operator+(const GFpExt& a, const GFpExt& b) {
    auto f = merge(a, b);
    if (!f) return {};
    detail::Poly r(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] = (r[i] + b.c[i]) % f->p;
    detail::poly_trim(r);
    return GFpExt(f, std::move(r));
  }
  friend GFpExt operator-(const GFpExt& a, const GFpExt& b) {
    auto f = merge(a, b);
    if (!f) return {};
    detail::Poly r(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] = (r[i] + f->p - b.c[i]) % f->p;
    detail::poly_trim(r);
    return GFpExt(f, std::move(r));
  }
  friend GFpExt operator*(const GFpExt& a, const GFpExt& b) {
    auto f = merge(a, b);
    if (!f || a.zero() || b.zero()) return f ? GFpExt(f, {}) : GFpExt{};
    return GFpExt(f, detail::poly_mulmod(a.c, b.c, f->modulus, f->p));
  }
  GFpExt inverse() const {
    if (!fld || zero()) throw std::domain_error("extension field inverse of zero");
    // extended Euclid over GF(p)[x]
    using detail::Poly;
    std::uint64_t p = fld->p;
    Poly r0 = fld->modulus, r1 = c;
    Poly t0, t1{1};
    while (!r1.empty()) {
      // divide r0 by r1
      Poly q;
      Poly rem = r0;
      std::uint64_t il = GFp(static_cast<std::int64_t>(r1.back()), p).inverse().v;
      if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, 0);
      while (rem.size() >= r1.size() && !rem.empty()) {
        std::uint64_t coef = (rem.back() * il) % p;
        std::size_t shift = rem.size() - r1.size();
        q[shift] = coef;
        for (std::size_t j = 0; j < r1.size(); ++j) {
          std::uint64_t sub = (coef * r1[j]) % p;
          rem[shift + j] = (rem[shift + j] + p - sub) % p;
        }
        detail::poly_trim(rem);
      }
      // t2 = t0 - q*t1
      Poly qt(q.size() + t1.size(), 0);
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0) continue;
        for (std::size_t j = 0; j < t1.size(); ++j) qt[i + j] = (qt[i + j] + q[i] * t1[j]) % p;
      }
      Poly t2(std::max(t0.size(), qt.size()), 0);
      for (std::size_t i = 0; i < t0.size(); ++i) t2[i] = t0[i];
      for (std::size_t i = 0; i < qt.size(); ++i) t2[i] = (t2[i] + p - qt[i]) % p;
      detail::poly_trim(t2);
      r0 = r1;
      r1 = rem;
      t0 = t1;
      t1 = t2;
    }
    // r0 is the gcd, a nonzero constant; scale t0 by its inverse
    std::uint64_t ig = GFp(static_cast<std::int64_t>(r0[0]), p).inverse().v;
    for (auto& x : t0) x = (x * ig) % p;
    detail::poly_trim(t0);
    return GFpExt(fld, std::move(t0));
  }
  friend GFpExt operator/(const GFpExt& a, const GFpExt& b) { return a * b.inverse(); }
};

inline bool is_zero(const GFpExt& x) { return x.zero(); }

/// Parse "a/b", integer, or decimal text into an exact rational.
inline Rat parse_rational(const std::string& text) {
  if (text.empty()) throw input_error("empty number");
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      Int n(text.substr(0, slash));
      Int d(text.substr(slash + 1));
      if (d == 0) throw input_error("zero denominator in '" + text + "'");
      return Rat(n, d);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rat(Int(text), 1);
    std::string head = text.substr(0, dot), tail = text.substr(dot + 1);
    if (head.empty() || head == "-" || head == "+") head += "0";
    bool neg = head[0] == '-';
    Int scale = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
    Int whole(head);
    Int frac = tail.empty() ? Int(0) : Int(tail);
    Int total = whole * scale + (neg ? -frac : frac);
    return Rat(total, scale);
  } catch (const std::exception& e) {
    throw input_error("cannot parse number '" + text + "'");
  }
}

}  // namespace tenspec
