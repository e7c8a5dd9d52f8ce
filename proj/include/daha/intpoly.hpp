#pragma once

// Dense univariate polynomial helpers over mpz/mpq, little-endian coefficient
// order. These back the cyclotomic fields, the rational-function domain and
// the mod-p^m machinery; nothing here knows about DAHA.

#include <gmpxx.h>

#include <vector>

#include "daha/errors.hpp"

namespace daha {

using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

template <class P>
inline void poly_trim(P& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

template <class P>
inline int poly_deg(const P& f) {
  return static_cast<int>(f.size()) - 1;  // -1 for the zero polynomial
}

template <class P>
inline P poly_add(const P& a, const P& b) {
  P r = a;
  if (b.size() > r.size()) r.resize(b.size());
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  poly_trim(r);
  return r;
}

template <class P>
inline P poly_sub(const P& a, const P& b) {
  P r = a;
  if (b.size() > r.size()) r.resize(b.size());
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  poly_trim(r);
  return r;
}

template <class P>
inline P poly_mul(const P& a, const P& b) {
  if (a.empty() || b.empty()) return P{};
  P r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  poly_trim(r);
  return r;
}

template <class P, class C>
inline P poly_scale(const P& a, const C& c) {
  P r = a;
  for (auto& x : r) x *= c;
  poly_trim(r);
  return r;
}

// Exact division of integer polynomials; aborts if not exact.
inline ZPoly poly_divexact(const ZPoly& a, const ZPoly& b) {
  check(!b.empty(), "poly_divexact by zero");
  ZPoly rem = a, q;
  if (a.size() < b.size()) {
    check(a.empty(), "poly_divexact: not divisible");
    return {};
  }
  q.assign(a.size() - b.size() + 1, 0);
  for (int i = static_cast<int>(rem.size()) - 1; i >= poly_deg(b); --i) {
    if (rem[i] == 0) continue;
    mpz_class c = rem[i] / b.back();
    check(c * b.back() == rem[i], "poly_divexact: leading division not exact");
    q[i - poly_deg(b)] = c;
    for (size_t j = 0; j < b.size(); ++j) rem[i - poly_deg(b) + j] -= c * b[j];
  }
  poly_trim(rem);
  check(rem.empty(), "poly_divexact: nonzero remainder");
  return q;
}

inline mpz_class poly_content(const ZPoly& f) {
  mpz_class g = 0;
  for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

inline ZPoly poly_primitive(const ZPoly& f) {
  if (f.empty()) return f;
  mpz_class g = poly_content(f);
  if (f.back() < 0) g = -g;
  ZPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = f[i] / g;
  return r;
}

// gcd over Z[x] via the primitive PRS; result primitive with positive lead.
inline ZPoly poly_gcd(ZPoly a, ZPoly b) {
  poly_trim(a);
  poly_trim(b);
  if (a.empty()) return b.empty() ? b : poly_primitive(b);
  if (b.empty()) return poly_primitive(a);
  mpz_class ca = poly_content(a), cb = poly_content(b), cg;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  a = poly_primitive(a);
  b = poly_primitive(b);
  while (!b.empty()) {
    // pseudo-remainder of a by b
    ZPoly r = a;
    int db = poly_deg(b);
    while (poly_deg(r) >= db) {
      int k = poly_deg(r) - db;
      mpz_class lead = r.back();
      for (auto& c : r) c *= b.back();
      for (int j = 0; j <= db; ++j) r[k + j] -= lead * b[j];
      poly_trim(r);
      if (r.empty()) break;
    }
    a = b;
    b = r.empty() ? r : poly_primitive(r);
  }
  ZPoly g = poly_primitive(a);
  if (cg > 1)
    for (auto& c : g) c *= cg;  // Gauss: gcd = gcd(contents) * gcd(primitive parts)
  return g;
}

inline mpq_class poly_eval(const ZPoly& f, const mpq_class& x) {
  mpq_class r = 0;
  for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

// x^n - 1 as an integer polynomial.
inline ZPoly poly_xn_minus_1(long n) {
  ZPoly f(n + 1);
  f[0] = -1;
  f[n] = 1;
  return f;
}

}  // namespace daha
