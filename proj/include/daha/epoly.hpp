#pragma once

// Nonsymmetric Macdonald polynomials e_n, their normalized cousins eps_n,
// the closed-form norms and evaluations, and the symmetric p_n reached as
// s-invariant combinations. e_n is computed by solving the triangular
// eigenvector problem for the rescaled operator t^{-1/2} Y on the filtration
// span {X^{-|n|}, ..., X^{|n|}}, ordered by increasing |n~| (0 counts as
// negative); coefficients involve only q, t.

#include <mutex>
#include <string>
#include <unordered_map>

#include "daha/laurent.hpp"

namespace daha {

namespace detail {

// order position in the filtration: 0, 1, -1, 2, -2, ...
inline long filtration_pos(long m) { return m > 0 ? 2 * m - 1 : -2 * m; }
inline long filtration_member(long pos) { return pos % 2 ? (pos + 1) / 2 : -pos / 2; }

// eigenvalue of t^{-1/2} Y on e_m: q^{|m|/2} for m <= 0, t^{-1} q^{-m/2} for m > 0
template <class K>
K yhat_eigenvalue(long m, const ParamContext<K>& ctx) {
  if (m > 0) return ctx.t().inv() * ctx.q_pow_half(-m);
  return ctx.q_pow_half(-m);
}

inline std::string yhat_factor_name(long m, long n) {
  // the vanishing spectral gap, reported in rescaled q,t terms
  auto lam = [](long j) -> std::string {
    if (j > 0) return "t^-1 q^(-" + std::to_string(j) + "/2)";
    return "q^(" + std::to_string(-j) + "/2)";
  };
  return "spectral factor " + lam(m) + " - " + lam(n) + " vanishes";
}

}  // namespace detail

// e_n = X^n + lower terms, Y e_n = (t^{1/2} q^{|n|/2})^{-sign n} e_n (0 negative).
template <class K>
LaurentPoly<K> e_poly_uncached(long n, const ParamContext<K>& ctx) {
  using detail::filtration_member;
  using detail::filtration_pos;
  const K lam_n = detail::yhat_eigenvalue(n, ctx);
  LaurentPoly<K> e = LaurentPoly<K>::monomial(ctx.dom, n, ctx.one());
  LaurentPoly<K> resid = op_Y_rescaled(e, ctx) - lam_n * e;
  const long top = filtration_pos(n);
  for (long pos = top - 1; pos >= 0; --pos) {
    long m = filtration_member(pos);
    K coef = resid.coeff(m);
    if (coef.is_zero()) continue;
    K den = detail::yhat_eigenvalue(m, ctx) - lam_n;
    require(!den.is_zero(), Err::Denominator,
            "e_" + std::to_string(n) + " does not exist: " + detail::yhat_factor_name(m, n));
    K c = -coef * den.inv();
    LaurentPoly<K> xm = LaurentPoly<K>::monomial(ctx.dom, m, c);
    e += xm;
    resid += op_Y_rescaled(xm, ctx) - lam_n * xm;
  }
  check(resid.is_zero(), "triangular solve for e_n left a residual");
  return e;
}

namespace detail {
template <class K>
LaurentPoly<K> e_poly_cached(long n, const ParamContext<K>& ctx) {
  static std::unordered_map<std::string, LaurentPoly<K>> cache;
  static std::mutex mu;
  std::string key = ctx.fingerprint() + "#" + std::to_string(n);
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  LaurentPoly<K> e = e_poly_uncached(n, ctx);
  std::lock_guard<std::mutex> lk(mu);
  cache.emplace(std::move(key), e);
  return e;
}
}  // namespace detail

template <class K>
LaurentPoly<K> e_poly(long n, const ParamContext<K>& ctx) {
  return detail::e_poly_cached(n, ctx);
}

// |n~|: |n|+1 for n <= 0, |n| for n > 0.
inline long abs_ntilde(long n) { return n > 0 ? n : -n + 1; }

// <e_n, e_n> = prod_{0<j<|n~|} (1-q^j)(1-q^j t^2) / (1-q^j t)^2
template <class K>
K e_norm(long n, const ParamContext<K>& ctx) {
  const K one = ctx.one(), t = ctx.t();
  K out = one;
  for (long j = 1; j < abs_ntilde(n); ++j) {
    K qj = ctx.q().pow(j);
    K den = one - qj * t;
    require(!den.is_zero(), Err::Denominator,
            "norm factor 1 - q^" + std::to_string(j) + " t vanishes");
    K deninv = den.inv();
    out *= (one - qj) * (one - qj * t * t) * deninv * deninv;
  }
  return out;
}

// e_n(t^{-1/2}) = t^{-|n|/2} prod_{0<j<|n~|} (1-q^j t^2)/(1-q^j t)
template <class K>
K e_eval(long n, const ParamContext<K>& ctx) {
  const K one = ctx.one(), t = ctx.t();
  K out = ctx.thalf_pow(-(n > 0 ? n : -n));
  for (long j = 1; j < abs_ntilde(n); ++j) {
    K qj = ctx.q().pow(j);
    K den = one - qj * t;
    require(!den.is_zero(), Err::Denominator,
            "evaluation factor 1 - q^" + std::to_string(j) + " t vanishes");
    out *= (one - qj * t * t) * den.inv();
  }
  return out;
}

// eps_n = e_n / e_n(t^{-1/2})
template <class K>
LaurentPoly<K> eps_poly(long n, const ParamContext<K>& ctx) {
  K v = e_eval(n, ctx);
  require(!v.is_zero(), Err::Denominator, "e_" + std::to_string(n) + "(t^{-1/2}) vanishes");
  return v.inv() * e_poly(n, ctx);
}

// <eps_n, eps_n> = <e_n, e_n> / (e_n(t^{-1/2}) e_n(t^{-1/2})^*)
template <class K>
K eps_norm(long n, const ParamContext<K>& ctx) {
  K v = e_eval(n, ctx);
  require(!v.is_zero(), Err::Denominator, "e_" + std::to_string(n) + "(t^{-1/2}) vanishes");
  return e_norm(n, ctx) * (v * v.star()).inv();
}

// Symmetric (Rogers-Macdonald) polynomial: the s-invariant element of
// span{e_n, e_{-n}} with unit leading coefficient; p_0 = 1.
template <class K>
LaurentPoly<K> p_poly(long n, const ParamContext<K>& ctx) {
  check(n >= 0, "p_poly index must be nonnegative");
  if (n == 0) return LaurentPoly<K>::one(ctx.dom);
  LaurentPoly<K> en = e_poly(n, ctx), em = e_poly(-n, ctx);
  // f = e_n + c e_{-n} with s(f) = f; match the X^{-n} coefficient.
  // s(f) - f:  coefficient at X^{-n}: (en[n] + c em[n]) - (en[-n] + c em[-n])
  K num = en.coeff(n) - en.coeff(-n);  // en[n] = 1
  K den = em.coeff(-n) - em.coeff(n);
  require(!den.is_zero(), Err::Denominator, "symmetrization of e_" + std::to_string(n) + " fails");
  K c = num * den.inv();
  LaurentPoly<K> f = en + c * em;
  check(op_s(f) == f, "p_n symmetrization is not s-invariant");
  K lead = f.coeff(n);
  require(!lead.is_zero(), Err::Denominator, "p_" + std::to_string(n) + " loses its top term");
  return lead.inv() * f;
}

}  // namespace daha
