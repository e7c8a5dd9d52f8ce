#include "daha/modring.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>

namespace daha {

ZPoly pmod_normalize(ZPoly f, const mpz_class& p) {
  for (auto& c : f) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
  poly_trim(f);
  return f;
}

ZPoly pmod_mul(const ZPoly& a, const ZPoly& b, const mpz_class& p) {
  return pmod_normalize(poly_mul(a, b), p);
}

static mpz_class inv_mod(const mpz_class& a, const mpz_class& p) {
  mpz_class r;
  int ok = mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  check(ok != 0, "non-invertible element mod p");
  return r;
}

ZPoly pmod_rem(ZPoly a, const ZPoly& b, const mpz_class& p) {
  a = pmod_normalize(std::move(a), p);
  ZPoly bb = pmod_normalize(b, p);
  check(!bb.empty(), "pmod_rem by zero");
  mpz_class linv = inv_mod(bb.back(), p);
  int db = poly_deg(bb);
  while (poly_deg(a) >= db) {
    int k = poly_deg(a) - db;
    mpz_class c = (a.back() * linv) % p;
    for (int j = 0; j <= db; ++j) {
      a[k + j] -= c * bb[j];
      mpz_fdiv_r(a[k + j].get_mpz_t(), a[k + j].get_mpz_t(), p.get_mpz_t());
    }
    poly_trim(a);
  }
  return a;
}

ZPoly pmod_gcd(ZPoly a, ZPoly b, const mpz_class& p) {
  a = pmod_normalize(std::move(a), p);
  b = pmod_normalize(std::move(b), p);
  while (!b.empty()) {
    ZPoly r = pmod_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    mpz_class linv = inv_mod(a.back(), p);
    for (auto& c : a) c = (c * linv) % p;
  }
  return a;
}

ZPoly pmod_powmod(const ZPoly& a, const mpz_class& e, const ZPoly& mod, const mpz_class& p) {
  ZPoly base = pmod_rem(a, mod, p), r{mpz_class(1)};
  mpz_class k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = pmod_rem(pmod_mul(r, base, p), mod, p);
    base = pmod_rem(pmod_mul(base, base, p), mod, p);
    k >>= 1;
  }
  return r;
}

std::pair<ZPoly, ZPoly> pmod_bezout(const ZPoly& a, const ZPoly& b, const mpz_class& p) {
  ZPoly r0 = pmod_normalize(a, p), r1 = pmod_normalize(b, p);
  ZPoly s0{mpz_class(1)}, s1{}, t0{}, t1{mpz_class(1)};
  while (!r1.empty()) {
    // quotient of r0 by r1
    ZPoly q, rem = r0;
    mpz_class linv = inv_mod(r1.back(), p);
    int d1 = poly_deg(r1);
    while (poly_deg(rem) >= d1) {
      int k = poly_deg(rem) - d1;
      mpz_class c = (rem.back() * linv) % p;
      if ((int)q.size() < k + 1) q.resize(k + 1);
      q[k] = (q[k] + c) % p;
      for (int j = 0; j <= d1; ++j) {
        rem[k + j] -= c * r1[j];
        mpz_fdiv_r(rem[k + j].get_mpz_t(), rem[k + j].get_mpz_t(), p.get_mpz_t());
      }
      poly_trim(rem);
    }
    ZPoly s2 = pmod_normalize(poly_sub(s0, poly_mul(q, s1)), p);
    ZPoly t2 = pmod_normalize(poly_sub(t0, poly_mul(q, t1)), p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  check(poly_deg(r0) == 0, "pmod_bezout: inputs not coprime");
  mpz_class linv = inv_mod(r0[0], p);
  for (auto& c : s0) c = (c * linv) % p;
  for (auto& c : t0) c = (c * linv) % p;
  return {s0, t0};
}

ZPoly poly_divexact_modp(const ZPoly& f, const ZPoly& g, const mpz_class& p);
static int m_bits(int m) {
  int b = 0;
  while ((1 << b) < m) ++b;
  return b;
}

// Equal-degree splitting: every irreducible factor of Phi_n mod p has degree
// d = ord_n(p), so Cantor-Zassenhaus with exponent (p^d - 1)/2 applies.
static void equal_degree_split(const ZPoly& f, long d, const mpz_class& p, std::mt19937_64& rng,
                               std::vector<ZPoly>& out) {
  if (poly_deg(f) == d) {
    out.push_back(f);
    return;
  }
  mpz_class e;
  mpz_pow_ui(e.get_mpz_t(), p.get_mpz_t(), d);
  e = (e - 1) / 2;
  while (true) {
    ZPoly r(poly_deg(f));
    for (auto& c : r) {
      mpz_class v(static_cast<unsigned long>(rng() % 0xffffffffULL));
      c = v % p;
    }
    poly_trim(r);
    if (r.empty()) continue;
    ZPoly w = pmod_powmod(r, e, f, p);
    if (!w.empty()) w[0] = (w[0] - 1) % p;
    if (w.empty()) continue;
    mpz_fdiv_r(w[0].get_mpz_t(), w[0].get_mpz_t(), p.get_mpz_t());
    poly_trim(w);
    ZPoly g = pmod_gcd(f, w, p);
    if (poly_deg(g) <= 0 || poly_deg(g) == poly_deg(f)) continue;
    equal_degree_split(g, d, p, rng, out);
    equal_degree_split(poly_divexact_modp(f, g, p), d, p, rng, out);
    return;
  }
}

// exact division over F_p (f known divisible by g)
ZPoly poly_divexact_modp(const ZPoly& f, const ZPoly& g, const mpz_class& p) {
  ZPoly rem = pmod_normalize(f, p), q;
  ZPoly gg = pmod_normalize(g, p);
  mpz_class linv = inv_mod(gg.back(), p);
  int dg = poly_deg(gg);
  q.assign(std::max(0, poly_deg(rem) - dg + 1), 0);
  while (poly_deg(rem) >= dg) {
    int k = poly_deg(rem) - dg;
    mpz_class c = (rem.back() * linv) % p;
    q[k] = c;
    for (int j = 0; j <= dg; ++j) {
      rem[k + j] -= c * gg[j];
      mpz_fdiv_r(rem[k + j].get_mpz_t(), rem[k + j].get_mpz_t(), p.get_mpz_t());
    }
    poly_trim(rem);
  }
  check(rem.empty(), "poly_divexact_modp: not divisible");
  poly_trim(q);
  return q;
}

std::vector<ZPoly> cyclo_factor_mod_p(long n, const mpz_class& p, uint64_t seed) {
  require(p > 2 || n <= 2, Err::BadPrime, "equal-degree splitting requires odd p");
  long pn = static_cast<long>(mpz_fdiv_ui(p.get_mpz_t(), n));
  require(gcd_long(pn, n) == 1, Err::BadPrime, "p must be coprime to the conductor");
  ZPoly f = pmod_normalize(cyclotomic_poly(n), p);
  long d = ord_mod(pn, n);
  std::vector<ZPoly> out;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  equal_degree_split(f, d, p, rng, out);
  std::sort(out.begin(), out.end(), [](const ZPoly& a, const ZPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  });
  return out;
}

ZPoly hensel_lift_factor(const ZPoly& f, const ZPoly& g0, const mpz_class& p, int m) {
  ZPoly g = pmod_normalize(g0, p);
  if (m == 1) return g;
  ZPoly h = poly_divexact_modp(f, g, p);
  auto [s, t] = pmod_bezout(g, h, p);  // s*g + t*h = 1 mod p
  mpz_class pk = p;
  for (int k = 1; k < m; ++k) {
    mpz_class pk1 = pk * p;
    // e = (f - g*h) / p^k mod p
    ZPoly e = poly_sub(f, poly_mul(g, h));
    for (auto& c : e) {
      check(c % pk == 0, "hensel: defect not divisible by p^k");
      c /= pk;
    }
    e = pmod_normalize(std::move(e), p);
    // dg = (t*e) mod g ; dh = s*e + ((t*e) div g)*h
    ZPoly te = pmod_normalize(poly_mul(t, e), p);
    ZPoly dg = pmod_rem(te, g, p);
    ZPoly qq = poly_divexact_modp(poly_sub(te, dg), g, p);
    ZPoly dh = pmod_normalize(poly_add(poly_mul(s, e), poly_mul(qq, h)), p);
    g = poly_add(g, poly_scale(dg, pk));
    h = poly_add(h, poly_scale(dh, pk));
    for (auto& c : g) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), pk1.get_mpz_t());
    for (auto& c : h) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), pk1.get_mpz_t());
    poly_trim(g);
    poly_trim(h);
    pk = pk1;
  }
  return g;
}

ModRing::ModRing(long n, mpz_class p, int m, int ideal_index, ZPoly F)
    : n_(n), p_(std::move(p)), m_(m), ideal_index_(ideal_index), F_(std::move(F)) {
  mpz_pow_ui(pm_.get_mpz_t(), p_.get_mpz_t(), m_);
  const long d = poly_deg(F_);
  zeta_pow_.assign(n_, ZPoly{});
  ZPoly cur(d, 0);
  cur[0] = 1;
  for (long j = 0; j < n_; ++j) {
    zeta_pow_[j] = cur;
    // multiply by x and reduce mod (F, p^m); F is monic
    ZPoly nxt(d, 0);
    mpz_class top = cur[d - 1];
    for (long i = d - 1; i > 0; --i) nxt[i] = cur[i - 1];
    nxt[0] = 0;
    if (top != 0)
      for (long i = 0; i < d; ++i) nxt[i] -= top * F_[i];
    for (auto& c : nxt) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), pm_.get_mpz_t());
    cur = std::move(nxt);
  }
  // does F(zeta^{-1}) vanish in the ring?
  const ZPoly& zinv = zeta_pow_[(n_ - 1) % n_];
  std::vector<mpz_class> val(d, 0), powv(d, 0);
  powv[0] = 1;
  auto mulmod = [&](const std::vector<mpz_class>& a, const ZPoly& b) {
    std::vector<mpz_class> conv(2 * d - 1);
    for (long i = 0; i < d; ++i)
      for (long jj = 0; jj < d; ++jj) conv[i + jj] += a[i] * b[jj];
    for (long i = 2 * d - 2; i >= d; --i) {
      if (conv[i] == 0) continue;
      for (long jj = 0; jj < d; ++jj) conv[i - d + jj] -= conv[i] * F_[jj];
      conv[i] = 0;
    }
    std::vector<mpz_class> r(d);
    for (long i = 0; i < d; ++i) mpz_fdiv_r(r[i].get_mpz_t(), conv[i].get_mpz_t(), pm_.get_mpz_t());
    return r;
  };
  for (long i = 0; i <= d; ++i) {
    for (long jj = 0; jj < d; ++jj) val[jj] = (val[jj] + F_[i] * powv[jj]) % pm_;
    if (i < d) powv = mulmod(powv, zinv);
  }
  star_defined_ = true;
  for (const auto& c : val)
    if (c != 0) star_defined_ = false;
}

ModRingPtr ModRing::make(long n, const mpz_class& p, int m, int ideal_index, uint64_t seed) {
  require(m >= 1, Err::BadPrime, "modulus exponent must be positive");
  require(mpz_probab_prime_p(p.get_mpz_t(), 30) != 0, Err::BadPrime, "p must be prime");
  require(gcd_long(static_cast<long>(mpz_fdiv_ui(p.get_mpz_t(), n)), n) == 1, Err::BadPrime,
          "gcd(p, conductor) must be 1");
  ZPoly F;
  if (ideal_index < 0) {
    mpz_class pm;
    mpz_pow_ui(pm.get_mpz_t(), p.get_mpz_t(), m);
    F = cyclotomic_poly(n);
    for (auto& c : F) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), pm.get_mpz_t());
  } else {
    auto factors = cyclo_factor_mod_p(n, p, seed);
    require(ideal_index < (int)factors.size(), Err::BadPrime, "ideal index out of range");
    F = hensel_lift_factor(cyclotomic_poly(n), factors[ideal_index], p, m);
  }
  return ModRingPtr(new ModRing(n, p, m, ideal_index, std::move(F)));
}

ModScalar operator*(const ModScalar& a, const ModScalar& b) {
  a.same_ring(b);
  const long d = a.r_->degree();
  const mpz_class& pm = a.r_->pm();
  std::vector<mpz_class> conv(2 * d - 1);
  for (long i = 0; i < d; ++i) {
    if (a.c_[i] == 0) continue;
    for (long j = 0; j < d; ++j) {
      if (b.c_[j] == 0) continue;
      conv[i + j] += a.c_[i] * b.c_[j];
    }
  }
  // reduce by monic F
  const ZPoly& F = a.r_->modulus_poly();
  for (long i = 2 * d - 2; i >= d; --i) {
    if (conv[i] == 0) continue;
    mpz_class top = conv[i];
    conv[i] = 0;
    for (long j = 0; j < d; ++j) conv[i - d + j] -= top * F[j];
  }
  ModScalar r(a.r_);
  for (long i = 0; i < d; ++i) mpz_fdiv_r(r.c_[i].get_mpz_t(), conv[i].get_mpz_t(), pm.get_mpz_t());
  return r;
}

bool ModScalar::is_unit() const {
  // unit iff image mod (p, F mod p) shares no factor with F mod p
  ZPoly v(c_.begin(), c_.end());
  v = pmod_normalize(std::move(v), r_->p());
  if (v.empty()) return false;
  ZPoly F = pmod_normalize(r_->modulus_poly(), r_->p());
  return poly_deg(pmod_gcd(F, v, r_->p())) == 0;
}

ModScalar ModScalar::inv() const {
  require(is_unit(), Err::Domain, "non-unit in Z[zeta]/p^m");
  // Bezout mod p, then Newton-lift the inverse to mod p^m.
  ZPoly v(c_.begin(), c_.end());
  ZPoly F = r_->modulus_poly();
  auto [s, t] = pmod_bezout(pmod_normalize(v, r_->p()), pmod_normalize(F, r_->p()), r_->p());
  ModScalar y(r_);
  for (size_t i = 0; i < s.size() && i < y.c_.size(); ++i) y.c_[i] = s[i];
  ModScalar two(r_, 2);
  // y <- y(2 - x y): doubles correct p-adic digits each round
  for (int it = 0; it < 1 + m_bits(r_->m()); ++it) y = y * (two - (*this) * y);
  check(((*this) * y) == ModScalar::one(r_), "mod inverse lift failed");
  return y;
}

ModScalar ModScalar::star() const {
  // zeta -> zeta^{-1} descends to the quotient only when the substitution
  // fixes the chosen ideal, i.e. F(zeta^{-1}) = 0 in the ring. Always true
  // for the untagged ring Z[zeta_n]/(p^m).
  require(r_->star_defined(), Err::Domain,
          "star does not stabilize the chosen prime ideal");
  ModScalar r(r_);
  for (long i = 0; i < r_->degree(); ++i) {
    if (c_[i] == 0) continue;
    const ZPoly& row = r_->zeta_power(((r_->conductor() - 1) * i) % r_->conductor());
    for (size_t j = 0; j < row.size(); ++j)
      r.c_[j] = (r.c_[j] + c_[i] * row[j]) % r_->pm();
  }
  return r;
}

ModScalar ModScalar::pow(long e) const {
  ModScalar base = *this, r = ModScalar::one(r_);
  if (e < 0) {
    base = base.inv();
    e = -e;
  }
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

ModScalar reduce_mod(const CycloScalar& x, const ModRingPtr& ring) {
  require(x.conductor() == ring->conductor(), Err::Domain,
          "conductor mismatch in reduction");
  ModScalar r(ring);
  std::vector<mpz_class> acc(ring->degree());
  for (long i = 0; i < x.field()->degree(); ++i) {
    const mpq_class& q = x.coeffs()[i];
    if (q == 0) continue;
    mpz_class den = q.get_den();
    require(mpz_divisible_p(den.get_mpz_t(), ring->p().get_mpz_t()) == 0, Err::Denominator,
            "coefficient denominator divisible by p");
    mpz_class deninv;
    int ok = mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), ring->pm().get_mpz_t());
    check(ok != 0, "denominator inversion mod p^m failed");
    mpz_class v = (q.get_num() * deninv) % ring->pm();
    const ZPoly& row = ring->zeta_power(i);
    for (size_t j = 0; j < row.size(); ++j) acc[j] += v * row[j];
  }
  ModScalar out(ring);
  for (long j = 0; j < ring->degree(); ++j)
    mpz_fdiv_r(out.coeffs_mut()[j].get_mpz_t(), acc[j].get_mpz_t(), ring->pm().get_mpz_t());
  return out;
}

}  // namespace daha
