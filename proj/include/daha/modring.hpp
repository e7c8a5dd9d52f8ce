#pragma once

// Finite cyclotomic quotients: Z[zeta_n]/(p^m) and Z[zeta_n]/p^m with p a
// prime ideal over p, realized as Z[x]/(p^m, F(x)) for F either Phi_n mod p^m
// or a Hensel-lifted irreducible factor of Phi_n mod p. All irreducible
// factors of Phi_n mod p share degree ord_n(p); they are found by randomized
// equal-degree splitting with an explicit seed.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "daha/cyclotomic.hpp"
#include "daha/errors.hpp"
#include "daha/intpoly.hpp"

namespace daha {

// --- F_p[x] helpers (coefficients reduced into [0,p)) ---
ZPoly pmod_normalize(ZPoly f, const mpz_class& p);
ZPoly pmod_mul(const ZPoly& a, const ZPoly& b, const mpz_class& p);
ZPoly pmod_rem(ZPoly a, const ZPoly& b, const mpz_class& p);
ZPoly pmod_gcd(ZPoly a, ZPoly b, const mpz_class& p);
ZPoly pmod_powmod(const ZPoly& a, const mpz_class& e, const ZPoly& mod, const mpz_class& p);
// Bezout: s*a + t*b = 1 over F_p, for coprime a, b. Returns (s, t).
std::pair<ZPoly, ZPoly> pmod_bezout(const ZPoly& a, const ZPoly& b, const mpz_class& p);

// All monic irreducible factors of Phi_n mod p (gcd(p,n)=1, p odd), sorted
// lexicographically by their coefficient vectors for reproducibility.
std::vector<ZPoly> cyclo_factor_mod_p(long n, const mpz_class& p, uint64_t seed);

// Lift a monic factor g0 of monic f, f = g0*h0 mod p with gcd(g0,h0)=1,
// to g with f = g*h mod p^m and g = g0 mod p.
ZPoly hensel_lift_factor(const ZPoly& f, const ZPoly& g0, const mpz_class& p, int m);

class ModRing;
using ModRingPtr = std::shared_ptr<const ModRing>;

class ModRing {
 public:
  // ideal_index < 0: full ring Z[zeta_n]/(p^m).
  // ideal_index >= 0: quotient by the (index-th) lifted prime factor.
  static ModRingPtr make(long n, const mpz_class& p, int m, int ideal_index = -1,
                         uint64_t seed = 0);

  long conductor() const { return n_; }
  const mpz_class& p() const { return p_; }
  int m() const { return m_; }
  const mpz_class& pm() const { return pm_; }
  const ZPoly& modulus_poly() const { return F_; }
  long degree() const { return poly_deg(F_); }
  bool has_ideal() const { return ideal_index_ >= 0; }
  int ideal_index() const { return ideal_index_; }
  // residue-field degree ord_n(p) when an ideal is chosen
  long residue_degree() const {
    return ord_mod(static_cast<long>(mpz_fdiv_ui(p_.get_mpz_t(), n_)), n_);
  }

  const ZPoly& zeta_power(long j) const {  // x^j mod (F, p^m), any j
    j %= n_;
    if (j < 0) j += n_;
    return zeta_pow_[j];
  }

  bool star_defined() const { return star_defined_; }

 private:
  ModRing(long n, mpz_class p, int m, int ideal_index, ZPoly F);
  long n_;
  mpz_class p_, pm_;
  int m_;
  int ideal_index_;
  ZPoly F_;
  std::vector<ZPoly> zeta_pow_;
  bool star_defined_ = true;
};

class ModScalar {
 public:
  using Ctx = ModRingPtr;

  ModScalar() = default;
  explicit ModScalar(ModRingPtr r) : r_(std::move(r)), c_(r_->degree()) {}
  ModScalar(ModRingPtr r, const mpz_class& v) : r_(std::move(r)), c_(r_->degree()) {
    c_[0] = mod(v);
  }

  static ModScalar zero(const Ctx& r) { return ModScalar(r); }
  static ModScalar one(const Ctx& r) { return ModScalar(r, 1); }
  Ctx ctx() const { return r_; }
  const ModRingPtr& ring() const { return r_; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  std::vector<mpz_class>& coeffs_mut() { return c_; }

  static ModScalar zeta(const ModRingPtr& r, long power = 1) {
    ModScalar s(r);
    const ZPoly& row = r->zeta_power(power);
    for (size_t i = 0; i < row.size(); ++i) s.c_[i] = row[i];
    return s;
  }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_unit() const;
  ModScalar inv() const;

  friend bool operator==(const ModScalar& a, const ModScalar& b) { return a.c_ == b.c_; }
  friend bool operator!=(const ModScalar& a, const ModScalar& b) { return !(a == b); }

  ModScalar operator-() const {
    ModScalar r = *this;
    for (auto& x : r.c_) x = r.mod(-x);
    return r;
  }
  friend ModScalar operator+(const ModScalar& a, const ModScalar& b) {
    a.same_ring(b);
    ModScalar r = a;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = r.mod(r.c_[i] + b.c_[i]);
    return r;
  }
  friend ModScalar operator-(const ModScalar& a, const ModScalar& b) {
    a.same_ring(b);
    ModScalar r = a;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = r.mod(r.c_[i] - b.c_[i]);
    return r;
  }
  friend ModScalar operator*(const ModScalar& a, const ModScalar& b);
  ModScalar& operator+=(const ModScalar& b) { return *this = *this + b; }
  ModScalar& operator-=(const ModScalar& b) { return *this = *this - b; }
  ModScalar& operator*=(const ModScalar& b) { return *this = *this * b; }

  ModScalar star() const;  // zeta -> zeta^{-1}
  ModScalar pow(long e) const;

  std::string serialize() const {
    std::string s = "m";
    for (const auto& x : c_) {
      s += ':';
      s += x.get_str();
    }
    return s;
  }

 private:
  void same_ring(const ModScalar& b) const {
    check(r_ && b.r_ && r_.get() == b.r_.get(), "mod ring mismatch");
  }
  mpz_class mod(const mpz_class& v) const {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), r_->pm().get_mpz_t());
    return r;
  }
  ModRingPtr r_;
  std::vector<mpz_class> c_;
};

// Ring homomorphism Q(zeta_n) -> Z[zeta_n]/(p^m) (or mod the chosen ideal);
// every coefficient denominator must be coprime to p.
ModScalar reduce_mod(const CycloScalar& x, const ModRingPtr& ring);

}  // namespace daha
