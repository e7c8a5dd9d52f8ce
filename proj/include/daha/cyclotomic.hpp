#pragma once

// Exact arithmetic in Q(zeta_n). Elements are coefficient vectors of length
// phi(n) on the power basis zeta^0..zeta^{phi(n)-1}, reduced modulo the n-th
// cyclotomic polynomial. Reduced forms are unique, so operator== is exact
// structural equality and serialized forms are usable as hash keys.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "daha/errors.hpp"
#include "daha/intpoly.hpp"

namespace daha {

long euler_phi(long n);
long gcd_long(long a, long b);
long ord_mod(long a, long n);  // multiplicative order of a modulo n; requires gcd(a,n)=1

// Phi_n as a monic integer polynomial (computed by dividing x^n-1 by the
// proper cyclotomic factors, i.e. the Moebius product evaluated stably).
ZPoly cyclotomic_poly(long n);

class CycloField;
using CycloFieldPtr = std::shared_ptr<const CycloField>;

class CycloField {
 public:
  static CycloFieldPtr get(long n);  // cached per conductor

  long conductor() const { return n_; }
  long degree() const { return phi_; }
  const ZPoly& modulus() const { return phi_poly_; }

  // zeta^j expressed on the reduced basis, any j (reduced mod n).
  const std::vector<mpz_class>& zeta_power(long j) const {
    j %= n_;
    if (j < 0) j += n_;
    return zeta_pow_[j];
  }

 private:
  explicit CycloField(long n);
  long n_, phi_;
  ZPoly phi_poly_;
  std::vector<std::vector<mpz_class>> zeta_pow_;  // n rows, each length phi
  friend class CycloFieldAccess;
};

class CycloScalar {
 public:
  using Ctx = CycloFieldPtr;

  CycloScalar() = default;
  explicit CycloScalar(CycloFieldPtr f) : f_(std::move(f)), c_(f_->degree()) {}
  CycloScalar(CycloFieldPtr f, const mpq_class& rat) : f_(std::move(f)), c_(f_->degree()) {
    c_[0] = rat;
  }

  static CycloScalar zero(const Ctx& f) { return CycloScalar(f); }
  static CycloScalar one(const Ctx& f) { return CycloScalar(f, 1); }
  Ctx ctx() const { return f_; }

  static CycloScalar zeta(const CycloFieldPtr& f, long power = 1) {
    CycloScalar r(f);
    const auto& row = f->zeta_power(power);
    for (long i = 0; i < f->degree(); ++i) r.c_[i] = row[i];
    return r;
  }

  const CycloFieldPtr& field() const { return f_; }
  long conductor() const { return f_->conductor(); }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  std::vector<mpq_class>& coeffs() { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  mpq_class rational_part() const { return c_.empty() ? mpq_class(0) : c_[0]; }

  friend bool operator==(const CycloScalar& a, const CycloScalar& b) {
    return a.c_ == b.c_ && a.f_->conductor() == b.f_->conductor();
  }
  friend bool operator!=(const CycloScalar& a, const CycloScalar& b) { return !(a == b); }

  CycloScalar operator-() const {
    CycloScalar r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend CycloScalar operator+(const CycloScalar& a, const CycloScalar& b) {
    a.same_field(b);
    CycloScalar r = a;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  friend CycloScalar operator-(const CycloScalar& a, const CycloScalar& b) {
    a.same_field(b);
    CycloScalar r = a;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
  }
  friend CycloScalar operator*(const CycloScalar& a, const CycloScalar& b);
  CycloScalar& operator+=(const CycloScalar& b) { return *this = *this + b; }
  CycloScalar& operator-=(const CycloScalar& b) { return *this = *this - b; }
  CycloScalar& operator*=(const CycloScalar& b) { return *this = *this * b; }

  CycloScalar inv() const;
  bool is_unit() const { return !is_zero(); }

  CycloScalar pow(long e) const;

  // Galois image under zeta -> zeta^M, gcd(M, n) = 1.
  CycloScalar galois(long M) const;
  // zeta -> zeta^{-1}; coincides with complex conjugation at every embedding.
  CycloScalar star() const { return galois(f_->conductor() == 1 ? 1 : f_->conductor() - 1); }

  // Floating image under zeta -> exp(2 pi i nu / n), gcd(nu, n) = 1.
  std::complex<double> embed(long nu) const;
  // Same at quad precision via mpfr (used only as a precision-escalation guard).
  std::complex<double> embed_hiprec(long nu) const;

  std::string serialize() const;  // canonical form, usable as a hash key

 private:
  void same_field(const CycloScalar& b) const {
    check(f_ && b.f_ && f_->conductor() == b.f_->conductor(), "cyclo field mismatch");
  }
  CycloFieldPtr f_;
  std::vector<mpq_class> c_;
};

// Re-expresses x in the subfield Q(zeta_d), d | conductor(x). Fails with
// EDomain if x does not lie in the subfield.
CycloScalar cyclo_to_subfield(const CycloScalar& x, const CycloFieldPtr& sub);
// Canonical inclusion Q(zeta_d) -> Q(zeta_c) for d | c.
CycloScalar cyclo_to_overfield(const CycloScalar& x, const CycloFieldPtr& over);

}  // namespace daha
