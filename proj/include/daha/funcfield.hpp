#pragma once

// The generic-q coefficient domain: rational functions in one variable a,
// where a stands for q^{1/4}. Fractions of integer polynomials, kept fully
// reduced with a positive-leading denominator, so reduced forms are unique.

#include <gmpxx.h>

#include <string>

#include "daha/errors.hpp"
#include "daha/intpoly.hpp"

namespace daha {

class FuncScalar {
 public:
  struct Ctx {};  // the domain carries no runtime data

  FuncScalar() : num_{}, den_{mpz_class(1)} {}
  FuncScalar(long v) : num_{}, den_{mpz_class(1)} {
    if (v) num_ = {mpz_class(v)};
  }
  FuncScalar(const mpq_class& v) : num_{}, den_{v.get_den()} {
    if (v != 0) num_ = {mpz_class(v.get_num())};
    normalize();
  }
  FuncScalar(ZPoly num, ZPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static FuncScalar zero(const Ctx&) { return FuncScalar(); }
  static FuncScalar one(const Ctx&) { return FuncScalar(1); }
  Ctx ctx() const { return {}; }

  // The variable a = q^{1/4}, to the given (possibly negative) power.
  static FuncScalar a_pow(long e) {
    ZPoly p(std::abs(e) + 1);
    p[std::abs(e)] = 1;
    return e >= 0 ? FuncScalar(p, {mpz_class(1)}) : FuncScalar({mpz_class(1)}, p);
  }

  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }

  bool is_zero() const { return num_.empty(); }
  bool is_unit() const { return !is_zero(); }

  friend bool operator==(const FuncScalar& x, const FuncScalar& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend bool operator!=(const FuncScalar& x, const FuncScalar& y) { return !(x == y); }

  FuncScalar operator-() const {
    FuncScalar r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
  }
  friend FuncScalar operator+(const FuncScalar& x, const FuncScalar& y) {
    return FuncScalar(poly_add(poly_mul(x.num_, y.den_), poly_mul(y.num_, x.den_)),
                      poly_mul(x.den_, y.den_));
  }
  friend FuncScalar operator-(const FuncScalar& x, const FuncScalar& y) {
    return FuncScalar(poly_sub(poly_mul(x.num_, y.den_), poly_mul(y.num_, x.den_)),
                      poly_mul(x.den_, y.den_));
  }
  friend FuncScalar operator*(const FuncScalar& x, const FuncScalar& y) {
    return FuncScalar(poly_mul(x.num_, y.num_), poly_mul(x.den_, y.den_));
  }
  FuncScalar& operator+=(const FuncScalar& y) { return *this = *this + y; }
  FuncScalar& operator-=(const FuncScalar& y) { return *this = *this - y; }
  FuncScalar& operator*=(const FuncScalar& y) { return *this = *this * y; }

  FuncScalar inv() const {
    require(!is_zero(), Err::Domain, "division by zero in Q(a)");
    return FuncScalar(den_, num_);
  }

  FuncScalar pow(long e) const {
    FuncScalar base = *this, r(1);
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

  // a -> a^{-1}, matching (q^{1/4})^* = q^{-1/4}.
  FuncScalar star() const {
    ZPoly n(num_.rbegin(), num_.rend());
    ZPoly d(den_.rbegin(), den_.rend());
    poly_trim(n);
    poly_trim(d);
    long dn = poly_deg(num_), dd = poly_deg(den_);
    if (is_zero()) return FuncScalar();
    if (dn >= dd) {
      ZPoly dshift(dn - dd + (long)d.size());
      for (size_t i = 0; i < d.size(); ++i) dshift[dn - dd + i] = d[i];
      return FuncScalar(n, dshift);
    }
    ZPoly nshift(dd - dn + (long)n.size());
    for (size_t i = 0; i < n.size(); ++i) nshift[dd - dn + i] = n[i];
    return FuncScalar(nshift, d);
  }

  // Evaluate at a rational point (used by the polynomial-identity shortcuts
  // and deformation specializations through CycloScalar images instead).
  mpq_class eval(const mpq_class& x) const {
    mpq_class d = poly_eval(den_, x);
    require(d != 0, Err::Denominator, "denominator vanishes at evaluation point");
    return poly_eval(num_, x) / d;
  }

  bool is_rational() const { return poly_deg(num_) <= 0 && poly_deg(den_) <= 0; }
  mpq_class rational_part() const {
    check(is_rational(), "not a rational constant");
    return num_.empty() ? mpq_class(0) : mpq_class(num_[0]) / mpq_class(den_[0]);
  }

  std::string serialize() const {
    std::string s = "f";
    for (const auto& c : num_) {
      s += ':';
      s += c.get_str();
    }
    s += '/';
    for (const auto& c : den_) {
      s += ':';
      s += c.get_str();
    }
    return s;
  }

 private:
  void normalize() {
    poly_trim(num_);
    poly_trim(den_);
    require(!den_.empty(), Err::Domain, "zero denominator in Q(a)");
    if (num_.empty()) {
      den_ = {mpz_class(1)};
      return;
    }
    ZPoly g = poly_gcd(num_, den_);
    if (poly_deg(g) > 0 || g[0] != 1) {
      num_ = poly_divexact(num_, g);
      den_ = poly_divexact(den_, g);
    }
    if (den_.back() < 0) {
      for (auto& c : num_) c = -c;
      for (auto& c : den_) c = -c;
    }
  }
  ZPoly num_, den_;
};

}  // namespace daha
