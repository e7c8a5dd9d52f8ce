#include "daha/cyclotomic.hpp"

#include <mpfr.h>

#include <cmath>
#include <map>
#include <mutex>

namespace daha {

long gcd_long(long a, long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long euler_phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      r -= r / p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

long ord_mod(long a, long n) {
  require(gcd_long(a, n) == 1, Err::BadPrime, "ord_mod with gcd != 1");
  long x = ((a % n) + n) % n, r = 1;
  long y = x;
  while (y != 1 % n) {
    y = (y * x) % n;
    ++r;
    check(r <= n, "ord_mod runaway");
  }
  return r;
}

ZPoly cyclotomic_poly(long n) {
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed recursively with
  // exact integer division.
  static std::map<long, ZPoly> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  ZPoly f = poly_xn_minus_1(n);
  for (long d = 1; d < n; ++d) {
    if (n % d) continue;
    f = poly_divexact(f, cyclotomic_poly(d));
  }
  std::lock_guard<std::mutex> lk(mu);
  cache.emplace(n, f);
  return f;
}

CycloField::CycloField(long n) : n_(n), phi_(euler_phi(n)), phi_poly_(cyclotomic_poly(n)) {
  // zeta^j on the reduced basis for all j in [0, n)
  zeta_pow_.assign(n_, std::vector<mpz_class>(phi_));
  std::vector<mpz_class> cur(phi_);
  cur[0] = 1;
  for (long j = 0; j < n_; ++j) {
    zeta_pow_[j] = cur;
    // multiply by zeta
    std::vector<mpz_class> nxt(phi_);
    mpz_class top = cur[phi_ - 1];
    for (long i = phi_ - 1; i > 0; --i) nxt[i] = cur[i - 1];
    nxt[0] = 0;
    if (top != 0)  // subtract top * (x^phi mod Phi) = top * (Phi - x^phi) sign-flip
      for (long i = 0; i < phi_; ++i) nxt[i] -= top * phi_poly_[i];
    cur = std::move(nxt);
  }
}

CycloFieldPtr CycloField::get(long n) {
  check(n >= 1, "conductor must be positive");
  static std::map<long, CycloFieldPtr> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  CycloFieldPtr f(new CycloField(n));
  cache.emplace(n, f);
  return f;
}

CycloScalar operator*(const CycloScalar& a, const CycloScalar& b) {
  a.same_field(b);
  const long phi = a.f_->degree();
  std::vector<mpq_class> conv(2 * phi - 1);
  for (long i = 0; i < phi; ++i) {
    if (a.c_[i] == 0) continue;
    for (long j = 0; j < phi; ++j) {
      if (b.c_[j] == 0) continue;
      conv[i + j] += a.c_[i] * b.c_[j];
    }
  }
  CycloScalar r(a.f_);
  for (long i = 0; i < phi; ++i) r.c_[i] = conv[i];
  for (long i = phi; i < 2 * phi - 1; ++i) {
    if (conv[i] == 0) continue;
    const auto& row = a.f_->zeta_power(i);  // i < 2 phi - 1 <= n + phi; fine mod n
    for (long j = 0; j < phi; ++j) r.c_[j] += conv[i] * row[j];
  }
  return r;
}

CycloScalar CycloScalar::pow(long e) const {
  CycloScalar base = *this, r(f_, 1);
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

CycloScalar CycloScalar::inv() const {
  require(!is_zero(), Err::Domain, "division by zero in Q(zeta)");
  // Extended Euclid of the value polynomial against Phi_n over Q.
  QPoly a(c_.begin(), c_.end());
  poly_trim(a);
  QPoly b;
  for (const auto& z : f_->modulus()) b.emplace_back(z);
  // invariants: s*orig + t*Phi = r
  QPoly r0 = b, r1 = a, s0{}, s1{mpq_class(1)};
  while (!(r1.size() == 1 || r1.empty())) {
    // divide r0 by r1
    QPoly q, rem = r0;
    int d1 = poly_deg(r1);
    while (poly_deg(rem) >= d1) {
      int k = poly_deg(rem) - d1;
      mpq_class c = rem.back() / r1.back();
      if ((int)q.size() < k + 1) q.resize(k + 1);
      q[k] += c;
      for (int j = 0; j <= d1; ++j) rem[k + j] -= c * r1[j];
      poly_trim(rem);
    }
    QPoly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = r1;
    r1 = rem;
    s0 = s1;
    s1 = s2;
  }
  check(!r1.empty(), "inv: zero gcd against irreducible modulus");
  // r1 is a nonzero rational constant: s1 * this == r1 (mod Phi)
  mpq_class c = mpq_class(1) / r1[0];
  CycloScalar out(f_);
  for (size_t i = 0; i < s1.size() && i < out.c_.size(); ++i) out.c_[i] = s1[i] * c;
  if (s1.size() > out.c_.size()) {
    // s1 should already be reduced (deg < phi) by construction
    for (size_t i = out.c_.size(); i < s1.size(); ++i) check(s1[i] == 0, "inv: unreduced Bezout");
  }
  return out;
}

CycloScalar CycloScalar::galois(long M) const {
  const long n = f_->conductor();
  require(gcd_long(M, n) == 1, Err::BadEmbedding, "galois exponent not coprime to conductor");
  CycloScalar r(f_);
  for (long i = 0; i < f_->degree(); ++i) {
    if (c_[i] == 0) continue;
    const auto& row = f_->zeta_power((i * (M % n)) % n);
    for (long j = 0; j < f_->degree(); ++j) r.c_[j] += c_[i] * row[j];
  }
  return r;
}

std::complex<double> CycloScalar::embed(long nu) const {
  const long n = f_->conductor();
  require(gcd_long(nu, n) == 1, Err::BadEmbedding, "embedding index not coprime to conductor");
  std::complex<double> r(0.0, 0.0);
  const double twopi = 6.283185307179586476925286766559;
  for (long i = 0; i < f_->degree(); ++i) {
    if (c_[i] == 0) continue;
    double ang = twopi * static_cast<double>(((i * nu) % n + n) % n) / static_cast<double>(n);
    r += c_[i].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return r;
}

std::complex<double> CycloScalar::embed_hiprec(long nu) const {
  const long n = f_->conductor();
  require(gcd_long(nu, n) == 1, Err::BadEmbedding, "embedding index not coprime to conductor");
  const int prec = 256;
  mpfr_t re, im, ang, c, s, t, pi;
  mpfr_inits2(prec, re, im, ang, c, s, t, pi, (mpfr_ptr)0);
  mpfr_set_zero(re, 1);
  mpfr_set_zero(im, 1);
  mpfr_const_pi(pi, MPFR_RNDN);
  for (long i = 0; i < f_->degree(); ++i) {
    if (c_[i] == 0) continue;
    long k = ((i * nu) % n + n) % n;
    mpfr_mul_si(ang, pi, 2 * k, MPFR_RNDN);
    mpfr_div_si(ang, ang, n, MPFR_RNDN);
    mpfr_cos(c, ang, MPFR_RNDN);
    mpfr_sin(s, ang, MPFR_RNDN);
    mpfr_set_q(t, c_[i].get_mpq_t(), MPFR_RNDN);
    mpfr_fma(re, t, c, re, MPFR_RNDN);
    mpfr_fma(im, t, s, im, MPFR_RNDN);
  }
  double dr = mpfr_get_d(re, MPFR_RNDN), di = mpfr_get_d(im, MPFR_RNDN);
  mpfr_clears(re, im, ang, c, s, t, pi, (mpfr_ptr)0);
  return {dr, di};
}

std::string CycloScalar::serialize() const {
  std::string s = "c";
  s += std::to_string(f_->conductor());
  for (const auto& x : c_) {
    s += ':';
    s += x.get_str();
  }
  return s;
}

CycloScalar cyclo_to_overfield(const CycloScalar& x, const CycloFieldPtr& over) {
  const long d = x.conductor(), c = over->conductor();
  check(c % d == 0, "not an overfield");
  long step = c / d;
  CycloScalar r(over);
  for (long i = 0; i < x.field()->degree(); ++i) {
    if (x.coeffs()[i] == 0) continue;
    const auto& row = over->zeta_power(i * step);
    for (long j = 0; j < over->degree(); ++j) r.coeffs()[j] += x.coeffs()[i] * row[j];
  }
  return r;
}

CycloScalar cyclo_to_subfield(const CycloScalar& x, const CycloFieldPtr& sub) {
  const long c = x.conductor(), d = sub->conductor();
  check(c % d == 0, "not a subfield");
  const long step = c / d, pc = x.field()->degree(), pd = sub->degree();
  // Solve B y = coords(x) where B's columns are zeta_c^{step*j} on the big basis.
  std::vector<std::vector<mpq_class>> B(pc, std::vector<mpq_class>(pd + 1));
  for (long j = 0; j < pd; ++j) {
    const auto& row = x.field()->zeta_power(step * j);
    for (long i = 0; i < pc; ++i) B[i][j] = row[i];
  }
  for (long i = 0; i < pc; ++i) B[i][pd] = x.coeffs()[i];
  // Gaussian elimination on the augmented system.
  long row = 0;
  std::vector<long> pivot_col(pd, -1);
  for (long col = 0; col < pd && row < pc; ++col) {
    long pr = -1;
    for (long i = row; i < pc; ++i)
      if (B[i][col] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(B[pr], B[row]);
    mpq_class inv = 1 / B[row][col];
    for (long j = col; j <= pd; ++j) B[row][j] *= inv;
    for (long i = 0; i < pc; ++i) {
      if (i == row || B[i][col] == 0) continue;
      mpq_class f = B[i][col];
      for (long j = col; j <= pd; ++j) B[i][j] -= f * B[row][j];
    }
    pivot_col[col] = row;
    ++row;
  }
  for (long i = row; i < pc; ++i)
    require(B[i][pd] == 0, Err::Domain, "element does not lie in the requested subfield");
  CycloScalar y(sub);
  for (long col = 0; col < pd; ++col)
    if (pivot_col[col] >= 0) y.coeffs()[col] = B[pivot_col[col]][pd];
  return y;
}

}  // namespace daha
