#pragma once

// The polynomial representation: Laurent polynomials in X over a scalar
// domain, the operators s, pi, T, Y acting on them, and the constant-term
// pairing <f, g> = <f g* mu_o> with mu_o expanded lazily to the needed
// X-degree. Parameters ride along in a ParamContext: q^{1/4} as a domain
// element, 2k, and the sign bookkeeping for t^{1/2} = eps (q^{1/4})^{2k}.

#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "daha/cyclotomic.hpp"
#include "daha/errors.hpp"
#include "daha/funcfield.hpp"

namespace daha {

template <class K>
struct ParamContext {
  typename K::Ctx dom;
  K qq;                    // image of q^{1/4}
  long twok = 0;           // 2k (k may be a half-integer)
  int eps = +1;            // sign in t^{1/2} = eps_root * qq^{2k}
  bool eps_imag = false;   // eps_root = eps * i (so t = -q^{k...}); t^{1/2}
                           // is materialized only when the domain contains i
  long N = 0;              // order of q at a root of unity; 0 for generic q
  long nu = 1;             // which primitive root: q^{1/4} = zeta_{4N}^{nu}
  bool checkmark = false;  // parameters squared (q -> q^2, t -> t^2)

  K q() const { return qq.pow(4); }
  K q_half() const { return qq.pow(2); }
  K q_pow_half(long j) const { return qq.pow(2 * j); }     // q^{j/2}
  K q_pow_quarter(long j) const { return qq.pow(j); }      // q^{j/4}
  K t() const {
    K v = qq.pow(2 * twok);
    return eps_imag ? -v : v;
  }
  K t_pow(long j) const { return t().pow(j); }
  bool has_thalf() const { return static_cast<bool>(thalf_); }
  const K& thalf() const {
    check(static_cast<bool>(thalf_), "t^{1/2} not available in this domain");
    return *thalf_;
  }
  K thalf_pow(long j) const { return thalf().pow(j); }

  K one() const { return K::one(dom); }
  K zero() const { return K::zero(dom); }
  K from_int(long v) const {
    K r = K::zero(dom);
    K o = K::one(dom);
    for (long i = 0; i < std::abs(v); ++i) r += o;
    return v < 0 ? -r : r;
  }

  std::string fingerprint() const {
    std::ostringstream os;
    os << qq.serialize() << "|" << twok << "|" << eps << "|" << eps_imag << "|" << N << "|"
       << checkmark;
    return os.str();
  }

  std::optional<K> thalf_;  // set whenever representable in the domain
};

// Root-of-unity context in Q(zeta_{4N}): q^{1/4} = zeta_{4N}^{nu}.
inline ParamContext<CycloScalar> make_cyclo_ctx(long N, long twok, int eps = +1,
                                                bool eps_imag = false, long nu = 1) {
  require(N >= 1, Err::ParamWindow, "N must be positive");
  require(gcd_long(nu, 4 * N) == 1, Err::BadEmbedding, "nu must be coprime to 4N");
  ParamContext<CycloScalar> ctx;
  auto F = CycloField::get(4 * N);
  ctx.dom = F;
  ctx.qq = CycloScalar::zeta(F, nu);
  ctx.twok = twok;
  ctx.eps = eps;
  ctx.eps_imag = eps_imag;
  ctx.N = N;
  ctx.nu = nu;
  CycloScalar th = ctx.qq.pow(twok);
  if (eps < 0) th = -th;
  if (eps_imag) th = CycloScalar::zeta(F, N) * th;  // zeta_{4N}^N = i
  ctx.thalf_ = th;
  return ctx;
}

// Context with an explicit (possibly imprimitive) root exponent: q^{1/4} =
// zeta_conductor^{expo}. Used for the q^{1/2} = -e^{nu pi i/N} boundary cases
// where q^{1/2} is an N-th rather than a 2N-th root of unity.
inline ParamContext<CycloScalar> make_cyclo_ctx_raw(long conductor, long expo, long N, long twok,
                                                    int eps = +1, bool eps_imag = false) {
  ParamContext<CycloScalar> ctx;
  auto F = CycloField::get(conductor);
  ctx.dom = F;
  ctx.qq = CycloScalar::zeta(F, expo);
  ctx.twok = twok;
  ctx.eps = eps;
  ctx.eps_imag = eps_imag;
  ctx.N = N;
  ctx.nu = expo;
  CycloScalar th = ctx.qq.pow(twok);
  if (eps < 0) th = -th;
  if (eps_imag) {
    require(conductor % 4 == 0, Err::BadEmbedding, "need i in the field");
    th = CycloScalar::zeta(F, conductor / 4) * th;
  }
  ctx.thalf_ = th;
  return ctx;
}

// Generic-q context over Q(a), a = q^{1/4}.
inline ParamContext<FuncScalar> make_generic_ctx(long twok, int eps = +1, bool eps_imag = false) {
  ParamContext<FuncScalar> ctx;
  ctx.dom = FuncScalar::Ctx{};
  ctx.qq = FuncScalar::a_pow(1);
  ctx.twok = twok;
  ctx.eps = eps;
  ctx.eps_imag = eps_imag;
  ctx.N = 0;
  if (!eps_imag) {
    FuncScalar th = FuncScalar::a_pow(twok);
    if (eps < 0) th = -th;
    ctx.thalf_ = th;
  }
  return ctx;
}

// The checkmark substitution q -> q^2, t -> t^2 (odd N). t^{1/2} becomes the
// old t, so it is always representable.
template <class K>
ParamContext<K> make_checkmark_ctx(const ParamContext<K>& ctx) {
  require(ctx.N == 0 || ctx.N % 2 == 1, Err::ParamWindow, "checkmark requires odd N");
  ParamContext<K> out = ctx;
  out.qq = ctx.qq.pow(2);
  out.thalf_ = ctx.t();
  out.eps = +1;
  out.eps_imag = false;
  out.checkmark = true;
  return out;
}

template <class K>
class LaurentPoly {
 public:
  using Ctx = typename K::Ctx;

  LaurentPoly() = default;
  explicit LaurentPoly(Ctx dom) : dom_(std::move(dom)) {}

  static LaurentPoly monomial(const Ctx& dom, long exp, const K& coef) {
    LaurentPoly f(dom);
    if (!coef.is_zero()) f.c_[exp] = coef;
    return f;
  }
  static LaurentPoly one(const Ctx& dom) { return monomial(dom, 0, K::one(dom)); }

  const std::map<long, K>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long deg_high() const {
    check(!c_.empty(), "degree of zero Laurent polynomial");
    return c_.rbegin()->first;
  }
  long deg_low() const {
    check(!c_.empty(), "degree of zero Laurent polynomial");
    return c_.begin()->first;
  }
  K coeff(long e) const {
    auto it = c_.find(e);
    return it == c_.end() ? K::zero(dom_) : it->second;
  }
  void set_coeff(long e, const K& v) {
    if (v.is_zero())
      c_.erase(e);
    else
      c_[e] = v;
  }
  void add_coeff(long e, const K& v) {
    if (v.is_zero()) return;
    auto it = c_.find(e);
    if (it == c_.end()) {
      c_[e] = v;
    } else {
      it->second += v;
      if (it->second.is_zero()) c_.erase(it);
    }
  }
  const Ctx& dom() const { return dom_; }

  friend bool operator==(const LaurentPoly& f, const LaurentPoly& g) { return f.c_ == g.c_; }
  friend bool operator!=(const LaurentPoly& f, const LaurentPoly& g) { return !(f == g); }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, v] : r.c_) v = -v;
    return r;
  }
  friend LaurentPoly operator+(const LaurentPoly& f, const LaurentPoly& g) {
    LaurentPoly r = f;
    for (const auto& [e, v] : g.c_) r.add_coeff(e, v);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& f, const LaurentPoly& g) {
    LaurentPoly r = f;
    for (const auto& [e, v] : g.c_) r.add_coeff(e, -v);
    return r;
  }
  friend LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g) {
    LaurentPoly r(f.dom_);
    for (const auto& [e1, v1] : f.c_)
      for (const auto& [e2, v2] : g.c_) r.add_coeff(e1 + e2, v1 * v2);
    return r;
  }
  friend LaurentPoly operator*(const K& c, const LaurentPoly& f) {
    LaurentPoly r(f.dom_);
    for (const auto& [e, v] : f.c_) r.add_coeff(e, c * v);
    return r;
  }
  LaurentPoly& operator+=(const LaurentPoly& g) { return *this = *this + g; }
  LaurentPoly& operator-=(const LaurentPoly& g) { return *this = *this - g; }

  LaurentPoly shift(long d) const {  // multiply by X^d
    LaurentPoly r(dom_);
    for (const auto& [e, v] : c_) r.c_[e + d] = v;
    return r;
  }

  // coefficient star + X -> X^{-1}
  LaurentPoly star() const {
    LaurentPoly r(dom_);
    for (const auto& [e, v] : c_) r.c_[-e] = v.star();
    return r;
  }

  // X -> cX for a unit c
  LaurentPoly substitute_scale(const K& c) const {
    LaurentPoly r(dom_);
    K cinv = c.inv();
    for (const auto& [e, v] : c_) {
      K f = e >= 0 ? c.pow(e) : cinv.pow(-e);
      r.add_coeff(e, f * v);
    }
    return r;
  }

  K eval(const K& x) const {  // X -> x, x a unit
    K r = K::zero(dom_);
    std::optional<K> xinv;
    for (const auto& [e, v] : c_) {
      if (e >= 0) {
        r += v * x.pow(e);
      } else {
        if (!xinv) xinv = x.inv();
        r += v * xinv->pow(-e);
      }
    }
    return r;
  }

  std::string serialize() const {
    std::string s = "L";
    for (const auto& [e, v] : c_) {
      s += '(' + std::to_string(e) + ')' + v.serialize();
    }
    return s;
  }

 private:
  Ctx dom_;
  std::map<long, K> c_;
};

// Exact Laurent division: q with f = q * d, fails if not exact. The divisor's
// extreme coefficients must be units.
template <class K>
LaurentPoly<K> laurent_divexact(const LaurentPoly<K>& f, const LaurentPoly<K>& d) {
  check(!d.is_zero(), "laurent division by zero");
  LaurentPoly<K> rem = f, quot(f.dom());
  if (rem.is_zero()) return quot;
  const long dh = d.deg_high();
  K lead_inv = d.coeff(dh).inv();
  while (!rem.is_zero()) {
    long rh = rem.deg_high();
    K c = rem.coeff(rh) * lead_inv;
    long sh = rh - dh;
    quot.add_coeff(sh, c);
    rem -= c * d.shift(sh);
    if (!rem.is_zero()) check(rem.deg_high() < rh, "laurent division stalled");
  }
  return quot;
}

// --- polynomial-representation operators ---

template <class K>
LaurentPoly<K> op_s(const LaurentPoly<K>& f) {
  LaurentPoly<K> r(f.dom());
  for (const auto& [e, v] : f.coeffs()) r.add_coeff(-e, v);
  return r;
}

template <class K>
LaurentPoly<K> op_pi(const LaurentPoly<K>& f, const ParamContext<K>& ctx) {
  LaurentPoly<K> r(f.dom());
  for (const auto& [e, v] : f.coeffs()) r.add_coeff(-e, ctx.q_pow_half(e) * v);
  return r;
}

namespace detail {
// (s - 1)f / (X^2 - 1); the division is provably exact, asserted at runtime.
template <class K>
LaurentPoly<K> demazure_part(const LaurentPoly<K>& f) {
  LaurentPoly<K> num = op_s(f) - f;
  if (num.is_zero()) return num;
  LaurentPoly<K> den(f.dom());
  den.set_coeff(2, K::one(f.dom()));
  den.set_coeff(0, -K::one(f.dom()));
  return laurent_divexact(num, den);
}
}  // namespace detail

// T = t^{1/2} s + (t^{1/2} - t^{-1/2}) / (X^2 - 1) (s - 1)
template <class K>
LaurentPoly<K> op_T(const LaurentPoly<K>& f, const ParamContext<K>& ctx) {
  const K th = ctx.thalf();
  return th * op_s(f) + (th - th.inv()) * detail::demazure_part(f);
}

// t^{-1/2} T = s + (1 - t^{-1}) / (X^2 - 1) (s - 1): defined over q, t alone.
template <class K>
LaurentPoly<K> op_T_rescaled(const LaurentPoly<K>& f, const ParamContext<K>& ctx) {
  const K one = ctx.one();
  return op_s(f) + (one - ctx.t().inv()) * detail::demazure_part(f);
}

template <class K>
LaurentPoly<K> op_Y(const LaurentPoly<K>& f, const ParamContext<K>& ctx) {
  return op_pi(op_T(f, ctx), ctx);
}

template <class K>
LaurentPoly<K> op_Y_rescaled(const LaurentPoly<K>& f, const ParamContext<K>& ctx) {
  return op_pi(op_T_rescaled(f, ctx), ctx);
}

// T^{-1} = T - (t^{1/2} - t^{-1/2})
template <class K>
LaurentPoly<K> op_T_inv(const LaurentPoly<K>& f, const ParamContext<K>& ctx) {
  const K th = ctx.thalf();
  return op_T(f, ctx) - (th - th.inv()) * f;
}

template <class K>
LaurentPoly<K> op_Y_inv(const LaurentPoly<K>& f, const ParamContext<K>& ctx) {
  return op_T_inv(op_pi(f, ctx), ctx);  // Y^{-1} = T^{-1} pi^{-1}, pi^2 = 1
}

// Coefficients of mu_o: mu_o = sum_j mu_j X^{2j}, from the two-term recurrence
// induced by (t - X^2) mu(q^{1/2} X) = (1 - t X^2) mu(X), normalized mu_0 = 1:
//   mu_j   = mu_{j-1} (q^{j-1} - t) / (t q^j - 1),     j > 0,
//   mu_{-j} = mu_{-j+1} (t q^{1-j} - 1) / (q^{-j} - t), j > 0.
template <class K>
class MuExpansion {
 public:
  explicit MuExpansion(const ParamContext<K>& ctx) : ctx_(ctx) {
    pos_.push_back(K::one(ctx.dom));
    neg_.push_back(K::one(ctx.dom));
  }

  const K& coeff(long j) {
    auto& side = j >= 0 ? pos_ : neg_;
    size_t idx = static_cast<size_t>(j >= 0 ? j : -j);
    while (side.size() <= idx) extend(j >= 0);
    return side[idx];
  }

 private:
  void extend(bool positive) {
    const K t = ctx_.t();
    if (positive) {
      long j = static_cast<long>(pos_.size());
      K den = t * ctx_.q().pow(j) - ctx_.one();
      require(!den.is_zero(), Err::Denominator,
              "mu expansion factor t q^" + std::to_string(j) + " - 1 vanishes");
      pos_.push_back(pos_.back() * (ctx_.q().pow(j - 1) - t) * den.inv());
    } else {
      long j = static_cast<long>(neg_.size());
      K den = ctx_.q().pow(-j) - t;
      require(!den.is_zero(), Err::Denominator,
              "mu expansion factor q^-" + std::to_string(j) + " - t vanishes");
      neg_.push_back(neg_.back() * (t * ctx_.q().pow(1 - j) - ctx_.one()) * den.inv());
    }
  }
  ParamContext<K> ctx_;
  std::vector<K> pos_, neg_;
};

// <f, g> = constant term of f g* mu_o. trunc must be at least the total
// X-degree of f g*; the result does not depend on it beyond that.
template <class K>
K ct_pair(const LaurentPoly<K>& f, const LaurentPoly<K>& g, const ParamContext<K>& ctx,
          long trunc) {
  LaurentPoly<K> h = f * g.star();
  K out = K::zero(ctx.dom);
  if (h.is_zero()) return out;
  require(trunc >= std::max(std::abs(h.deg_high()), std::abs(h.deg_low())), Err::Domain,
          "truncation order below the degree of f g*");
  MuExpansion<K> mu(ctx);
  for (const auto& [e, v] : h.coeffs()) {
    if (e % 2 != 0) continue;  // mu_o has only even powers
    out += v * mu.coeff(-e / 2);
  }
  return out;
}

}  // namespace daha
