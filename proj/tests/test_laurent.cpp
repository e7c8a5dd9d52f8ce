#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "daha/epoly.hpp"
#include "daha/laurent.hpp"

using namespace daha;

using FP = LaurentPoly<FuncScalar>;

namespace {

const ParamContext<FuncScalar>& gctx() {
  // generic k = 1 (t = q): a convenient everything-generic context
  static auto ctx = make_generic_ctx(2);
  return ctx;
}

FP mono(long e, const ParamContext<FuncScalar>& c, long num = 1) {
  return FP::monomial(c.dom, e, FuncScalar(num));
}

}  // namespace

TEST_CASE("operator basics: s, pi, T, Y") {
  auto& c = gctx();
  auto one = FP::one(c.dom);
  CHECK(op_s(mono(3, c)) == mono(-3, c));
  // pi(X^n) = q^{n/2} X^{-n} and pi^2 = id
  for (long n = -4; n <= 4; ++n) {
    auto p = op_pi(mono(n, c), c);
    CHECK(p == c.q_pow_half(n) * mono(-n, c));
    CHECK(op_pi(p, c) == mono(n, c));
  }
  // T(1) = t^{1/2}, Y(1) = t^{1/2}
  CHECK(op_T(one, c) == c.thalf() * one);
  CHECK(op_Y(one, c) == c.thalf() * one);
  // quadratic relation (T - t^{1/2})(T + t^{-1/2}) = 0 on a spanning set
  for (long n = -5; n <= 5; ++n) {
    auto f = mono(n, c);
    auto g = op_T(op_T(f, c), c) - (c.thalf() - c.thalf().inv()) * op_T(f, c) - f;
    CHECK(g.is_zero());
  }
}

TEST_CASE("defining relations as operators up to degree 8") {
  auto& c = gctx();
  for (long n = -8; n <= 8; ++n) {
    auto f = mono(n, c);
    // T X T = X^{-1}
    auto lhs = op_T(mono(1, c) * op_T(f, c), c);
    CHECK(lhs == mono(-1, c) * f);
    // T^{-1} Y T^{-1} = Y^{-1}
    auto l2 = op_T_inv(op_Y(op_T_inv(f, c), c), c);
    CHECK(l2 == op_Y_inv(f, c));
    // Y^{-1} X^{-1} Y X T^2 q^{1/2} = 1
    auto w = op_T(op_T(f, c), c);
    w = mono(1, c) * w;
    w = op_Y(w, c);
    w = mono(-1, c) * w;
    w = op_Y_inv(w, c);
    CHECK(c.q_half() * w == f);
  }
}

TEST_CASE("rescaled operators match t^{-1/2}-scaled ones") {
  auto& c = gctx();
  for (long n = -4; n <= 4; ++n) {
    auto f = mono(n, c);
    CHECK(op_T_rescaled(f, c) == c.thalf().inv() * op_T(f, c));
    CHECK(op_Y_rescaled(f, c) == c.thalf().inv() * op_Y(f, c));
  }
}

TEST_CASE("mu expansion leading coefficients") {
  auto& c = gctx();
  MuExpansion<FuncScalar> mu(c);
  auto t = c.t(), q = c.q(), one = FuncScalar(1);
  CHECK(mu.coeff(0) == one);
  CHECK(mu.coeff(1) == (t - one) * (one - q * t).inv());
  CHECK(mu.coeff(-1) == q * (t - one) * (one - q * t).inv());
}

TEST_CASE("ct_pair examples") {
  auto& c = gctx();
  auto one = FP::one(c.dom);
  CHECK(ct_pair(one, one, c, 4) == FuncScalar(1));
  // <e_1, e_1> = 1 with e_1 = X
  CHECK(ct_pair(mono(1, c), mono(1, c), c, 4) == FuncScalar(1));
  // <e_-1, e_-1> = (1-q)(1-qt^2)/(1-qt)^2
  auto em1 = e_poly(-1, c);
  auto t = c.t(), q = c.q(), u = FuncScalar(1);
  auto expect = (u - q) * (u - q * t * t) * ((u - q * t) * (u - q * t)).inv();
  CHECK(ct_pair(em1, em1, c, 6) == expect);
  CHECK(ct_pair(em1, em1, c, 12) == expect);  // trunc-independent
  CHECK_THROWS_AS((void)ct_pair(em1, em1, c, 0), Error);
}

TEST_CASE("adjointness <f, H g> = <H* f, g> for H = X, Y, T") {
  auto& c = gctx();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 12; ++trial) {
    FP f(c.dom), g(c.dom);
    for (int r = 0; r < 3; ++r) {
      f.add_coeff(static_cast<long>(rng() % 7) - 3, FuncScalar(static_cast<long>(rng() % 9) - 4));
      g.add_coeff(static_cast<long>(rng() % 7) - 3, FuncScalar(static_cast<long>(rng() % 9) - 4));
    }
    long tr = 16;
    // X* = X^{-1}
    CHECK(ct_pair(f, mono(1, c) * g, c, tr) == ct_pair(mono(-1, c) * f, g, c, tr));
    // T* = T^{-1}
    CHECK(ct_pair(f, op_T(g, c), c, tr) == ct_pair(op_T_inv(f, c), g, c, tr));
    // Y* = Y^{-1}
    CHECK(ct_pair(f, op_Y(g, c), c, tr) == ct_pair(op_Y_inv(f, c), g, c, tr));
  }
}

TEST_CASE("cyclotomic context: operators respect relations at a root of unity") {
  auto ctx = make_cyclo_ctx(5, 2);  // N = 5, k = 1
  using CP = LaurentPoly<CycloScalar>;
  for (long n = -4; n <= 4; ++n) {
    auto f = CP::monomial(ctx.dom, n, ctx.one());
    auto lhs = op_T(CP::monomial(ctx.dom, 1, ctx.one()) * op_T(f, ctx), ctx);
    CHECK(lhs == CP::monomial(ctx.dom, -1, ctx.one()) * f);
  }
}

TEST_CASE("ct_pair raises EDenominator when a factor vanishes in range") {
  // at N = 3, k = 1 (t = q), the factor t q^2 - 1 = q^3 - 1 vanishes; the
  // pairing <X^{-2}, X^2> needs mu_2 and must refuse
  auto ctx = make_cyclo_ctx(3, 2);
  using CP = LaurentPoly<CycloScalar>;
  auto xm2 = CP::monomial(ctx.dom, -2, ctx.one());
  auto x2 = CP::monomial(ctx.dom, 2, ctx.one());
  CHECK_THROWS_AS((void)ct_pair(xm2, x2, ctx, 4), Error);
  // while <X^2, X^2> = mu_0 = 1 is fine
  CHECK(ct_pair(x2, x2, ctx, 4) == ctx.one());
}
