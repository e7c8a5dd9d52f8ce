#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "daha/livne.hpp"

using namespace daha;
using CS = CycloScalar;

TEST_CASE("Livne generators: relations and eigenvalue tables") {
  for (long l : {3L, 4L, 6L, 8L, 10L}) {
    auto g = livne_generators(l);
    CHECK((g.I2 * g.I2).is_identity());
    CHECK(g.I2 == g.J * g.I1 * g.J * g.J);
    CHECK(livne_eigenvalue_tables(g));
  }
}

TEST_CASE("I123 is parabolic exactly at l = 6") {
  for (long l : {3L, 4L, 5L, 6L, 7L, 8L, 12L}) {
    auto g = livne_generators(l);
    CHECK(livne_parabolic(g) == (l == 6));
  }
}

TEST_CASE("ord(I12 mod scalars) = l for l <= 24") {
  for (long l = 3; l <= 24; ++l) {
    auto g = livne_generators(l);
    CHECK(projective_order(g.I12, l + 2).value_or(-1) == l);
  }
}

TEST_CASE("bridge: V^+_3 matches the Livne triple at l = 2N") {
  for (long N : {4L, 5L, 6L}) {
    auto b = livne_daha_bridge(N, false);
    CHECK(b.solution_dim == 1);
    CHECK(b.secondary);
    CHECK(b.eigen_tables);
  }
}

TEST_CASE("bridge at the parabolic point N = 3 transports the Jordan block") {
  auto b = livne_daha_bridge(3, false);
  CHECK(b.secondary);
  // both sides are parabolic here
  auto g = livne_generators(6);
  CHECK(livne_parabolic(g));
  FamilyParams p;
  p.family = Family::Gamma;
  p.N = 3;
  p.twok = -3;
  auto V = build_family(p, make_cyclo_ctx(3, -3));
  auto th = V.ctx.thalf();
  auto prof = jordan_profile(V.T, std::vector<CS>{th, -th.inv()});
  bool has2 = false;
  for (auto& [lam, blocks] : prof)
    for (long b2 : blocks) has2 = has2 || b2 == 2;
  CHECK(has2);
}

TEST_CASE("checkmark bridge: Delta[N;N] at N = 5 and 7") {
  for (long N : {5L, 7L}) {
    auto b = livne_daha_bridge(N, true);
    CHECK(b.solution_dim == 1);
    CHECK(b.secondary);
  }
}

TEST_CASE("uvw trace condition on the tau_l family") {
  // interior angles 0 < phi < pi/2, i.e. l > 4 (at l = 4 the determinant
  // degenerates to 0 on the boundary)
  for (long l : {5L, 8L, 12L}) {
    auto F = CycloField::get(6 * l);
    auto tau = CS::zeta(F, 4) + CS::zeta(F, 6 * l - 2);
    // u = eps1 tau, v = eps2 tau, w = eps3 tau with eps1 eps2 eps3 = 1
    auto eps = CS::zeta(F, l);  // some unimodular value
    auto u = eps * tau, v = eps.inv() * tau, w = tau;
    auto rep = uvw_condition(u, v, w, l);
    CHECK(rep.condition);
    CHECK(rep.semisimple);
    CHECK(rep.eigencheck);
    // determinant of the (2,1)-form is negative for 0 < phi < pi/2
    CHECK(rep.det_form == rep.det_form.star());
    CHECK(rep.det_form.embed(1).real() < -1e-9);
  }
  // a violating triple
  {
    long l = 5;
    auto F = CycloField::get(6 * l);
    auto tau = CS::zeta(F, 4) + CS::zeta(F, 6 * l - 2);
    auto rep = uvw_condition(tau, tau, tau + CS::one(F), l);
    CHECK_FALSE(rep.condition);
  }
}

TEST_CASE("explicit 3-dim matrices match the displayed blocks") {
  // T in the eps-combination basis has the displayed 2x2 block + t^{1/2};
  // check over the generic domain (valid for any q) and at a root of unity
  auto check_T = [](auto ctx) {
    using K = decltype(ctx.one());
    FamilyParams p;
    p.family = Family::Vpm;
    p.twok = -3;
    p.N = ctx.N;
    if (ctx.N > 0) p.family = Family::Gamma;
    auto V = build_family(p, ctx);
    auto labels = std::vector<long>{1, 2, 3};
    auto P = e_basis_matrix(V, labels, /*normalized=*/true);
    auto Tb = P.inverse() * V.T * P;
    auto th = ctx.thalf();
    auto one = ctx.one();
    auto t = ctx.t(), q = ctx.q();
    // rows/cols ordered {eps_1, eps_2, eps_3(~eps_0)}; the (2.9)-block sits on
    // the m = 1 pair {eps_1, eps_{-1} ~ eps_2} with the displayed entries
    K d = (one - t * q).inv();
    CHECK(Tb(0, 0) == (th - th.inv()) * d);
    CHECK(Tb(1, 0) == th.inv() * (one - t * t * q) * d);
    CHECK(Tb(0, 1) == th * (one - q) * d);
    CHECK(Tb(2, 2) == th);
    CHECK(Tb(2, 0).is_zero());
    CHECK(Tb(0, 2).is_zero());
    // Y is diagonal with (t^{1/2} q^{m/2})^{-1}-pattern
    auto Yb = P.inverse() * V.Y * P;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) CHECK(Yb(i, j).is_zero());
    CHECK(Yb(0, 0) == (th * ctx.q_pow_half(1)).inv());
    CHECK(Yb(1, 1) == (th * ctx.q_pow_half(2)).inv());
  };
  check_T(make_generic_ctx(-3));
  check_T(make_cyclo_ctx(5, -3));
  check_T(make_cyclo_ctx(4, -3));
}
