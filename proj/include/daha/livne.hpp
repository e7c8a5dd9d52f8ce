#pragma once

// PU(2,1) triangle-group matrices: the Livne family J, I_1 at
// tau_l = e^{2 i phi/3} + e^{-i phi/3}, phi = 2 pi / l, the trace condition
// for I_123, and the conjugacy bridge to the 3-dimensional modules.

#include "daha/galois.hpp"

namespace daha {

struct PUGen {
  long l = 0;  // phi = 2 pi / l
  CycloFieldPtr field;  // Q(zeta_{6l})
  CycloScalar tau;
  Matrix<CycloScalar> J, I1, I2, I3, I123, I12;
};

inline PUGen livne_generators(long l) {
  require(l >= 3, Err::ParamWindow, "Livne family needs l >= 3");
  PUGen g;
  g.l = l;
  g.field = CycloField::get(6 * l);
  auto F = g.field;
  auto zero = CycloScalar::zero(F), one = CycloScalar::one(F);
  // e^{i phi / 3} = zeta_{3l} = zeta_{6l}^2
  g.tau = CycloScalar::zeta(F, 4) + CycloScalar::zeta(F, 6 * l - 2);
  auto taubar = g.tau.star();
  g.J = Matrix<CycloScalar>(3, 3, F);
  g.J(0, 2) = one;
  g.J(1, 0) = one;
  g.J(2, 1) = one;
  g.I1 = Matrix<CycloScalar>(3, 3, F);
  g.I1(0, 0) = one;
  g.I1(0, 1) = g.tau;
  g.I1(0, 2) = taubar;
  g.I1(1, 1) = -one;
  g.I1(2, 2) = -one;
  auto J2 = g.J * g.J;
  g.I2 = g.J * g.I1 * J2;
  g.I3 = J2 * g.I1 * g.J;
  g.I123 = g.I1 * g.I2 * g.I3;
  g.I12 = g.I1 * g.I2;
  check((g.J * g.J * g.J).is_identity(), "J^3 = 1 fails");
  check((g.I1 * g.I1).is_identity() && (g.I2 * g.I2).is_identity() &&
            (g.I3 * g.I3).is_identity(),
        "I_i^2 = 1 fails");
  check(g.I123 == (g.I1 * g.J).pow(3), "I123 = (I1 J)^3 fails");
  return g;
}

// the displayed eigenvalue tables: {-1,-1,1}_1, {1, e^{i phi}, e^{-i phi}}_12,
// {e^{2 i phi}, -e^{-i phi}, -e^{-i phi}}_123
inline bool livne_eigenvalue_tables(const PUGen& g) {
  auto F = g.field;
  auto one = CycloScalar::one(F);
  auto eiphi = CycloScalar::zeta(F, 6);  // e^{i phi} = zeta_l
  auto lin = [&](const CycloScalar& r) {
    // x - r as a charpoly factor accumulator handled below
    return r;
  };
  (void)lin;
  auto cp_of = [&](std::vector<CycloScalar> roots) {
    // expand prod (x - r); coefficients low-to-high
    std::vector<CycloScalar> c{one};
    for (const auto& r : roots) {
      std::vector<CycloScalar> nc(c.size() + 1, CycloScalar::zero(F));
      for (size_t i = 0; i < c.size(); ++i) {
        nc[i + 1] += c[i];
        nc[i] -= r * c[i];
      }
      c = std::move(nc);
    }
    return c;
  };
  bool ok = charpoly(g.I1) == cp_of({one, -one, -one});
  ok = ok && charpoly(g.I12) == cp_of({one, eiphi, eiphi.inv()});
  ok = ok && charpoly(g.I123) == cp_of({eiphi * eiphi, -eiphi.inv(), -eiphi.inv()});
  return ok;
}

inline bool livne_parabolic(const PUGen& g) {
  // semisimple iff the product of (I123 - lambda) over the DISTINCT
  // eigenvalues vanishes; at l = 6 the two values e^{2 i phi} = -e^{-i phi}
  // collide and a Jordan 2-block appears
  auto F = g.field;
  auto eiphi = CycloScalar::zeta(F, 6);
  auto l1 = eiphi * eiphi, l2 = -eiphi.inv();
  auto m = shift_by(g.I123, l1);
  if (!(l1 == l2)) m = m * shift_by(g.I123, l2);
  return !m.is_zero();
}

struct LivneBridge {
  Matrix<CycloScalar> h;  // conjugates (Atilde, Btilde, Ctilde) to (-I1, -I2, -I3)
  bool secondary = false;  // Ttilde -> -I123 and q^{1/4} Y -> I12 transported
  bool eigen_tables = false;
  long solution_dim = 0;
};

// Conjugacy between the braid generators on V^+_3 (k = -3/2) and the Livne
// triple at l = 2N (l = N with checkmark), over Q(zeta_{12N}).
inline LivneBridge livne_daha_bridge(long N, bool checkmark) {
  require(N >= 3, Err::ParamWindow, "bridge needs N >= 3");
  if (checkmark) require(N % 2 == 1, Err::ParamWindow, "checkmark bridge needs odd N");
  FamilyParams p;
  p.family = Family::Gamma;
  p.N = N;
  p.twok = -3;
  auto base = make_cyclo_ctx(N, -3);
  ModuleRep<CycloScalar> V = checkmark ? apply_checkmark(p, base) : build_family(p, base);
  auto g = braid_generators(V);
  long l = checkmark ? N : 2 * N;
  auto pu = livne_generators(l);
  auto big = CycloField::get(12 * N);
  auto lift = [&](const Matrix<CycloScalar>& m) {
    Matrix<CycloScalar> r(m.rows(), m.cols(), big);
    for (long i = 0; i < m.rows(); ++i)
      for (long j = 0; j < m.cols(); ++j) r(i, j) = cyclo_to_overfield(m(i, j), big);
    return r;
  };
  auto one = CycloScalar::one(big);
  std::vector<Matrix<CycloScalar>> R = {lift(g.A), lift(g.B), lift(g.C)};
  std::vector<Matrix<CycloScalar>> S = {(-one) * lift(pu.I1), (-one) * lift(pu.I2),
                                        (-one) * lift(pu.I3)};
  auto res = intertwiner_full(R, S);
  require(res.h.has_value(), Err::NoConjugator, "Livne bridge conjugator not found");
  LivneBridge out;
  out.h = *res.h;
  out.solution_dim = res.solution_dim;
  // secondary identifications ride along with the products:
  // Ttilde = A B C -> (-I1)(-I2)(-I3) = -I123 and q^{1/4} Y = A B -> I12
  auto hT = out.h * lift(g.T);
  out.secondary = (hT == (-one) * lift(pu.I123) * out.h) &&
                  (out.h * lift(V.ctx.qq * V.Y) == lift(pu.I12) * out.h);
  out.eigen_tables = livne_eigenvalue_tables(pu);
  return out;
}

// the (u, v, w) trace condition for I_123 and its eigenvalue certificate
struct UvwReport {
  bool condition = false;
  bool semisimple = false;
  bool eigencheck = false;  // eigenvalues {-q^{-1/2}, -q^{-1/2}, q} for q = e^{2 i phi}
  CycloScalar det_form;     // 2(Re(uvw) - |u|^2 - |v|^2 - |w|^2 + 4)
};

template <class K>
Matrix<K> uvw_I123(const K& u, const K& v, const K& w) {
  auto F = u.ctx();
  auto one = K::one(F), zero = K::zero(F);
  Matrix<K> I1(3, 3, F), I2(3, 3, F), I3(3, 3, F);
  I1(0, 0) = one;
  I1(0, 1) = u;
  I1(0, 2) = v.star();
  I1(1, 1) = -one;
  I1(2, 2) = -one;
  I2(0, 0) = -one;
  I2(1, 0) = u.star();
  I2(1, 1) = one;
  I2(1, 2) = w;
  I2(2, 2) = -one;
  I3(0, 0) = -one;
  I3(1, 1) = -one;
  I3(2, 0) = v;
  I3(2, 1) = w.star();
  I3(2, 2) = one;
  return I1 * I2 * I3;
}

// phi is passed as the pair (numerator, l): phi = 2 pi nu_over / l
inline UvwReport uvw_condition(const CycloScalar& u, const CycloScalar& v, const CycloScalar& w,
                               long l, long nu_over = 1) {
  auto F = u.field();
  require(F->conductor() % l == 0, Err::Domain, "field must contain e^{2 i phi}");
  auto e2iphi = CycloScalar::zeta(F, 2 * (F->conductor() / l) * nu_over);
  auto eminusiphi = CycloScalar::zeta(F, F->conductor() - (F->conductor() / l) * nu_over);
  UvwReport rep;
  auto lhs = CycloScalar(F, 3) + u * v * w - (u * u.star() + v * v.star() + w * w.star());
  auto rhs = e2iphi - CycloScalar(F, 2) * eminusiphi;
  rep.condition = lhs == rhs;
  auto I123 = uvw_I123(u, v, w);
  auto q = e2iphi;
  // -q^{-1/2} = -e^{-i phi}
  auto mqinvhalf = -eminusiphi;
  auto minpoly_test = shift_by(I123, q) * shift_by(I123, mqinvhalf);
  rep.semisimple = minpoly_test.is_zero();
  if (rep.condition) {
    auto one = CycloScalar::one(F);
    std::vector<CycloScalar> roots{q, mqinvhalf, mqinvhalf};
    std::vector<CycloScalar> cp{one};
    for (const auto& r : roots) {
      std::vector<CycloScalar> nc(cp.size() + 1, CycloScalar::zero(F));
      for (size_t i = 0; i < cp.size(); ++i) {
        nc[i + 1] += cp[i];
        nc[i] -= r * cp[i];
      }
      cp = std::move(nc);
    }
    rep.eigencheck = charpoly(I123) == cp;
  }
  auto re_uvw = (u * v * w + (u * v * w).star());
  rep.det_form = re_uvw - CycloScalar(F, 2) * (u * u.star() + v * v.star() + w * w.star()) +
                 CycloScalar(F, 8);
  return rep;
}

}  // namespace daha
