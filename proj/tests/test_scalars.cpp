#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "daha/cyclotomic.hpp"
#include "daha/funcfield.hpp"
#include "daha/modring.hpp"

using namespace daha;

TEST_CASE("cyclotomic polynomial basics") {
  CHECK(cyclotomic_poly(1) == ZPoly{-1, 1});
  CHECK(cyclotomic_poly(2) == ZPoly{1, 1});
  CHECK(cyclotomic_poly(4) == ZPoly{1, 0, 1});
  CHECK(cyclotomic_poly(6) == ZPoly{1, -1, 1});
  CHECK(cyclotomic_poly(12) == ZPoly{1, 0, -1, 0, 1});
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(40) == 16);
}

TEST_CASE("field arithmetic in Q(zeta_12)") {
  auto F = CycloField::get(12);
  auto z = CycloScalar::zeta(F);
  CHECK(z.pow(12) == CycloScalar::one(F));
  CHECK_FALSE(z.pow(6) == CycloScalar::one(F));
  auto x = z + CycloScalar(F, mpq_class(1, 2));
  CHECK(x * x.inv() == CycloScalar::one(F));
  CHECK(x.star().star() == x);
  // star is a ring automorphism
  auto y = z.pow(5) - CycloScalar(F, 3);
  CHECK((x * y).star() == x.star() * y.star());
}

TEST_CASE("cyclo_embed examples") {
  // zeta_4 at nu=1 -> i
  auto F4 = CycloField::get(4);
  auto i = CycloScalar::zeta(F4);
  auto v = i.embed(1);
  CHECK(std::abs(v - std::complex<double>(0, 1)) < 1e-12);
  CHECK_THROWS_AS((void)i.embed(2), Error);

  // zeta_6 + zeta_6^{-1} -> 1 at nu = 1
  auto F6 = CycloField::get(6);
  auto w = CycloScalar::zeta(F6) + CycloScalar::zeta(F6, 5);
  CHECK(std::abs(w.embed(1) - std::complex<double>(1, 0)) < 1e-12);

  // |1 - zeta_5| at nu=2 equals 2 sin(2pi/5)
  auto F5 = CycloField::get(5);
  auto u = CycloScalar::one(F5) - CycloScalar::zeta(F5);
  double expect = 2.0 * std::sin(2.0 * M_PI / 5.0);  // |1 - e^{4 pi i/5}| = 2 sin(2 pi/5)
  CHECK(std::abs(std::abs(u.embed(2)) - expect) < 1e-12);

  // star embeds to the complex conjugate
  auto mixed = CycloScalar::zeta(F6) - CycloScalar(F6, mpq_class(2, 7));
  CHECK(std::abs(mixed.star().embed(1) - std::conj(mixed.embed(1))) < 1e-10);
}

TEST_CASE("galois_map examples and composition") {
  auto F8 = CycloField::get(8);
  auto z = CycloScalar::zeta(F8);
  CHECK(z.galois(3) == z.pow(3));
  auto F3 = CycloField::get(3);
  auto w = CycloScalar::one(F3) + CycloScalar::zeta(F3);
  CHECK(w.galois(2) == CycloScalar::one(F3) + CycloScalar::zeta(F3, 2));
  // composition: galois(M1) then galois(M2) = galois(M1*M2 mod n)
  auto F20 = CycloField::get(20);
  CycloScalar x(F20);
  for (long j = 0; j < F20->degree(); ++j) {
    mpq_class v(j * j - 3, j + 1);
    v.canonicalize();
    x.coeffs()[j] = v;
  }
  CHECK(x.galois(3).galois(7) == x.galois(21 % 20));
  // M = n-1 equals star
  CHECK(x.galois(19) == x.star());
  // embedding compatibility: galois then embed = embed at M*nu
  auto a = x.galois(7).embed(3), b = x.embed(21 % 20);
  CHECK(std::abs(a - b) < 1e-9);
}

TEST_CASE("subfield and overfield casts") {
  auto F12 = CycloField::get(12);
  auto F6 = CycloField::get(6);
  auto z6 = CycloScalar::zeta(F12, 2);  // zeta_12^2 = zeta_6
  auto down = cyclo_to_subfield(z6, F6);
  CHECK(down == CycloScalar::zeta(F6));
  CHECK(cyclo_to_overfield(down, F12) == z6);
  CHECK_THROWS_AS((void)cyclo_to_subfield(CycloScalar::zeta(F12), F6), Error);
}

TEST_CASE("FuncScalar arithmetic and star") {
  auto a = FuncScalar::a_pow(1);
  auto x = a * a - FuncScalar(1);           // a^2 - 1
  auto y = a - FuncScalar(1);               // a - 1
  auto q = x * y.inv();                     // a + 1
  CHECK(q == a + FuncScalar(1));
  CHECK(x.star() == (FuncScalar(1) - a * a) * FuncScalar::a_pow(-2));
  CHECK(a.star() == FuncScalar::a_pow(-1));
  CHECK((x * y).star() == x.star() * y.star());
  CHECK(x.star().star() == x);
  auto z = FuncScalar(mpq_class(3, 4));
  CHECK(z * z.inv() == FuncScalar(1));
}

TEST_CASE("Phi_6 mod 5 stays irreducible (ord_6(5) = 2)") {
  CHECK(ord_mod(5, 6) == 2);
  auto factors = cyclo_factor_mod_p(6, 5, 42);
  REQUIRE(factors.size() == 1);
  CHECK(poly_deg(factors[0]) == 2);
  auto ring = ModRing::make(6, 5, 1, 0, 42);
  CHECK(ring->degree() == 2);  // residue field F_25
}

TEST_CASE("Phi_3 mod 7 splits and Hensel-lifts to mod 49") {
  CHECK(ord_mod(7, 3) == 1);
  auto factors = cyclo_factor_mod_p(3, 7, 1);
  REQUIRE(factors.size() == 2);
  for (const auto& f : factors) CHECK(poly_deg(f) == 1);
  auto ring = ModRing::make(3, 7, 2, 0, 1);
  // zeta_3 maps to a root of the lifted factor: check Phi_3(zeta) = 0 mod 49
  auto z = ModScalar::zeta(ring);
  auto phi_at_z = z * z + z + ModScalar::one(ring);
  CHECK(phi_at_z.is_zero());
  CHECK_FALSE((z - ModScalar::one(ring)).is_zero());
}

TEST_CASE("reduce_mod: 1/2 -> 3 mod 5 at conductor 12") {
  auto ring = ModRing::make(12, 5, 1);
  auto F12 = CycloField::get(12);
  auto half = CycloScalar(F12, mpq_class(1, 2));
  auto r = reduce_mod(half, ring);
  CHECK(r == ModScalar(ring, 3));
  CHECK_THROWS_AS((void)reduce_mod(CycloScalar(F12, mpq_class(1, 5)), ring), Error);
}

TEST_CASE("reduce_mod commutes with ring operations") {
  auto ring = ModRing::make(12, 7, 2);
  auto F12 = CycloField::get(12);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    CycloScalar x(F12), y(F12);
    for (long j = 0; j < F12->degree(); ++j) {
      mpq_class vx(static_cast<long>(rng() % 19) - 9, 1 + (rng() % 3) * 2);
      mpq_class vy(static_cast<long>(rng() % 19) - 9, 1 + (rng() % 2) * 2);
      vx.canonicalize();
      vy.canonicalize();
      x.coeffs()[j] = vx;
      y.coeffs()[j] = vy;
    }
    CHECK(reduce_mod(x * y, ring) == reduce_mod(x, ring) * reduce_mod(y, ring));
    CHECK(reduce_mod(x + y, ring) == reduce_mod(x, ring) + reduce_mod(y, ring));
  }
}

TEST_CASE("mod ring units and inverses") {
  auto ring = ModRing::make(8, 3, 2, 0, 11);  // tagged: local ring
  auto z = ModScalar::zeta(ring);
  auto u = z + ModScalar::one(ring);
  if (u.is_unit()) CHECK(u * u.inv() == ModScalar::one(ring));
  auto three = ModScalar(ring, 3);
  CHECK_FALSE(three.is_unit());
  CHECK_THROWS_AS((void)three.inv(), Error);
  // sigma_{-1} does not fix this prime (ord_8(3)=2, -1 not in <3>), so star
  // must refuse rather than produce a non-homomorphism
  CHECK_FALSE(ring->star_defined());
  CHECK_THROWS_AS((void)z.star(), Error);
  // on the untagged ring star is always a ring automorphism
  auto full = ModRing::make(8, 3, 2);
  auto zf = ModScalar::zeta(full);
  auto uf = zf + ModScalar(full, 5);
  CHECK((zf * uf).star() == zf.star() * uf.star());
}
