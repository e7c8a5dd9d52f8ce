#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "daha/intertwiner.hpp"
#include "daha/matrix.hpp"

#include "daha/cyclotomic.hpp"
#include "daha/funcfield.hpp"

using namespace daha;

namespace {

Matrix<CycloScalar> random_invertible(long d, const CycloFieldPtr& F, std::mt19937_64& rng) {
  while (true) {
    Matrix<CycloScalar> g(d, d, F);
    for (long i = 0; i < d; ++i)
      for (long j = 0; j < d; ++j) {
        CycloScalar v(F);
        v.coeffs()[rng() % F->degree()] = static_cast<long>(rng() % 5) - 2;
        g(i, j) = v;
      }
    try {
      (void)g.inverse();
      return g;
    } catch (const Error&) {
    }
  }
}

}  // namespace

TEST_CASE("kernel basics") {
  auto F = CycloField::get(4);
  auto id3 = Matrix<CycloScalar>::identity(3, F);
  CHECK(kernel(id3).empty());
  Matrix<CycloScalar> z(2, 2, F);
  CHECK(kernel(z).size() == 2);
}

TEST_CASE("kernel: nontrivial null space with back-substitution check") {
  auto F = CycloField::get(12);
  auto z = CycloScalar::zeta(F);
  // rank-1 matrix v w^T has a 2-dim kernel in dim 3
  Matrix<CycloScalar> m(3, 3, F);
  std::vector<CycloScalar> v{z, z.pow(2), CycloScalar::one(F)};
  std::vector<CycloScalar> w{CycloScalar::one(F), z.pow(5), z.pow(7)};
  for (long i = 0; i < 3; ++i)
    for (long j = 0; j < 3; ++j) m(i, j) = v[i] * w[j];
  CHECK(kernel(m).size() == 2);
}

TEST_CASE("inverse and rank over Q(a)") {
  FuncScalar::Ctx ctx;
  auto a = FuncScalar::a_pow(1);
  Matrix<FuncScalar> m(2, 2, ctx);
  m(0, 0) = a;
  m(0, 1) = FuncScalar(1);
  m(1, 0) = FuncScalar(1);
  m(1, 1) = a.inv();
  CHECK(m.rank() == 1);  // det = 0
  m(1, 1) = a;
  CHECK(m.rank() == 2);
  CHECK(m * m.inverse() == Matrix<FuncScalar>::identity(2, ctx));
}

TEST_CASE("intertwiner recovers a conjugation") {
  auto F = CycloField::get(8);
  std::mt19937_64 rng(5);
  const long d = 4;
  std::vector<Matrix<CycloScalar>> R;
  for (int g = 0; g < 2; ++g) R.push_back(random_invertible(d, F, rng));
  auto gmat = random_invertible(d, F, rng);
  auto ginv = gmat.inverse();
  std::vector<Matrix<CycloScalar>> S;
  for (const auto& r : R) S.push_back(gmat * r * ginv);
  auto res = intertwiner_full(R, S);
  REQUIRE(res.h.has_value());
  for (size_t i = 0; i < R.size(); ++i) CHECK((*res.h) * R[i] == S[i] * (*res.h));
  // self-intertwining contains the identity direction
  auto self_res = intertwiner_full(R, R);
  REQUIRE(self_res.h.has_value());
}

TEST_CASE("jordan_profile basics") {
  auto F = CycloField::get(4);
  auto one = CycloScalar::one(F);
  auto two = one + one;
  Matrix<CycloScalar> d3(3, 3, F);
  d3(0, 0) = one;
  d3(1, 1) = one;
  d3(2, 2) = two;
  auto prof = jordan_profile(d3, {one, two});
  REQUIRE(prof.size() == 2);
  CHECK(prof[0].second == std::vector<long>{1, 1});
  CHECK(prof[1].second == std::vector<long>{1});

  // a genuine 2-block plus a 1-block at the same eigenvalue
  Matrix<CycloScalar> j(3, 3, F);
  j(0, 0) = one;
  j(0, 1) = one;
  j(1, 1) = one;
  j(2, 2) = one;
  auto prof2 = jordan_profile(j, {one});
  REQUIRE(prof2.size() == 1);
  CHECK(prof2[0].second == std::vector<long>{1, 2});

  CHECK_THROWS_AS((void)jordan_profile(d3, std::vector<CycloScalar>{one}), Error);
}

TEST_CASE("jordan_profile is conjugation invariant") {
  auto F = CycloField::get(4);
  auto one = CycloScalar::one(F);
  std::mt19937_64 rng(17);
  Matrix<CycloScalar> j(4, 4, F);
  auto z = CycloScalar::zeta(F);
  j(0, 0) = z;
  j(0, 1) = one;
  j(1, 1) = z;
  j(2, 2) = z;
  j(3, 3) = -z;
  auto g = random_invertible(4, F, rng);
  auto conj = g * j * g.inverse();
  auto p1 = jordan_profile(j, {z, -z});
  auto p2 = jordan_profile(conj, {z, -z});
  CHECK(p1 == p2);
}
