#pragma once

// Simultaneous-conjugation solver: given equal-length lists R, S of square
// matrices, find invertible h with h R_i = S_i h for all i. The solution
// space of the stacked Sylvester system is computed exactly; for irreducible
// R it is at most one-dimensional (Schur), and the returned representative is
// normalized so that its first unit entry in row-major order equals 1.

#include <optional>
#include <random>
#include <vector>

#include "daha/matrix.hpp"

namespace daha {

template <class K>
struct IntertwinerResult {
  std::optional<Matrix<K>> h;  // invertible, normalized; nullopt if none found
  long solution_dim = 0;       // dimension of the full Sylvester solution space
};

template <class K>
Matrix<K> normalize_first_unit(Matrix<K> h) {
  for (long i = 0; i < h.rows(); ++i)
    for (long j = 0; j < h.cols(); ++j)
      if (h(i, j).is_unit()) {
        K f = h(i, j).inv();
        return f * h;
      }
  return h;
}

template <class K>
IntertwinerResult<K> intertwiner_full(const std::vector<Matrix<K>>& R,
                                      const std::vector<Matrix<K>>& S, uint64_t seed = 1) {
  check(!R.empty() && R.size() == S.size(), "intertwiner: generator count mismatch");
  const long d = R[0].rows();
  for (const auto& m : R) check(m.rows() == d && m.cols() == d, "intertwiner: shape");
  for (const auto& m : S) check(m.rows() == d && m.cols() == d, "intertwiner: shape");
  const auto ctx = R[0].ctx();

  // Unknown h, row-major d^2 vector; equations h R_g - S_g h = 0.
  const long nunk = d * d;
  Matrix<K> sys(static_cast<long>(R.size()) * nunk, nunk, ctx);
  long row = 0;
  for (size_t g = 0; g < R.size(); ++g) {
    for (long i = 0; i < d; ++i)
      for (long j = 0; j < d; ++j) {
        for (long k = 0; k < d; ++k) {
          sys(row, i * d + k) += R[g](k, j);
          sys(row, k * d + j) -= S[g](i, k);
        }
        ++row;
      }
  }
  auto basis = kernel(sys);
  IntertwinerResult<K> res;
  res.solution_dim = static_cast<long>(basis.size());
  auto to_matrix = [&](const std::vector<K>& v) {
    Matrix<K> h(d, d, ctx);
    for (long i = 0; i < d; ++i)
      for (long j = 0; j < d; ++j) h(i, j) = v[i * d + j];
    return h;
  };
  auto invertible = [&](const Matrix<K>& h) {
    try {
      (void)h.inverse();
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  for (const auto& v : basis) {
    Matrix<K> h = to_matrix(v);
    if (invertible(h)) {
      res.h = normalize_first_unit(std::move(h));
      return res;
    }
  }
  if (basis.size() > 1) {
    // reducible case: look for an invertible element with small random combos
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
      Matrix<K> h(d, d, ctx);
      for (const auto& v : basis) {
        long c = static_cast<long>(rng() % 5) - 2;
        if (!c) continue;
        K kc = K::zero(ctx);
        for (long t = 0; t < std::abs(c); ++t) kc += K::one(ctx);
        if (c < 0) kc = -kc;
        Matrix<K> hv = to_matrix(v);
        h = h + kc * hv;
      }
      if (!h.is_zero() && invertible(h)) {
        res.h = normalize_first_unit(std::move(h));
        return res;
      }
    }
  }
  return res;
}

// The spec-level operation: just the optional conjugator.
template <class K>
std::optional<Matrix<K>> intertwiner(const std::vector<Matrix<K>>& R,
                                     const std::vector<Matrix<K>>& S, uint64_t seed = 1) {
  return intertwiner_full(R, S, seed).h;
}

}  // namespace daha
