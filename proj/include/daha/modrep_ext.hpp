#pragma once

// Module-level structure on top of the raw constructors: e- and eps-bases,
// the invariant Hermitian form, symmetric/even/odd subspaces, and the fusion
// product on Y-spherical quotients.

#include "daha/modrep.hpp"

namespace daha {

// columns = images of e_m (or eps_m) for the family's label set
template <class K>
Matrix<K> e_basis_matrix(const ModuleRep<K>& V, const std::vector<long>& labels,
                         bool normalized = false) {
  require(V.has_quotient, Err::UnsupportedFamily, "e-basis needs a quotient realization");
  Matrix<K> P(V.dim, static_cast<long>(labels.size()), V.ctx.dom);
  for (size_t j = 0; j < labels.size(); ++j) {
    auto col = V.reduce(normalized ? eps_poly(labels[j], V.ctx) : e_poly(labels[j], V.ctx));
    for (long i = 0; i < V.dim; ++i) P(i, j) = col[i];
  }
  return P;
}

template <class K>
std::vector<long> module_labels(const ModuleRep<K>& V) {
  return e_basis_labels(V.family == Family::GammaBullet ? Family::Gamma : V.family, V.ctx.N,
                        V.ctx.twok);
}

// Y is diagonal on the e-basis with the (1.7)-eigenvalues; a cheap exactness
// witness for the simple-spectrum families.
template <class K>
void verify_y_spectrum(const ModuleRep<K>& V) {
  auto labels = module_labels(V);
  require(!labels.empty(), Err::UnsupportedFamily, "no e-basis labels for this family");
  auto P = e_basis_matrix(V, labels);
  auto Pinv = P.inverse();  // also certifies the e-images form a basis
  auto D = Pinv * V.Y * P;
  for (long i = 0; i < V.dim; ++i)
    for (long j = 0; j < V.dim; ++j) {
      if (i == j) {
        K lam = V.rescaled ? detail::yhat_eigenvalue(labels[i], V.ctx)
                           : y_eigenvalue(labels[i], V.ctx);
        check(D(i, j) == lam, "Y eigenvalue mismatch on e-basis");
      } else {
        check(D(i, j).is_zero(), "Y not diagonal on e-basis");
      }
    }
}

template <class K>
struct HermitianData {
  std::vector<long> labels;  // e-basis labels
  std::vector<K> norms;      // diagonal values, star-fixed
  Matrix<K> basis;           // e-basis columns in module coordinates
  Matrix<K> gram;            // form on module coordinates: <u, v> = u^T G v*
};

// invariance: H^T G = G star(H)^{-1} for H = X, Y, T
template <class K>
bool form_invariant(const Matrix<K>& G, const ModuleRep<K>& V) {
  for (const Matrix<K>* H : {&V.X, &V.Y, &V.T}) {
    auto lhs = H->transpose() * G;
    auto rhs = G * H->map_entries([](const K& x) { return x.star(); }).inverse();
    if (lhs != rhs) return false;
  }
  return true;
}

template <class K>
HermitianData<K> hermitian_data(const ModuleRep<K>& V) {
  require(V.family == Family::Alpha || V.family == Family::Gamma ||
              V.family == Family::GammaBullet || V.family == Family::Prime2n ||
              V.family == Family::Vpm,
          Err::UnsupportedFamily, "hermitian data needs an e-basis family");
  HermitianData<K> H;
  H.labels = module_labels(V);
  H.basis = e_basis_matrix(V, H.labels);
  for (long m : H.labels) {
    K d = e_norm(m, V.ctx);
    check(d == d.star(), "diagonal norm not star-fixed");
    H.norms.push_back(d);
  }
  auto Binv = H.basis.inverse();
  Matrix<K> D(V.dim, V.dim, V.ctx.dom);
  for (long i = 0; i < V.dim; ++i) D(i, i) = H.norms[i];
  H.gram = Binv.transpose() * D * Binv.map_entries([](const K& x) { return x.star(); });
  check(form_invariant(H.gram, V), "hermitian form fails invariance");
  return H;
}

// ---- subspaces ----

enum class SymFlavor { Sym, Even, Odd, SymOdd };

template <class K>
struct Subspace {
  std::vector<std::vector<K>> basis;  // row vectors in module coordinates
  // restricted generator matrices; for Even/Odd these act under X^2, Y^2, T
  Matrix<K> X, Y, T;
  bool restricted = false;
};

template <class K>
Subspace<K> sym_subspace(const ModuleRep<K>& V, SymFlavor flavor) {
  const auto& dom = V.ctx.dom;
  Subspace<K> S;
  if (flavor == SymFlavor::Sym || flavor == SymFlavor::SymOdd) {
    require(!(V.ctx.t() == -V.ctx.one()), Err::NonSemisimpleT,
            "T is not semisimple at t = -1");
  }
  auto parity_span = [&](int parity) {
    std::vector<std::vector<K>> rows;
    require(V.has_quotient, Err::UnsupportedFamily, "even/odd parts need a quotient basis");
    for (long e = 2 * V.lo - 2 * V.dim; e <= 2 * V.hi + 2 * V.dim; ++e) {
      if (((e % 2) + 2) % 2 != parity) continue;
      rows.push_back(V.reduce(LaurentPoly<K>::monomial(dom, e, V.ctx.one())));
    }
    return detail::row_space_basis(std::move(rows), dom);
  };
  switch (flavor) {
    case SymFlavor::Sym: {
      K th = V.rescaled ? V.ctx.one() : V.ctx.thalf();
      S.basis = kernel(shift_by(V.T, th));
      break;
    }
    case SymFlavor::Even:
    case SymFlavor::Odd: {
      S.basis = parity_span(flavor == SymFlavor::Even ? 0 : 1);
      S.basis = detail::row_space_basis(std::move(S.basis), dom);
      S.X = detail::restrict_to(S.basis, V.X * V.X, dom);
      S.Y = detail::restrict_to(S.basis, V.Y * V.Y, dom);
      S.T = detail::restrict_to(S.basis, V.T, dom);
      S.restricted = true;
      break;
    }
    case SymFlavor::SymOdd: {
      K th = V.rescaled ? V.ctx.one() : V.ctx.thalf();
      auto sym = kernel(shift_by(V.T, th));
      auto odd = parity_span(1);
      // intersection via kernel of [sym^T | -odd^T]
      const long ns = static_cast<long>(sym.size()), no = static_cast<long>(odd.size());
      Matrix<K> A(V.dim, ns + no, dom);
      for (long j = 0; j < ns; ++j)
        for (long i = 0; i < V.dim; ++i) A(i, j) = sym[j][i];
      for (long j = 0; j < no; ++j)
        for (long i = 0; i < V.dim; ++i) A(i, ns + j) = -odd[j][i];
      for (const auto& comb : kernel(A)) {
        std::vector<K> v(V.dim, K::zero(dom));
        for (long j = 0; j < ns; ++j)
          for (long i = 0; i < V.dim; ++i) v[i] += comb[j] * sym[j][i];
        bool nz = false;
        for (const auto& x : v) nz = nz || !x.is_zero();
        if (nz) S.basis.push_back(std::move(v));
      }
      S.basis = detail::row_space_basis(std::move(S.basis), dom);
      break;
    }
  }
  return S;
}

// ---- fusion on Y-spherical quotients ----

// product of two module elements (by representatives), reduced
template <class K>
std::vector<K> fusion_product(const ModuleRep<K>& V, const std::vector<K>& f,
                              const std::vector<K>& g) {
  require(V.has_quotient, Err::UnsupportedFamily,
          "fusion product needs a Y-spherical quotient realization");
  return V.reduce(V.representative(f) * V.representative(g));
}

// images of the symmetric p_j in module coordinates, j = 0..count-1
template <class K>
std::vector<std::vector<K>> sym_p_basis(const ModuleRep<K>& V, long count) {
  std::vector<std::vector<K>> out;
  for (long j = 0; j < count; ++j) out.push_back(V.reduce(p_poly(j, V.ctx)));
  return out;
}

// structure constants of p_i * p_j in the p-basis
template <class K>
std::vector<K> fusion_sym(const ModuleRep<K>& V, long i, long j, long count) {
  auto basis = sym_p_basis(V, count);
  auto prod = fusion_product(V, basis[i], basis[j]);
  // solve B c = prod
  Matrix<K> B(V.dim, count + 1, V.ctx.dom);
  for (long c = 0; c < count; ++c)
    for (long r = 0; r < V.dim; ++r) B(r, c) = basis[c][r];
  for (long r = 0; r < V.dim; ++r) B(r, count) = -prod[r];
  auto ker = kernel(B);
  for (const auto& k : ker) {
    if (k[count].is_zero()) continue;
    K inv = k[count].inv();
    std::vector<K> coeffs(count, K::zero(V.ctx.dom));
    for (long c = 0; c < count; ++c) coeffs[c] = k[c] * inv;
    return coeffs;
  }
  fail(Err::Domain, "product does not lie in the symmetric span");
}

}  // namespace daha
