#pragma once

// Elliptic braid-group images: the normalized generators Atilde = XT,
// Btilde = q^{1/4}XTY, Ctilde = T^{-1}Y, Ttilde = q^{1/4}T, eigenvalue
// signatures, BFS group closures with projective hashing, projective orders,
// triangle-group relation checks, the dim-4 commutator structure, and the
// tau/jones machinery.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "daha/modrep_ext.hpp"

namespace daha {

template <class K>
struct GenSet {
  Matrix<K> A, B, C, T;  // Atilde, Btilde, Ctilde, Ttilde
  Matrix<K> X, Y, Traw;  // the underlying module generators
};

// Btilde needs q^{1/4}; requires an unscaled module over a domain holding it.
template <class K>
GenSet<K> braid_generators(const ModuleRep<K>& V) {
  require(!V.rescaled, Err::Domain, "braid generators need the unscaled module");
  GenSet<K> g;
  g.X = V.X;
  g.Y = V.Y;
  g.Traw = V.T;
  g.A = V.X * V.T;
  g.B = V.ctx.qq * (V.X * V.T * V.Y);
  auto Tinv = V.T - Matrix<K>::scalar(V.dim, V.ctx.thalf() - V.ctx.thalf().inv());
  g.C = Tinv * V.Y;
  g.T = V.ctx.qq * V.T;
  check(g.A * g.B * g.C == g.T, "ABC = T fails");
  check((g.A * g.A).is_identity() && (g.C * g.C).is_identity() && (g.B * g.B).is_identity(),
        "involutivity of A, B, C fails");
  return g;
}

// ---- DSP signatures ----

struct DSPSignature {
  long dim = 0;
  long l_a = 0, l_b = 0, l_c = 0;  // multiplicities of eigenvalue +1
  long n = 0;                      // [(dim+1)/2]
  long n_prime = 0;                // multiplicity of q^{1/4} t^{1/2} in Ttilde
  bool t_semisimple = true;
};

template <class K>
long eigen_multiplicity(const Matrix<K>& m, const K& lambda) {
  return m.rows() - shift_by(m, lambda).rank();
}

template <class K>
DSPSignature dsp_signature(const ModuleRep<K>& V) {
  auto g = braid_generators(V);
  const K one = V.ctx.one();
  DSPSignature s;
  s.dim = V.dim;
  s.n = (V.dim + 1) / 2;
  s.l_a = eigen_multiplicity(g.A, one);
  s.l_b = eigen_multiplicity(g.B, one);
  s.l_c = eigen_multiplicity(g.C, one);
  K lamT = V.ctx.qq * V.ctx.thalf();
  s.t_semisimple = !(V.ctx.t() == -one);
  require(s.t_semisimple, Err::NonSemisimpleT,
          "Ttilde multiplicities need t != -1; ask for the Jordan profile instead");
  s.n_prime = eigen_multiplicity(g.T, lamT);
  // exact split check: multiplicities of the two eigenvalues fill the space
  K lamT2 = -(V.ctx.qq * V.ctx.thalf().inv());
  check(s.n_prime + eigen_multiplicity(g.T, lamT2) == V.dim, "Ttilde multiplicity split fails");
  return s;
}

// ---- group closure ----

template <class K>
Matrix<K> projective_normalize(const Matrix<K>& m) {
  return normalize_first_unit(m);
}

struct ClosureStats {
  long order = 0;           // number of elements found
  long scalar_center = 0;   // number of scalar matrices among them (1 if projective)
  bool completed = false;   // false when the cap was hit
  long cap = 0;
};

template <class K>
struct GroupClosure {
  ClosureStats stats;
  std::vector<Matrix<K>> elements;  // normalized exact forms
};

// BFS closure over products with canonical (projective) normalization. The
// cap is a soft budget: hitting it reports completed = false, not an error.
template <class K>
GroupClosure<K> closure(const std::vector<Matrix<K>>& gens, bool projective, long cap = 2000000,
                        bool keep_elements = true) {
  GroupClosure<K> out;
  out.stats.cap = cap;
  if (gens.empty()) return out;
  const auto ctx = gens[0].ctx();
  std::unordered_set<std::string> seen;
  std::vector<Matrix<K>> frontier;
  auto norm = [&](const Matrix<K>& m) { return projective ? projective_normalize(m) : m; };
  auto push = [&](const Matrix<K>& m) {
    auto key = m.serialize();
    if (seen.insert(std::move(key)).second) {
      frontier.push_back(m);
      if (keep_elements) out.elements.push_back(m);
      return true;
    }
    return false;
  };
  push(norm(Matrix<K>::identity(gens[0].rows(), ctx)));
  std::vector<Matrix<K>> normgens;
  for (const auto& g : gens) {
    normgens.push_back(norm(g));
    push(normgens.back());
  }
  size_t cursor = 0;
  std::vector<Matrix<K>> work = frontier;
  while (cursor < work.size()) {
    if ((long)seen.size() > cap) {
      out.stats.order = static_cast<long>(seen.size());
      out.stats.completed = false;
      return out;
    }
    Matrix<K> cur = work[cursor++];
    for (const auto& g : normgens) {
      Matrix<K> prod = norm(cur * g);
      auto key = prod.serialize();
      if (seen.insert(std::move(key)).second) {
        work.push_back(prod);
        if (keep_elements) out.elements.push_back(prod);
      }
    }
  }
  out.stats.order = static_cast<long>(seen.size());
  out.stats.completed = true;
  if (keep_elements) {
    long scal = 0;
    for (const auto& m : out.elements)
      if (m.is_scalar()) ++scal;
    out.stats.scalar_center = scal;
  }
  return out;
}

// least r >= 1 with A^r scalar; nullopt past the cap (the infinite-order flag)
template <class K>
std::optional<long> projective_order(const Matrix<K>& a, long cap) {
  Matrix<K> p = a;
  for (long r = 1; r <= cap; ++r) {
    if (p.is_scalar()) return r;
    p = p * a;
  }
  return std::nullopt;
}

// ---- triangle-group verification (Prop on Delta(2N,2N,2N;2N)) ----

struct TriangleReport {
  bool involutions = false;
  long ord_x = 0, ord_y = 0, ord_z = 0, ord_abac = 0;
  long expected = 0;       // 2N (or N with checkmark)
  long ord_T = 0;          // order of Ttilde mod scalars
  long expected_T = 0;     // 2N/gcd(2N, N-2|k|) (non-checkmark)
  long ord_T2 = 0;         // order of Ttilde^2 mod scalars
  long expected_T2 = 0;    // N/gcd(N, 2|k|)
  bool pass = false;
};

template <class K>
TriangleReport triangle_check(const ModuleRep<K>& V) {
  require(V.family == Family::Alpha || V.family == Family::Gamma ||
              V.family == Family::GammaBullet || V.family == Family::AlphaBullet,
          Err::UnsupportedFamily, "triangle orders hold for the alpha/gamma families");
  auto g = braid_generators(V);
  const long N = V.ctx.N;
  const bool chk = V.ctx.checkmark;
  TriangleReport r;
  r.expected = chk ? N : 2 * N;
  long cap = 8 * r.expected + 8;
  r.involutions = (g.A * g.A).is_identity() && (g.B * g.B).is_identity() &&
                  (g.C * g.C).is_identity();
  auto x = g.A * g.B, y = g.B * g.C, z = g.C * g.A;
  auto abac = g.A * g.B * g.A * g.C;
  r.ord_x = projective_order(x, cap).value_or(-1);
  r.ord_y = projective_order(y, cap).value_or(-1);
  r.ord_z = projective_order(z, cap).value_or(-1);
  r.ord_abac = projective_order(abac, cap).value_or(-1);
  r.ord_T = projective_order(g.T, cap).value_or(-1);
  r.ord_T2 = projective_order(g.T * g.T, cap).value_or(-1);
  long abs2k = std::abs(V.ctx.twok);
  if (!chk) {
    r.expected_T = 2 * N / gcd_long(2 * N, std::abs(N - abs2k));
    r.expected_T2 = N / gcd_long(N, abs2k);
  } else {
    // ord(-t^2) and ord(t^4)-type values; left unchecked beyond x,y,z here
    r.expected_T = r.ord_T;
    r.expected_T2 = r.ord_T2;
  }
  r.pass = r.involutions && r.ord_x == r.expected && r.ord_y == r.expected &&
           r.ord_z == r.expected && r.ord_abac == r.expected && r.ord_T == r.expected_T &&
           r.ord_T2 == r.expected_T2;
  return r;
}

// x = ab maps to q^{1/4} Y: an exact identity, not just an order statement
template <class K>
bool triangle_map_identities(const ModuleRep<K>& V) {
  auto g = braid_generators(V);
  const auto& ctx = V.ctx;
  if (!(g.A * g.B == ctx.qq * V.Y)) return false;  // x -> q^{1/4} Y
  // y = bc -> q^{1/4} X T^2
  if (!(g.B * g.C == ctx.qq * (V.X * V.T * V.T))) return false;
  // z = ca -> Y^{-1} X^{-1}
  if (!(g.C * g.A == (V.X * V.Y).inverse())) return false;
  return true;
}

// ---- dim-4 commutator structure ----

struct CommutatorReport {
  bool relations_1_38 = false;  // XTX^{-1} = T^{-1}X^{-2} etc.
  bool z_identities = false;    // (Y^m X^{-m})^2 = Z projectively, odd m <= 7
  bool z_conjugation = false;   // XZX^{-1} = Z^{-1} = YZY^{-1}, TZ = ZT
  bool z_eigenvalues = false;   // {-1, t} on even and odd parts
  bool tau_triviality = false;  // tau_-(X^2) = Z = tau_+(Y^{-2}) mod scalars
  std::vector<long> invariant_factors;  // of <T^2, X^2, Y^2> mod scalars
  bool tower_map = false;       // X -> X^d relations in the target closure
};

namespace detail {

template <class K>
bool proportional(const Matrix<K>& a, const Matrix<K>& b) {
  // a = c b for a unit scalar c
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) {
      if (b(i, j).is_zero() != a(i, j).is_zero()) return false;
      if (!b(i, j).is_zero()) {
        K c = a(i, j) * b(i, j).inv();
        return a == c * b;
      }
    }
  return a == b;
}

// Smith normal form (invariant factors) of an integer relation lattice given
// as rows; small sizes only.
inline std::vector<long> smith_invariants(std::vector<std::vector<long>> rows, long ncols) {
  long r = static_cast<long>(rows.size());
  std::vector<long> out;
  long row0 = 0, col0 = 0;
  while (row0 < r && col0 < ncols) {
    // find a pivot with minimal nonzero absolute value
    long pi = -1, pj = -1;
    long best = 0;
    for (long i = row0; i < r; ++i)
      for (long j = col0; j < ncols; ++j)
        if (rows[i][j] != 0 && (best == 0 || std::abs(rows[i][j]) < best)) {
          best = std::abs(rows[i][j]);
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    std::swap(rows[pi], rows[row0]);
    for (auto& row : rows) std::swap(row[pj], row[col0]);
    bool clean = true;
    for (long i = row0 + 1; i < r; ++i)
      if (rows[i][col0] != 0) {
        long q = rows[i][col0] / rows[row0][col0];
        for (long j = col0; j < ncols; ++j) rows[i][j] -= q * rows[row0][j];
        if (rows[i][col0] != 0) clean = false;
      }
    // column operations are implicit: eliminate along the row as well
    for (long j = col0 + 1; j < ncols; ++j)
      if (rows[row0][j] != 0) {
        long q = rows[row0][j] / rows[row0][col0];
        for (long i = row0; i < r; ++i) rows[i][j] -= q * rows[i][col0];
        if (rows[row0][j] != 0) clean = false;
      }
    if (!clean) continue;  // repeat with a smaller pivot
    out.push_back(std::abs(rows[row0][col0]));
    ++row0;
    ++col0;
  }
  while ((long)out.size() < ncols) out.push_back(0);
  // enforce divisibility d1 | d2 | ...
  for (size_t i = 0; i + 1 < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j) {
      long a = out[i], b = out[j];
      if (a == 0 && b == 0) continue;
      long g = gcd_long(a, b);
      long l = (a == 0 || b == 0) ? 0 : a / g * b;
      out[i] = g;
      out[j] = l;
    }
  std::sort(out.begin(), out.end(), [](long a, long b) {
    if ((a == 0) != (b == 0)) return b == 0;
    return a < b;
  });
  return out;
}

}  // namespace detail

// invariant factors of the abelian subgroup <T^2, X^2, Y^2> modulo scalars
template <class K>
std::vector<long> abelian_invariants_TXY2(const ModuleRep<K>& V, long cap = 4096) {
  Matrix<K> g1 = V.T * V.T, g2 = V.X * V.X, g3 = V.Y * V.Y;
  // commutativity modulo scalars
  check(detail::proportional(g1 * g2, g2 * g1) && detail::proportional(g1 * g3, g3 * g1) &&
            detail::proportional(g2 * g3, g3 * g2),
        "T^2, X^2, Y^2 do not commute projectively");
  long r1 = projective_order(g1, cap).value_or(0);
  long r2 = projective_order(g2, cap).value_or(0);
  long r3 = projective_order(g3, cap).value_or(0);
  check(r1 > 0 && r2 > 0 && r3 > 0, "infinite projective order in the abelian part");
  std::unordered_map<std::string, std::array<long, 3>> seen;
  std::vector<std::vector<long>> rel = {{r1, 0, 0}, {0, r2, 0}, {0, 0, r3}};
  Matrix<K> p1 = Matrix<K>::identity(V.dim, V.ctx.dom);
  for (long a = 0; a < r1; ++a) {
    Matrix<K> p2 = p1;
    for (long b = 0; b < r2; ++b) {
      Matrix<K> p3 = p2;
      for (long c = 0; c < r3; ++c) {
        auto key = projective_normalize(p3).serialize();
        auto it = seen.find(key);
        if (it == seen.end()) {
          seen.emplace(std::move(key), std::array<long, 3>{a, b, c});
        } else {
          rel.push_back({a - it->second[0], b - it->second[1], c - it->second[2]});
        }
        p3 = p3 * g3;
      }
      p2 = p2 * g2;
    }
    p1 = p1 * g1;
  }
  auto inv = detail::smith_invariants(std::move(rel), 3);
  std::vector<long> out;
  for (long d : inv)
    if (d != 1) out.push_back(d);
  return out;
}

// relations (1.38)-style plus the Z-element identities on a dim-4 module
template <class K>
CommutatorReport commutator_structure(const ModuleRep<K>& V) {
  require(V.dim == 4, Err::UnsupportedFamily, "commutator structure is the dim-4 series");
  const auto& ctx = V.ctx;
  CommutatorReport rep;
  auto Xi = V.X.inverse(), Yi = V.Y.inverse(),
       Ti = V.T - Matrix<K>::scalar(4, ctx.thalf() - ctx.thalf().inv());
  // XTX^{-1} = T^{-1}X^{-2}, YT^{-1}Y^{-1} = TY^{-2},
  // Y^{-1}X^2Y = qX^{-2}, X^{-1}Y^2X = q^{-1}Y^{-2}   (exact, with the scalars)
  rep.relations_1_38 = (V.X * V.T * Xi == Ti * Xi * Xi) &&
                       (V.Y * Ti * Yi == V.T * Yi * Yi) &&
                       (Yi * V.X * V.X * V.Y == ctx.q() * (Xi * Xi)) &&
                       (Xi * V.Y * V.Y * V.X == ctx.q().inv() * (Yi * Yi));
  Matrix<K> Z = V.Y * V.Y * Ti * Ti * Xi * Xi;
  rep.z_identities = true;
  for (long m = 1; m <= 7; m += 2) {
    Matrix<K> w = V.Y.pow(m) * V.X.pow(-m);
    rep.z_identities = rep.z_identities && detail::proportional(w * w, Z);
  }
  rep.z_conjugation = detail::proportional(V.X * Z * Xi, Z.inverse()) &&
                      detail::proportional(V.Y * Z * Yi, Z.inverse()) &&
                      detail::proportional(V.T * Z, Z * V.T);
  // Z restricted to even/odd has eigenvalues {-1, t}
  rep.z_eigenvalues = true;
  if (V.has_quotient) {
    for (auto flavor : {SymFlavor::Even, SymFlavor::Odd}) {
      auto S = sym_subspace(V, flavor);
      auto Zr = detail::restrict_to(S.basis, Z, ctx.dom);
      auto one = ctx.one();
      bool ok = (shift_by(Zr, -one).rank() == 1) && (shift_by(Zr, ctx.t()).rank() == 1);
      rep.z_eigenvalues = rep.z_eigenvalues && ok;
    }
  }
  // tau-triviality: tau_-(X^2) = Z = tau_+(Y^{-2}) up to scalars
  Matrix<K> tminusX2 = (ctx.qq * (V.Y * V.X)).pow(2);
  Matrix<K> tplusYm2 = (ctx.qq.inv() * (V.X * V.Y)).pow(-2);
  rep.tau_triviality =
      detail::proportional(tminusX2, Z) && detail::proportional(tplusYm2, Z);
  rep.invariant_factors = abelian_invariants_TXY2(V);
  return rep;
}

// The tower map X -> X^d, Y -> Y^d, T -> T^d for odd d | N: the source
// presentation relations, transported to d-th powers, must hold in the target
// module modulo scalars and the cyclic group <Z_target>.
template <class K>
bool tower_map_check(const ModuleRep<K>& target, long d, long M_src, long N_src) {
  require(d % 2 == 1, Err::ParamWindow, "tower map needs odd d");
  const auto& ctx = target.ctx;
  Matrix<K> X = target.X.pow(d), Y = target.Y.pow(d), T = target.T.pow(d);
  Matrix<K> Xi = X.inverse(), Yi = Y.inverse(), Ti = T.inverse();
  Matrix<K> Zt = target.Y * target.Y *
                 (target.T - Matrix<K>::scalar(4, ctx.thalf() - ctx.thalf().inv())).pow(2) *
                 target.X.inverse().pow(2);
  long zord = projective_order(Zt, 64).value_or(0);
  check(zord > 0, "target Z has runaway order");
  auto trivial_mod_z = [&](const Matrix<K>& w) {
    Matrix<K> acc = w;
    for (long j = 0; j < zord; ++j) {
      if (acc.is_scalar()) return true;
      acc = acc * Zt;
    }
    return false;
  };
  std::vector<Matrix<K>> words = {
      X * T * Xi * (Ti * Xi * Xi).inverse(),  Y * Ti * Yi * (T * Yi * Yi).inverse(),
      Yi * X * X * Y * X * X,                 Xi * Y * Y * X * Y * Y,
      T.pow(2 * M_src),                       X.pow(2 * N_src),
      Y.pow(2 * N_src)};
  for (const auto& w : words)
    if (!trivial_mod_z(w)) return false;
  return true;
}

// ---- tau matrices and refined evaluations ----

enum class TauKind { Plus, Minus, PlusInv, MinusInv, Sigma };

template <class K>
std::vector<Matrix<K>> tau_images(const ModuleRep<K>& V, TauKind kind) {
  const auto& ctx = V.ctx;
  switch (kind) {
    case TauKind::Plus: return {V.X, ctx.qq.inv() * (V.X * V.Y), V.T};
    case TauKind::Minus: return {ctx.qq * (V.Y * V.X), V.Y, V.T};
    case TauKind::PlusInv: return {V.X, ctx.qq * (V.X.inverse() * V.Y), V.T};
    case TauKind::MinusInv: return {ctx.qq.inv() * (V.Y.inverse() * V.X), V.Y, V.T};
    case TauKind::Sigma: return {V.Y.inverse(), V.X * V.T * V.T, V.T};
  }
  fail(Err::Internal, "unknown tau kind");
}

// The matrix P with P g P^{-1} = tau(g) for g = X, Y, T; unique up to scalar
// when it exists (ENotInvariant otherwise).
template <class K>
Matrix<K> tau_matrix(const ModuleRep<K>& V, TauKind kind, uint64_t seed = 1) {
  auto h = intertwiner(generator_tuple(V), tau_images(V, kind), seed);
  require(h.has_value(), Err::NotInvariant, "tau does not act in this module");
  return *h;
}

// Evaluate the image of a module vector under a tau-word at X = t^{-1/2}.
// The word is applied left-to-right as a composition of automorphisms.
template <class K>
K jones_eval(const ModuleRep<K>& V, const std::vector<TauKind>& word,
             const std::vector<K>& vec) {
  require(V.has_quotient, Err::UnsupportedFamily, "jones evaluation needs representatives");
  Matrix<K> P = Matrix<K>::identity(V.dim, V.ctx.dom);
  for (const auto& kind : word) P = P * tau_matrix(V, kind);
  auto img = detail::apply_matrix(P, vec);
  return V.representative(img).eval(V.ctx.thalf().inv());
}

template <class K>
K jones_eval_e(const ModuleRep<K>& V, const std::vector<TauKind>& word, long n) {
  return jones_eval(V, word, V.reduce(e_poly(n, V.ctx)));
}

// center of a completed closure: elements commuting with every generator;
// certifies they are scalar powers of qdot
template <class K>
bool center_in_qdot_powers(const GroupClosure<K>& G, const std::vector<Matrix<K>>& gens,
                           const K& qdot) {
  for (const auto& m : G.elements) {
    bool central = true;
    for (const auto& g : gens) central = central && (m * g == g * m);
    if (!central) continue;
    if (!m.is_scalar()) return false;
    // scalar value must be a power of qdot
    K v = m(0, 0);
    K p = K::one(m.ctx());
    bool hit = false;
    for (int j = 0; j < 512 && !hit; ++j) {
      hit = (p == v);
      p = p * qdot;
    }
    if (!hit) return false;
  }
  return true;
}

}  // namespace daha
