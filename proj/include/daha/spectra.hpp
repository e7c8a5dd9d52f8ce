#pragma once

// Per-embedding signature analysis of the invariant Hermitian forms, and the
// finite-image / discreteness-candidate scans. Diagonal norms are products of
// cyclotomic factors (1 - zeta^a); their sign at an embedding is decided by
// exact angle arithmetic over the integers, with a guarded floating
// cross-check (the float is never the authority).

#include <string>
#include <vector>

#include "daha/cyclotomic.hpp"
#include "daha/errors.hpp"

namespace daha {

// value = rat * zeta_c^{pre} * prod_i (1 - zeta_c^{a_i})^{e_i}
struct SignedProductForm {
  long conductor = 1;
  mpq_class rat = 1;
  long zeta_pre = 0;
  std::vector<std::pair<long, int>> factors;  // (exponent a, multiplicity e)
};

// exact sign of the form at zeta_c -> exp(2 pi i nu / c); 0 when a factor
// vanishes; Err::Internal if the value is not real (a misuse)
int sign_at(const SignedProductForm& f, long nu);

// double/mpfr evaluations for the cross-check
double float_at(const SignedProductForm& f, long nu);
double float_at_hiprec(const SignedProductForm& f, long nu);

// sign with the floating guard: exact decision cross-checked; a float within
// the guard band escalates to 256-bit evaluation before asserting agreement
int guarded_sign_at(const SignedProductForm& f, long nu, double guard = 1e-9);

// ---- family norm forms ----

// <e_m, e_m> as a product form over conductor c, with q = zeta_c^{q_exp} and
// t = zeta_c^{t_exp}.
inline SignedProductForm e_norm_form(long m, long c, long q_exp, long t_exp) {
  SignedProductForm f;
  f.conductor = c;
  long top = m > 0 ? m : -m + 1;  // |m-tilde|
  for (long j = 1; j < top; ++j) {
    auto md = [&](long v) { return ((v % c) + c) % c; };
    f.factors.emplace_back(md(q_exp * j), 1);
    f.factors.emplace_back(md(q_exp * j + 2 * t_exp), 1);
    f.factors.emplace_back(md(q_exp * j + t_exp), -2);
  }
  return f;
}

struct ScanRecord {
  std::string family;  // "alpha" | "gamma"
  bool checkmark = false;
  long N = 0;
  long twok = 0;  // 2k
  long dim = 0;
  std::vector<long> indefinite_nu;  // smallest representative of each bad place
  std::string cls;                  // finite-candidate | one-place-indefinite | other
  // The dim-2 checkmark series k = (N-2)/2 at even N enters the finite list
  // by its literal parameterization: the checkmark construction needs odd N
  // and its norm formulas hit 1 - q^2 t^2 = 0 there, so no scan backs it.
  bool scanned = true;
};

// scan one family member across all places {nu, 2N - nu}
ScanRecord signature_scan_family(const std::string& family, bool checkmark, long N, long twok);

// Theorem-1.6 style scan: all finite-candidates among (alpha) and integral-k
// (alpha-checkmark) for 1 < N <= N_max. jobs > 1 shards the grid.
std::vector<ScanRecord> finite_scan(long N_max, int jobs = 1);

// lists (3.3)-(3.6): exactly-one-indefinite-place records over
// (alpha, gamma, alpha-checkmark integral k, gamma-checkmark)
std::vector<ScanRecord> discrete_scan(long N_max, int jobs = 1);

// the (3.4) = (3.6) comparison: alpha-checkmark one-place records match the
// gamma-checkmark ones under k' = k - N/2, and both are the half-dimension
// shadows of the odd-N integral-k entries of (3.3)
bool lists_34_36_agree(const std::vector<ScanRecord>& records);

}  // namespace daha
