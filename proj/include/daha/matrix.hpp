#pragma once

// Dense exact linear algebra over the scalar domains. Elimination only ever
// divides by unit pivots; kernels and solves are verified by back-substitution
// in debug paths. One scalar domain per matrix.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "daha/errors.hpp"

namespace daha {

template <class K>
class Matrix {
 public:
  using Ctx = typename K::Ctx;

  Matrix() : rows_(0), cols_(0) {}
  Matrix(long rows, long cols, const Ctx& ctx)
      : rows_(rows), cols_(cols), ctx_(ctx), a_(rows * cols, K::zero(ctx)) {}

  static Matrix identity(long n, const Ctx& ctx) {
    Matrix m(n, n, ctx);
    for (long i = 0; i < n; ++i) m(i, i) = K::one(ctx);
    return m;
  }
  static Matrix scalar(long n, const K& c) {
    Matrix m(n, n, c.ctx());
    for (long i = 0; i < n; ++i) m(i, i) = c;
    return m;
  }

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  const Ctx& ctx() const { return ctx_; }

  K& operator()(long i, long j) { return a_[i * cols_ + j]; }
  const K& operator()(long i, long j) const { return a_[i * cols_ + j]; }
  const std::vector<K>& entries() const { return a_; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_scalar() const {
    if (rows_ != cols_) return false;
    for (long i = 0; i < rows_; ++i)
      for (long j = 0; j < cols_; ++j)
        if (i != j && !a_[i * cols_ + j].is_zero()) return false;
    for (long i = 1; i < rows_; ++i)
      if (!((*this)(i, i) == (*this)(0, 0))) return false;
    return true;
  }
  bool is_identity() const {
    return is_scalar() && rows_ > 0 && (*this)(0, 0) == K::one(ctx_);
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    check(x.rows_ == y.rows_ && x.cols_ == y.cols_, "matrix shape mismatch");
    Matrix r = x;
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    check(x.rows_ == y.rows_ && x.cols_ == y.cols_, "matrix shape mismatch");
    Matrix r = x;
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= y.a_[i];
    return r;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    check(x.cols_ == y.rows_, "matrix shape mismatch");
    Matrix r(x.rows_, y.cols_, x.ctx_);
    for (long i = 0; i < x.rows_; ++i)
      for (long k = 0; k < x.cols_; ++k) {
        const K& v = x(i, k);
        if (v.is_zero()) continue;
        for (long j = 0; j < y.cols_; ++j) {
          if (y(k, j).is_zero()) continue;
          r(i, j) += v * y(k, j);
        }
      }
    return r;
  }
  friend Matrix operator*(const K& c, const Matrix& y) {
    Matrix r = y;
    for (auto& x : r.a_) x = c * x;
    return r;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_, ctx_);
    for (long i = 0; i < rows_; ++i)
      for (long j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  // conjugate transpose with respect to the domain star
  Matrix star_transpose() const {
    Matrix r(cols_, rows_, ctx_);
    for (long i = 0; i < rows_; ++i)
      for (long j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j).star();
    return r;
  }
  Matrix map_entries(auto&& f) const {
    Matrix r = *this;
    for (auto& x : r.a_) x = f(x);
    return r;
  }

  Matrix pow(long e) const {
    check(rows_ == cols_, "pow of non-square matrix");
    Matrix base = *this, r = identity(rows_, ctx_);
    if (e < 0) {
      base = base.inverse();
      e = -e;
    }
    while (e) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  // Gauss-Jordan with unit pivots; works over fields and local rings.
  Matrix inverse() const {
    check(rows_ == cols_, "inverse of non-square matrix");
    Matrix a = *this, inv = identity(rows_, ctx_);
    for (long col = 0; col < cols_; ++col) {
      long pr = -1;
      for (long i = col; i < rows_; ++i)
        if (a(i, col).is_unit()) {
          pr = i;
          break;
        }
      require(pr >= 0, Err::Domain, "matrix not invertible (no unit pivot)");
      a.swap_rows(pr, col);
      inv.swap_rows(pr, col);
      K piv = a(col, col).inv();
      a.scale_row(col, piv);
      inv.scale_row(col, piv);
      for (long i = 0; i < rows_; ++i) {
        if (i == col || a(i, col).is_zero()) continue;
        K f = a(i, col);
        a.addmul_row(i, col, -f);
        inv.addmul_row(i, col, -f);
      }
    }
    return inv;
  }

  long rank() const {
    Matrix a = *this;
    long r = 0;
    for (long col = 0; col < cols_ && r < rows_; ++col) {
      long pr = -1;
      for (long i = r; i < rows_; ++i)
        if (a(i, col).is_unit()) {
          pr = i;
          break;
        }
      if (pr < 0) {
        for (long i = r; i < rows_; ++i)
          require(a(i, col).is_zero(), Err::Domain,
                  "rank needs unit pivots (non-field ring without ideal tag?)");
        continue;
      }
      a.swap_rows(pr, r);
      K piv = a(r, col).inv();
      a.scale_row(r, piv);
      for (long i = r + 1; i < rows_; ++i) {
        if (a(i, col).is_zero()) continue;
        a.addmul_row(i, r, -a(i, col));
      }
      ++r;
    }
    return r;
  }

  void swap_rows(long i, long j) {
    if (i == j) return;
    for (long k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void scale_row(long i, const K& c) {
    for (long k = 0; k < cols_; ++k) (*this)(i, k) = c * (*this)(i, k);
  }
  void addmul_row(long i, long j, const K& c) {  // row_i += c * row_j
    for (long k = 0; k < cols_; ++k) (*this)(i, k) += c * (*this)(j, k);
  }

  std::string serialize() const {
    std::string s = std::to_string(rows_) + "x" + std::to_string(cols_);
    for (const auto& x : a_) {
      s += '|';
      s += x.serialize();
    }
    return s;
  }

 private:
  long rows_, cols_;
  Ctx ctx_;
  std::vector<K> a_;
};

// Exact null-space basis via Gauss-Jordan; requires a field-like domain
// (every nonzero entry a unit along the elimination path).
template <class K>
std::vector<std::vector<K>> kernel(const Matrix<K>& m) {
  const long rows = m.rows(), cols = m.cols();
  Matrix<K> a = m;
  std::vector<long> pivot_of_col(cols, -1);
  long r = 0;
  for (long col = 0; col < cols && r < rows; ++col) {
    long pr = -1;
    for (long i = r; i < rows; ++i)
      if (a(i, col).is_unit()) {
        pr = i;
        break;
      }
    if (pr < 0) {
      for (long i = r; i < rows; ++i)
        require(a(i, col).is_zero(), Err::Domain, "kernel requires a field domain");
      continue;
    }
    a.swap_rows(pr, r);
    K piv = a(r, col).inv();
    a.scale_row(r, piv);
    for (long i = 0; i < rows; ++i) {
      if (i == r || a(i, col).is_zero()) continue;
      a.addmul_row(i, r, -a(i, col));
    }
    pivot_of_col[col] = r;
    ++r;
  }
  std::vector<std::vector<K>> basis;
  for (long col = 0; col < cols; ++col) {
    if (pivot_of_col[col] >= 0) continue;
    std::vector<K> v(cols, K::zero(m.ctx()));
    v[col] = K::one(m.ctx());
    for (long c2 = 0; c2 < cols; ++c2)
      if (pivot_of_col[c2] >= 0) v[c2] = -a(pivot_of_col[c2], col);
    basis.push_back(std::move(v));
  }
  // exact back-substitution check
  for (const auto& v : basis)
    for (long i = 0; i < rows; ++i) {
      K s = K::zero(m.ctx());
      for (long j = 0; j < cols; ++j) s += m(i, j) * v[j];
      check(s.is_zero(), "kernel verification failed");
    }
  return basis;
}

template <class K>
Matrix<K> conjugate(const Matrix<K>& h, const Matrix<K>& a) {  // h a h^{-1}
  return h * a * h.inverse();
}

// Matrix of (A - lambda)
template <class K>
Matrix<K> shift_by(const Matrix<K>& a, const K& lambda) {
  Matrix<K> r = a;
  for (long i = 0; i < r.rows(); ++i) r(i, i) -= lambda;
  return r;
}

// Jordan block-size multisets from ranks of powers of (A - lambda).
// The supplied eigenvalues must exhaust the spectrum.
template <class K>
std::vector<std::pair<K, std::vector<long>>> jordan_profile(const Matrix<K>& a,
                                                            const std::vector<K>& eigenvalues0) {
  const long n = a.rows();
  check(n == a.cols(), "jordan_profile of non-square matrix");
  std::vector<K> eigenvalues;
  for (const auto& lam : eigenvalues0) {
    bool seen = false;
    for (const auto& mu : eigenvalues) seen = seen || mu == lam;
    if (!seen) eigenvalues.push_back(lam);
  }
  {
    Matrix<K> prod = Matrix<K>::identity(n, a.ctx());
    for (const auto& lam : eigenvalues) prod = prod * shift_by(a, lam).pow(n);
    require(prod.is_zero(), Err::IncompleteSpectrum,
            "supplied eigenvalues do not exhaust the spectrum");
  }
  std::vector<std::pair<K, std::vector<long>>> out;
  for (const auto& lam : eigenvalues) {
    Matrix<K> s = shift_by(a, lam);
    std::vector<long> ranks{n};  // rank of s^0
    Matrix<K> powm = Matrix<K>::identity(n, a.ctx());
    while (true) {
      powm = powm * s;
      long rk = powm.rank();
      ranks.push_back(rk);
      if (rk == ranks[ranks.size() - 2]) break;
    }
    std::vector<long> blocks;  // one entry per block, the block size
    for (size_t k = 1; k + 1 <= ranks.size(); ++k) {
      long ge_k = ranks[k - 1] - ranks[k];  // number of blocks of size >= k
      long ge_k1 = k < ranks.size() - 1 ? ranks[k] - ranks[k + 1] : 0;
      for (long b = 0; b < ge_k - ge_k1; ++b) blocks.push_back(static_cast<long>(k));
    }
    std::sort(blocks.begin(), blocks.end());
    if (!blocks.empty()) out.emplace_back(lam, blocks);
  }
  long total = 0;
  for (auto& [lam, blocks] : out)
    for (long b : blocks) total += b;
  check(total == n, "jordan block sizes do not sum to the dimension");
  return out;
}

}  // namespace daha
