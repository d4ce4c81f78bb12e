#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "hypergpd/core/error.hpp"
#include "hypergpd/core/scalar.hpp"

namespace hypergpd {

/// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!hypergpd::is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix column(std::size_t c) const {
    Matrix v(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) v(i, 0) = (*this)(i, c);
    return v;
  }

  Matrix columns(const std::vector<std::size_t>& cs) const {
    Matrix m(rows_, cs.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) m(i, j) = (*this)(i, cs[j]);
    return m;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_)
      throw ArgumentError("matrix product shape mismatch " + x.shape() + " * " + y.shape());
    Matrix z(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const T& xik = x(i, k);
        if (hypergpd::is_zero(xik)) continue;
        for (std::size_t j = 0; j < y.cols_; ++j)
          if (!hypergpd::is_zero(y(k, j))) z(i, j) += xik * y(k, j);
      }
    return z;
  }
  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    x.same_shape(y);
    Matrix z = x;
    for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] += y.a_[i];
    return z;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    x.same_shape(y);
    Matrix z = x;
    for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] -= y.a_[i];
    return z;
  }
  Matrix scaled(const T& s) const {
    Matrix z = *this;
    for (auto& e : z.a_) e *= s;
    return z;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  void swap_rows(std::size_t r, std::size_t s) {
    if (r == s) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(r, j), (*this)(s, j));
  }
  void swap_cols(std::size_t c, std::size_t d) {
    if (c == d) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, c), (*this)(i, d));
  }

 private:
  void same_shape(const Matrix& y) const {
    if (rows_ != y.rows_ || cols_ != y.cols_)
      throw ArgumentError("matrix shape mismatch " + shape() + " vs " + y.shape());
  }
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> a_;
};

template <class T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw ArgumentError("vstack column mismatch");
  Matrix<T> m(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, j) = b(i, j);
  return m;
}

template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
  return vstack(a.transpose(), b.transpose()).transpose();
}

/// Block-diagonal sum.
template <class T>
Matrix<T> direct_sum(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

template <class T>
Matrix<T> convert_integer_matrix(const Matrix<Integer>& m) {
  Matrix<T> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<T, Integer> || std::is_same_v<T, Rational>)
        r(i, j) = T(m(i, j));
      else
        r(i, j) = T(m(i, j).get_si() % 1000000007L);  // small primes only
    }
  return r;
}

// ---------------------------------------------------------------------------
// Linear algebra over a field (Rational or Fp).

template <class T>
struct Rref {
  Matrix<T> reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

template <class T>
Rref<T> rref(Matrix<T> m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    T inv = T(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return rref(m).pivots.size();
}

/// Basis of the right nullspace, as the columns of the result (canonical: one
/// vector per free column of the reduced echelon form).
template <class T>
Matrix<T> nullspace(const Matrix<T>& m) {
  auto [R, piv] = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_piv[c]) free.push_back(c);
  Matrix<T> n(m.cols(), free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    n(free[k], k) = T(1);
    for (std::size_t i = 0; i < piv.size(); ++i) n(piv[i], k) = -R(i, free[k]);
  }
  return n;
}

/// Some x with a*x = b (b may have several columns), or nullopt.
template <class T>
std::optional<Matrix<T>> solve(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw ArgumentError("solve: row mismatch");
  auto [R, piv] = rref(hstack(a, b));
  Matrix<T> x(a.cols(), b.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(piv[i], j) = R(i, a.cols() + j);
  }
  return x;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  if (rank(a) != a.rows()) return std::nullopt;
  return solve(a, Matrix<T>::identity(a.rows()));
}

/// Columns forming a basis of the column space (the pivot columns of a).
template <class T>
Matrix<T> column_space(const Matrix<T>& a) {
  if (a.cols() == 0) return Matrix<T>(a.rows(), 0);
  return a.columns(rref(a).pivots);
}

// ---------------------------------------------------------------------------
// Integer lattices.

namespace detail {

// Column operation [c_k, c_j] <- [c_k, c_j] * [[x, -b/g], [y, a/g]] where
// g = x*a + y*b, applied to both m and u.
inline void gcd_combine_cols(Matrix<Integer>& m, Matrix<Integer>& u, std::size_t r,
                             std::size_t k, std::size_t j) {
  Integer a = m(r, k), b = m(r, j), g, x, y;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Integer ag = a / g, bg = b / g;
  auto apply = [&](Matrix<Integer>& t) {
    for (std::size_t i = 0; i < t.rows(); ++i) {
      Integer tk = t(i, k), tj = t(i, j);
      t(i, k) = x * tk + y * tj;
      t(i, j) = -bg * tk + ag * tj;
    }
  };
  apply(m);
  apply(u);
}

}  // namespace detail

/// Row Hermite normal form of an integer matrix: upper echelon, positive
/// pivots, entries above each pivot reduced into [0, pivot). Zero rows dropped.
inline Matrix<Integer> hermite_rows(Matrix<Integer> m) {
  std::size_t r = 0;
  std::vector<std::size_t> pivcols;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    // gcd-eliminate column c below row r
    for (;;) {
      std::size_t best = m.rows();
      for (std::size_t i = r; i < m.rows(); ++i)
        if (!is_zero(m(i, c)) && (best == m.rows() || abs(m(i, c)) < abs(m(best, c)))) best = i;
      if (best == m.rows()) break;
      m.swap_rows(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < m.rows(); ++i) {
        if (is_zero(m(i, c))) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
        for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= q * m(r, j);
        if (!is_zero(m(i, c))) done = false;
      }
      if (done) break;
    }
    if (r < m.rows() && !is_zero(m(r, c))) {
      if (m(r, c) < 0)
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = -m(r, j);
      for (std::size_t i = 0; i < r; ++i) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
        if (q != 0)
          for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= q * m(r, j);
      }
      pivcols.push_back(c);
      ++r;
    }
  }
  Matrix<Integer> h(r, m.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) h(i, j) = m(i, j);
  return h;
}

/// Basis of the integer kernel {x in Z^n : m x = 0} as columns, in canonical
/// (Hermite) form. The lattice returned is saturated.
inline Matrix<Integer> integer_kernel(const Matrix<Integer>& m0) {
  Matrix<Integer> m = m0;
  std::size_t n = m.cols();
  Matrix<Integer> u = Matrix<Integer>::identity(n);
  std::size_t k = 0;
  for (std::size_t r = 0; r < m.rows() && k < n; ++r) {
    std::size_t nz = n;
    for (std::size_t j = k; j < n; ++j)
      if (!is_zero(m(r, j))) {
        nz = j;
        break;
      }
    if (nz == n) continue;
    m.swap_cols(k, nz);
    u.swap_cols(k, nz);
    for (std::size_t j = k + 1; j < n; ++j)
      if (!is_zero(m(r, j))) detail::gcd_combine_cols(m, u, r, k, j);
    ++k;
  }
  Matrix<Integer> ker(k < n ? n - k : 0, n);
  for (std::size_t j = k; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) ker(j - k, i) = u(i, j);
  return hermite_rows(ker).transpose();
}

/// Nontrivial Smith invariant factors (all nonzero d_i with d_i | d_{i+1}).
inline std::vector<Integer> smith_invariants(Matrix<Integer> m) {
  std::vector<Integer> d;
  std::size_t t = 0;
  while (t < m.rows() && t < m.cols()) {
    // pick smallest nonzero entry in the trailing block
    std::size_t pr = m.rows(), pc = m.cols();
    for (std::size_t i = t; i < m.rows(); ++i)
      for (std::size_t j = t; j < m.cols(); ++j)
        if (!is_zero(m(i, j)) && (pr == m.rows() || abs(m(i, j)) < abs(m(pr, pc)))) {
          pr = i;
          pc = j;
        }
    if (pr == m.rows()) break;
    m.swap_rows(t, pr);
    m.swap_cols(t, pc);
    bool clean = true;
    for (std::size_t i = t + 1; i < m.rows(); ++i) {
      if (is_zero(m(i, t))) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, t).get_mpz_t(), m(t, t).get_mpz_t());
      for (std::size_t j = t; j < m.cols(); ++j) m(i, j) -= q * m(t, j);
      if (!is_zero(m(i, t))) clean = false;
    }
    for (std::size_t j = t + 1; j < m.cols(); ++j) {
      if (is_zero(m(t, j))) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m(t, j).get_mpz_t(), m(t, t).get_mpz_t());
      for (std::size_t i = t; i < m.rows(); ++i) m(i, j) -= q * m(i, t);
      if (!is_zero(m(t, j))) clean = false;
    }
    if (!clean) continue;
    // divisibility: fold any non-divisible entry into row t
    bool divides = true;
    for (std::size_t i = t + 1; i < m.rows() && divides; ++i)
      for (std::size_t j = t + 1; j < m.cols(); ++j)
        if (!mpz_divisible_p(m(i, j).get_mpz_t(), m(t, t).get_mpz_t())) {
          for (std::size_t jj = t; jj < m.cols(); ++jj) m(t, jj) += m(i, jj);
          divides = false;
          break;
        }
    if (!divides) continue;
    d.push_back(abs(m(t, t)));
    ++t;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Ring-generic entry points: Integer works over Z, everything else is a field.

template <class T>
Matrix<Rational> to_rational(const Matrix<T>& m) {
  Matrix<Rational> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

template <class T>
std::size_t rank_of(const Matrix<T>& m) {
  if constexpr (std::is_same_v<T, Integer>)
    return rank(to_rational(m));
  else
    return rank(m);
}

/// Kernel basis as columns; over Z a basis of the saturated kernel lattice.
template <class T>
Matrix<T> kernel_basis(const Matrix<T>& m) {
  if constexpr (std::is_same_v<T, Integer>) {
    if (m.rows() == 0) return Matrix<T>::identity(m.cols());
    auto k = integer_kernel(m);
    return k.cols() == 0 ? Matrix<T>(m.cols(), 0) : k;
  } else {
    if (m.rows() == 0) return Matrix<T>::identity(m.cols());
    return nullspace(m);
  }
}

/// x with a*x = b, where a has full column rank and b is known to lie in its
/// span (over Z: in its lattice). Throws ValidationError otherwise.
template <class T>
Matrix<T> solve_exact(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() == 0) {
    if (!b.is_zero()) throw ValidationError("solve_exact: target not in the span");
    return Matrix<T>(0, b.cols());
  }
  if constexpr (std::is_same_v<T, Integer>) {
    auto x = solve(to_rational(a), to_rational(b));
    if (!x) throw ValidationError("solve_exact: target not in the span");
    Matrix<Integer> r(x->rows(), x->cols());
    for (std::size_t i = 0; i < r.rows(); ++i)
      for (std::size_t j = 0; j < r.cols(); ++j) {
        if ((*x)(i, j).get_den() != 1) throw ValidationError("solve_exact: target not in the lattice");
        r(i, j) = (*x)(i, j).get_num();
      }
    return r;
  } else {
    auto x = solve(a, b);
    if (!x) throw ValidationError("solve_exact: target not in the span");
    return *x;
  }
}

template <class T>
std::string to_string(const Matrix<T>& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
  }
  os << "]";
  return os.str();
}

}  // namespace hypergpd
