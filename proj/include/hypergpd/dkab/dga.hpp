#pragma once

#include <map>
#include <vector>

#include "hypergpd/dkab/simplicial_module.hpp"

namespace hypergpd::dkab {

/**
 * Bounded graded algebra of finite rank in degrees 0..top with a
 * differential of degree `direction` (+1 cochain, -1 chain). mult[{p,q}] is a
 * ranks[p+q] x (ranks[p]*ranks[q]) table, column a*ranks[q]+b holding e_a e_b;
 * products landing above top are zero (the algebra is truncated there).
 */
template <class T>
struct DGAlgebra {
  int direction = 1;
  std::vector<std::size_t> ranks;
  std::vector<Matrix<T>> d;  // d[k]: degree k -> k+direction (empty shape when out of range)
  std::map<std::pair<int, int>, Matrix<T>> mult;
  Matrix<T> unit;  // ranks[0] x 1

  int top() const { return int(ranks.size()) - 1; }
  std::size_t rank_at(int k) const { return k < 0 || k > top() ? 0 : ranks[k]; }

  Matrix<T> diff(int k) const {
    int t = k + direction;
    if (k < 0 || k > top() || t < 0 || t > top()) return Matrix<T>(rank_at(t), rank_at(k));
    return d[k];
  }

  /// Product of column vectors x (degree p) and y (degree q).
  Matrix<T> product(int p, const Matrix<T>& x, int q, const Matrix<T>& y) const {
    if (p + q > top()) return Matrix<T>(0, 1);
    const Matrix<T>& m = mult.at({p, q});
    Matrix<T> out(ranks[p + q], 1);
    for (std::size_t a = 0; a < ranks[p]; ++a) {
      if (is_zero(x(a, 0))) continue;
      for (std::size_t b = 0; b < ranks[q]; ++b) {
        if (is_zero(y(b, 0))) continue;
        T c = x(a, 0) * y(b, 0);
        std::size_t col = a * ranks[q] + b;
        for (std::size_t r = 0; r < out.rows(); ++r)
          if (!is_zero(m(r, col))) out(r, 0) += c * m(r, col);
      }
    }
    return out;
  }

  static Matrix<T> basis_vector(std::size_t n, std::size_t i) {
    Matrix<T> v(n, 1);
    v(i, 0) = T(1);
    return v;
  }

  /// d^2 = 0, unit, Leibniz, associativity and graded commutativity on basis
  /// elements. Throws ValidationError naming the first failure.
  void validate(bool check_commutative = true) const {
    auto fail = [](const std::string& w) { throw ValidationError("dg algebra: " + w); };
    for (int k = 0; k <= top(); ++k)
      if (!(diff(k + direction) * diff(k)).is_zero()) fail("d.d != 0 in degree " + std::to_string(k));
    auto e = [&](int k, std::size_t i) { return basis_vector(ranks[k], i); };
    auto sign = [](int p, int q) { return (p * q) % 2 ? T(-1) : T(1); };
    for (int p = 0; p <= top(); ++p)
      for (std::size_t a = 0; a < ranks[p]; ++a) {
        if (product(0, unit, p, e(p, a)) != e(p, a)) fail("unit");
        for (int q = 0; p + q <= top(); ++q)
          for (std::size_t b = 0; b < ranks[q]; ++b) {
            Matrix<T> xy = product(p, e(p, a), q, e(q, b));
            if (check_commutative && xy != product(q, e(q, b), p, e(p, a)).scaled(sign(p, q)))
              fail("graded commutativity in degrees " + std::to_string(p) + "," + std::to_string(q));
            int t = p + q + direction;
            if (t >= 0 && t <= top()) {
              Matrix<T> lhs = diff(p + q) * xy;
              Matrix<T> rhs(ranks[t], 1);
              if (p + direction >= 0 && p + direction <= top()) rhs = rhs + product(p + direction, diff(p) * e(p, a), q, e(q, b));
              if (q + direction >= 0 && q + direction <= top())
                rhs = rhs + product(p, e(p, a), q + direction, diff(q) * e(q, b)).scaled(p % 2 ? T(-1) : T(1));
              if (lhs != rhs) fail("Leibniz rule in degrees " + std::to_string(p) + "," + std::to_string(q));
            }
            for (int r = 0; p + q + r <= top(); ++r)
              for (std::size_t c = 0; c < ranks[r]; ++c)
                if (product(p + q, xy, r, e(r, c)) != product(p, e(p, a), q + r, product(q, e(q, b), r, e(r, c))))
                  fail("associativity");
          }
      }
  }
};

/// Levelwise multiplication tables on a simplicial module.
template <class T>
struct SimplicialAlgebra {
  SimplicialModule<T> module;
  std::vector<Matrix<T>> mult;  // ranks[n] x ranks[n]^2
  std::vector<Matrix<T>> unit;  // ranks[n] x 1

  Matrix<T> product(int n, const Matrix<T>& x, const Matrix<T>& y) const {
    std::size_t r = module.ranks[n];
    Matrix<T> out(r, 1);
    for (std::size_t a = 0; a < r; ++a) {
      if (is_zero(x(a, 0))) continue;
      for (std::size_t b = 0; b < r; ++b) {
        if (is_zero(y(b, 0))) continue;
        T c = x(a, 0) * y(b, 0);
        for (std::size_t k = 0; k < r; ++k)
          if (!is_zero(mult[n](k, a * r + b))) out(k, 0) += c * mult[n](k, a * r + b);
      }
    }
    return out;
  }

  /// Associativity and commutativity per level, operators multiplicative.
  void validate() const {
    module.validate();
    for (int n = 0; n <= module.top(); ++n) {
      std::size_t r = module.ranks[n];
      auto e = [&](std::size_t i) { return DGAlgebra<T>::basis_vector(r, i); };
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) {
          auto ab = product(n, e(a), e(b));
          if (ab != product(n, e(b), e(a))) throw ValidationError("simplicial algebra: not commutative at level " + std::to_string(n));
          for (std::size_t c = 0; c < r; ++c)
            if (product(n, ab, e(c)) != product(n, e(a), product(n, e(b), e(c))))
              throw ValidationError("simplicial algebra: not associative at level " + std::to_string(n));
          for (int i = 0; n > 0 && i <= n; ++i)
            if (module.d(n, i) * ab != product(n - 1, module.d(n, i) * e(a), module.d(n, i) * e(b)))
              throw ValidationError("simplicial algebra: face not multiplicative");
        }
    }
  }
};

/// Group algebra Q[X] of a simplicial abelian group given as an F_p-module.
template <class T, std::uint32_t P>
SimplicialAlgebra<T> group_algebra(const SimplicialModule<Fp<P>>& G) {
  auto X = underlying_set(G);
  SimplicialAlgebra<T> A;
  A.module = linearize<T>(X);
  for (int n = 0; n <= G.top(); ++n) {
    std::size_t r = X.count[n];
    std::size_t rank = G.ranks[n];
    Matrix<T> m(r, r * r);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) {
        std::size_t sum = 0, pw = 1, x = a, y = b;
        for (std::size_t i = 0; i < rank; ++i) {
          sum += ((x % P + y % P) % P) * pw;
          x /= P;
          y /= P;
          pw *= P;
        }
        m(sum, a * r + b) = T(1);
      }
    A.mult.push_back(m);
    A.unit.push_back(DGAlgebra<T>::basis_vector(r, 0));
  }
  return A;
}

namespace detail {

/// (p,q)-shuffles as (mu, nu, sign).
struct Shuffle {
  std::vector<int> mu, nu;
  int sign = 1;
};

inline std::vector<Shuffle> shuffles(int p, int q) {
  std::vector<Shuffle> out;
  int n = p + q;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != p) continue;
    Shuffle s;
    for (int i = 0; i < n; ++i) (mask >> i & 1u ? s.mu : s.nu).push_back(i);
    // inversions of the permutation (mu, nu)
    int inv = 0;
    for (int a : s.mu)
      for (int b : s.nu)
        if (a > b) ++inv;
    s.sign = inv % 2 ? -1 : 1;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

/**
 * Eilenberg-Zilber product on the normalised complex: x.y is the signed sum of
 * s_nu(x) s_mu(y) over (p,q)-shuffles, projected onto N along the degenerate
 * subspace. Over a field only.
 */
template <class T>
DGAlgebra<T> shuffle_dga(const SimplicialAlgebra<T>& A) {
  A.validate();
  const auto& M = A.module;
  auto N = normalize(M);
  int top = M.top();
  // projection A_n -> N_n along the span of degeneracies
  std::vector<Matrix<T>> proj;
  for (int n = 0; n <= top; ++n) {
    Matrix<T> deg(M.ranks[n], 0);
    for (int j = 0; j < n; ++j) deg = hstack(deg, M.s(n - 1, j));
    Matrix<T> dbasis = deg.cols() ? column_space(deg) : deg;
    Matrix<T> B = hstack(N.inclusion[n], dbasis);
    auto inv = inverse(B);
    if (!inv) throw ValidationError("shuffle_dga: normalised and degenerate parts do not split level " + std::to_string(n));
    Matrix<T> P(N.inclusion[n].cols(), M.ranks[n]);
    for (std::size_t i = 0; i < P.rows(); ++i)
      for (std::size_t j = 0; j < P.cols(); ++j) P(i, j) = (*inv)(i, j);
    proj.push_back(P);
  }
  DGAlgebra<T> R;
  R.direction = -1;
  R.ranks = N.complex.ranks;
  R.d.resize(top + 1);
  for (int k = 1; k <= top; ++k) R.d[k] = N.complex.d[k];
  R.d[0] = Matrix<T>(0, R.ranks[0]);
  R.unit = proj[0] * A.unit[0];
  auto degen_word = [&](int from, const std::vector<int>& word, Matrix<T> v) {
    int lvl = from;
    for (int j : word) v = M.s(lvl++, j) * v;
    return v;
  };
  for (int p = 0; p <= top; ++p)
    for (int q = 0; p + q <= top; ++q) {
      Matrix<T> tab(R.ranks[p + q], R.ranks[p] * R.ranks[q]);
      auto sh = detail::shuffles(p, q);
      for (std::size_t a = 0; a < R.ranks[p]; ++a)
        for (std::size_t b = 0; b < R.ranks[q]; ++b) {
          Matrix<T> x = N.inclusion[p].column(a), y = N.inclusion[q].column(b);
          Matrix<T> acc(M.ranks[p + q], 1);
          for (const auto& s : sh) {
            Matrix<T> term = A.product(p + q, degen_word(p, s.nu, x), degen_word(q, s.mu, y));
            acc = s.sign > 0 ? acc + term : acc - term;
          }
          Matrix<T> v = proj[p + q] * acc;
          for (std::size_t r = 0; r < v.rows(); ++r) tab(r, a * R.ranks[q] + b) = v(r, 0);
        }
      R.mult[{p, q}] = tab;
    }
  return R;
}

}  // namespace hypergpd::dkab
