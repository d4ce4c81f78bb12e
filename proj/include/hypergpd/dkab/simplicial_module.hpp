#pragma once

#include <string>
#include <vector>

#include "hypergpd/core/matrix.hpp"
#include "hypergpd/core/ordinal.hpp"
#include "hypergpd/dkab/complex.hpp"
#include "hypergpd/simpset/sset.hpp"

namespace hypergpd::dkab {

/**
 * Simplicial module of finite rank, levels 0..top. face[n][i] is the matrix
 * of d_i : A_n -> A_{n-1} (n >= 1) and degen[n][i] of s_i : A_n -> A_{n+1}
 * (n < top), acting on column vectors.
 */
template <class T>
struct SimplicialModule {
  std::vector<std::size_t> ranks;
  std::vector<std::vector<Matrix<T>>> face;
  std::vector<std::vector<Matrix<T>>> degen;

  int top() const { return int(ranks.size()) - 1; }
  const Matrix<T>& d(int n, int i) const { return face[n][i]; }
  const Matrix<T>& s(int n, int i) const { return degen[n][i]; }

  /// Matrix of theta^* : A_n -> A_m for theta : [m] -> [n].
  Matrix<T> op(const OrdinalMap& theta) const {
    auto em = epi_mono(theta);
    int n = theta.dst;
    Matrix<T> acc = Matrix<T>::identity(ranks[n]);
    auto img = em.mono.image();
    int lvl = n;
    for (int v = n; v >= 0; --v)
      if (!std::binary_search(img.begin(), img.end(), v)) acc = d(lvl--, v) * acc;
    auto w = degeneracy_word(em.epi);
    for (auto it = w.rbegin(); it != w.rend(); ++it) acc = s(lvl++, *it) * acc;
    return acc;
  }

  void validate() const {
    int N = top();
    auto fail = [](const std::string& what) { throw ValidationError("simplicial module: " + what); };
    if (int(face.size()) != N + 1 || int(degen.size()) != N + 1) fail("operator tables have the wrong length");
    for (int n = 1; n <= N; ++n) {
      if (int(face[n].size()) != n + 1) fail("face count at level " + std::to_string(n));
      for (int i = 0; i <= n; ++i)
        if (face[n][i].rows() != ranks[n - 1] || face[n][i].cols() != ranks[n])
          fail("face shape at (" + std::to_string(n) + "," + std::to_string(i) + ")");
    }
    for (int n = 0; n < N; ++n) {
      if (int(degen[n].size()) != n + 1) fail("degeneracy count at level " + std::to_string(n));
      for (int i = 0; i <= n; ++i)
        if (degen[n][i].rows() != ranks[n + 1] || degen[n][i].cols() != ranks[n])
          fail("degeneracy shape at (" + std::to_string(n) + "," + std::to_string(i) + ")");
    }
    for (int n = 2; n <= N; ++n)
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (d(n - 1, i) * d(n, j) != d(n - 1, j - 1) * d(n, i)) fail("d_i d_j at level " + std::to_string(n));
    for (int n = 0; n < N; ++n)
      for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n + 1; ++i) {
          Matrix<T> lhs = d(n + 1, i) * s(n, j);
          Matrix<T> rhs;
          if (i == j || i == j + 1)
            rhs = Matrix<T>::identity(ranks[n]);
          else if (i < j)
            rhs = s(n - 1, j - 1) * d(n, i);
          else
            rhs = s(n - 1, j) * d(n, i - 1);
          if (lhs != rhs) fail("d_i s_j at level " + std::to_string(n + 1));
        }
        if (n + 1 < N)
          for (int i = 0; i <= j; ++i)
            if (s(n + 1, i) * s(n, j) != s(n + 1, j + 1) * s(n, i)) fail("s_i s_j at level " + std::to_string(n));
      }
  }

  SimplicialModule truncated(int n) const {
    SimplicialModule r;
    for (int k = 0; k <= n; ++k) {
      r.ranks.push_back(ranks[k]);
      r.face.push_back(face[k]);
      r.degen.push_back(k < n ? degen[k] : std::vector<Matrix<T>>{});
    }
    return r;
  }
};

/// Constant simplicial module on T^r.
template <class T>
SimplicialModule<T> constant_module(std::size_t r, int N) {
  SimplicialModule<T> A;
  for (int n = 0; n <= N; ++n) {
    A.ranks.push_back(r);
    A.face.emplace_back(n == 0 ? 0 : n + 1, Matrix<T>::identity(r));
    A.degen.emplace_back(n < N ? n + 1 : 0, Matrix<T>::identity(r));
  }
  return A;
}

/// Free module on a simplicial set.
template <class T>
SimplicialModule<T> linearize(const simpset::SSet& X) {
  SimplicialModule<T> A;
  int N = X.top();
  auto perm = [](std::size_t rows, std::size_t cols, const std::vector<std::size_t>& f) {
    Matrix<T> m(rows, cols);
    for (std::size_t x = 0; x < cols; ++x) m(f[x], x) = T(1);
    return m;
  };
  for (int n = 0; n <= N; ++n) {
    A.ranks.push_back(X.count[n]);
    std::vector<Matrix<T>> fc, dg;
    if (n >= 1)
      for (int i = 0; i <= n; ++i) fc.push_back(perm(X.count[n - 1], X.count[n], X.face[n][i]));
    if (n < N)
      for (int i = 0; i <= n; ++i) dg.push_back(perm(X.count[n + 1], X.count[n], X.degen[n][i]));
    A.face.push_back(std::move(fc));
    A.degen.push_back(std::move(dg));
  }
  return A;
}

template <class T>
SimplicialModule<T> direct_sum(const SimplicialModule<T>& a, const SimplicialModule<T>& b) {
  if (a.top() != b.top()) throw ArgumentError("direct_sum: level counts differ");
  SimplicialModule<T> c = a;
  for (int n = 0; n <= a.top(); ++n) {
    c.ranks[n] = a.ranks[n] + b.ranks[n];
    for (std::size_t i = 0; i < a.face[n].size(); ++i) c.face[n][i] = hypergpd::direct_sum(a.face[n][i], b.face[n][i]);
    for (std::size_t i = 0; i < a.degen[n].size(); ++i)
      c.degen[n][i] = hypergpd::direct_sum(a.degen[n][i], b.degen[n][i]);
  }
  return c;
}

/// Unnormalised complex with differential sum (-1)^i d_i.
template <class T>
ChainComplex<T> moore_complex(const SimplicialModule<T>& A) {
  auto c = make_complex<T>(0, A.ranks);
  for (int n = 1; n <= A.top(); ++n) {
    Matrix<T> m(A.ranks[n - 1], A.ranks[n]);
    for (int i = 0; i <= n; ++i) m = i % 2 ? m - A.d(n, i) : m + A.d(n, i);
    c.d[n] = m;
  }
  c.open_above = true;
  return c;
}

template <class T>
struct Normalized {
  ChainComplex<T> complex;
  std::vector<Matrix<T>> inclusion;  // A_n x N_n, basis of N_n as columns
};

/// N_n = intersection of ker d_i over i > 0, differential d_0.
template <class T>
Normalized<T> normalize(const SimplicialModule<T>& A) {
  Normalized<T> out;
  int N = A.top();
  for (int n = 0; n <= N; ++n) {
    if (n == 0) {
      out.inclusion.push_back(Matrix<T>::identity(A.ranks[0]));
      continue;
    }
    Matrix<T> stacked(0, A.ranks[n]);
    for (int i = 1; i <= n; ++i) stacked = vstack(stacked, A.d(n, i));
    out.inclusion.push_back(kernel_basis(stacked));
  }
  std::vector<std::size_t> ranks;
  for (const auto& inc : out.inclusion) ranks.push_back(inc.cols());
  out.complex = make_complex<T>(0, ranks);
  for (int n = 1; n <= N; ++n)
    out.complex.d[n] = solve_exact(out.inclusion[n - 1], A.d(n, 0) * out.inclusion[n]);
  out.complex.open_above = true;
  return out;
}

/// pi_* as homology of the unnormalised complex.
template <class T>
Homology homotopy_groups(const SimplicialModule<T>& A) {
  return homology(moore_complex(A));
}

namespace detail {

struct Summand {
  OrdinalMap sigma;  // [n] ->> [k]
  int k = 0;
  std::size_t offset = 0;
};

template <class T>
std::vector<Summand> summands(const ChainComplex<T>& C, int n) {
  std::vector<Summand> out;
  std::size_t off = 0;
  for (int k = 0; k <= n; ++k) {
    if (C.rank_at(k) == 0) continue;
    for (auto& s : surjections(n, k)) {
      out.push_back({s, k, off});
      off += C.rank_at(k);
    }
  }
  return out;
}

}  // namespace detail

/**
 * Gamma(C) up to level up_to. A_n is the sum of C_k over surjections
 * [n] ->> [k], ordered by k then surjection; the identity summand comes last.
 * theta^* sends (sigma, c) to (rho, c) if sigma.theta = rho, to (rho, dc) if
 * sigma.theta = delta^0.rho, and to zero otherwise.
 */
template <class T>
SimplicialModule<T> denormalize(const ChainComplex<T>& C, int up_to) {
  if (up_to < 0) throw ArgumentError("denormalize: up_to must be >= 0");
  if (C.lo < 0 && C.ranks.size() > 0) {
    for (int deg = C.lo; deg < 0; ++deg)
      if (C.rank_at(deg) != 0) throw ArgumentError("denormalize: complex has terms in negative degree");
  }
  std::vector<std::vector<detail::Summand>> sums;
  SimplicialModule<T> A;
  for (int n = 0; n <= up_to; ++n) {
    sums.push_back(detail::summands(C, n));
    std::size_t r = 0;
    for (const auto& s : sums.back()) r += C.rank_at(s.k);
    A.ranks.push_back(r);
  }
  auto op = [&](const OrdinalMap& theta) {
    int m = theta.src, n = theta.dst;
    Matrix<T> M(A.ranks[m], A.ranks[n]);
    for (const auto& s : sums[n]) {
      auto em = epi_mono(s.sigma.after(theta));
      int j = em.epi.dst;
      auto find = [&](const OrdinalMap& rho) -> const detail::Summand& {
        for (const auto& t : sums[m])
          if (t.k == rho.dst && t.sigma == rho) return t;
        throw ValidationError("denormalize: missing summand");
      };
      std::size_t rk = C.rank_at(s.k);
      if (j == s.k) {
        const auto& t = find(em.epi);
        for (std::size_t a = 0; a < rk; ++a) M(t.offset + a, s.offset + a) = T(1);
      } else if (j == s.k - 1 && em.mono == OrdinalMap::coface(s.k, 0)) {
        if (C.rank_at(j) == 0) continue;
        const auto& t = find(em.epi);
        Matrix<T> dd = C.diff(s.k);
        for (std::size_t a = 0; a < dd.rows(); ++a)
          for (std::size_t b = 0; b < rk; ++b) M(t.offset + a, s.offset + b) = dd(a, b);
      }
    }
    return M;
  };
  for (int n = 0; n <= up_to; ++n) {
    std::vector<Matrix<T>> fc, dg;
    if (n >= 1)
      for (int i = 0; i <= n; ++i) fc.push_back(op(OrdinalMap::coface(n, i)));
    if (n < up_to)
      for (int i = 0; i <= n; ++i) dg.push_back(op(OrdinalMap::codegeneracy(n, i)));
    A.face.push_back(std::move(fc));
    A.degen.push_back(std::move(dg));
  }
  return A;
}

/// Abelian n-hypergroupoid test: N_m = 0 for n < m <= top (top >= n+2).
template <class T>
bool dk_hypergroupoid_check(const SimplicialModule<T>& A, int n) {
  if (A.top() < n + 2) throw InsufficientData("dk_hypergroupoid_check needs levels up to n+2");
  auto N = normalize(A);
  for (int m = n + 1; m <= A.top(); ++m)
    if (N.complex.rank_at(m) != 0) return false;
  return true;
}

/**
 * Underlying simplicial set of a simplicial F_p-module with small levels:
 * level n enumerates F_p^{r_n} in base-p order.
 */
template <std::uint32_t P>
simpset::SSet underlying_set(const SimplicialModule<Fp<P>>& A, std::size_t max_size = 1u << 16) {
  simpset::SSet X;
  int N = A.top();
  auto size_of = [&](std::size_t r) {
    std::size_t s = 1;
    for (std::size_t i = 0; i < r; ++i) {
      s *= P;
      if (s > max_size) throw ArgumentError("underlying_set: level too large to enumerate");
    }
    return s;
  };
  auto decode = [&](std::size_t code, std::size_t r) {
    Matrix<Fp<P>> v(r, 1);
    for (std::size_t i = 0; i < r; ++i) {
      v(i, 0) = Fp<P>(long(code % P));
      code /= P;
    }
    return v;
  };
  auto encode = [&](const Matrix<Fp<P>>& v) {
    std::size_t code = 0;
    for (std::size_t i = v.rows(); i-- > 0;) code = code * P + v(i, 0).value();
    return code;
  };
  auto table = [&](const Matrix<Fp<P>>& m, std::size_t src_rank) {
    std::size_t sz = size_of(src_rank);
    std::vector<std::size_t> t(sz);
    for (std::size_t x = 0; x < sz; ++x) t[x] = encode(m * decode(x, src_rank));
    return t;
  };
  for (int n = 0; n <= N; ++n) {
    X.count.push_back(size_of(A.ranks[n]));
    std::vector<std::vector<std::size_t>> fc, dg;
    if (n >= 1)
      for (int i = 0; i <= n; ++i) fc.push_back(table(A.d(n, i), A.ranks[n]));
    if (n < N)
      for (int i = 0; i <= n; ++i) dg.push_back(table(A.s(n, i), A.ranks[n]));
    X.face.push_back(std::move(fc));
    X.degen.push_back(std::move(dg));
  }
  return X;
}

template <class T>
SimplicialModule<T> reduce_mod(const SimplicialModule<Integer>& A) {
  SimplicialModule<T> B;
  B.ranks = A.ranks;
  for (const auto& lv : A.face) {
    B.face.emplace_back();
    for (const auto& m : lv) B.face.back().push_back(convert_integer_matrix<T>(m));
  }
  for (const auto& lv : A.degen) {
    B.degen.emplace_back();
    for (const auto& m : lv) B.degen.back().push_back(convert_integer_matrix<T>(m));
  }
  return B;
}

}  // namespace hypergpd::dkab
