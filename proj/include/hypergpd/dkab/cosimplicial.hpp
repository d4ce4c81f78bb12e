#pragma once

#include <vector>

#include "hypergpd/dkab/complex.hpp"
#include "hypergpd/dkab/simplicial_module.hpp"

namespace hypergpd::dkab {

/**
 * Cosimplicial module of finite rank, degrees 0..top. coface[n][i] is
 * d^i : A^n -> A^{n+1} (i = 0..n+1, n < top), codegen[n][i] is
 * s^i : A^n -> A^{n-1} (i = 0..n-1, n >= 1).
 */
template <class T>
struct CosimplicialModule {
  std::vector<std::size_t> ranks;
  std::vector<std::vector<Matrix<T>>> coface;
  std::vector<std::vector<Matrix<T>>> codegen;

  int top() const { return int(ranks.size()) - 1; }

  /// Transposes satisfy exactly the simplicial identities, so validation
  /// reuses the simplicial checker.
  SimplicialModule<T> transposed() const {
    SimplicialModule<T> A;
    A.ranks = ranks;
    int N = top();
    A.face.resize(N + 1);
    A.degen.resize(N + 1);
    for (int n = 1; n <= N; ++n)
      for (int i = 0; i <= n; ++i) A.face[n].push_back(coface[n - 1][i].transpose());
    for (int n = 0; n < N; ++n)
      for (int i = 0; i <= n; ++i) A.degen[n].push_back(codegen[n + 1][i].transpose());
    return A;
  }

  void validate() const {
    if (int(coface.size()) != top() + 1 || int(codegen.size()) != top() + 1)
      throw ValidationError("cosimplicial module: operator tables have the wrong length");
    for (int n = 0; n < top(); ++n)
      if (int(coface[n].size()) != n + 2) throw ValidationError("cosimplicial module: coface count");
    for (int n = 1; n <= top(); ++n)
      if (int(codegen[n].size()) != n) throw ValidationError("cosimplicial module: codegeneracy count");
    transposed().validate();
  }
};

template <class T>
CosimplicialModule<T> constant_cosimplicial(std::size_t r, int N) {
  CosimplicialModule<T> A;
  for (int n = 0; n <= N; ++n) {
    A.ranks.push_back(r);
    A.coface.emplace_back(n < N ? n + 2 : 0, Matrix<T>::identity(r));
    A.codegen.emplace_back(n, Matrix<T>::identity(r));
  }
  return A;
}

template <class T>
CosimplicialModule<T> direct_sum(const CosimplicialModule<T>& a, const CosimplicialModule<T>& b) {
  if (a.top() != b.top()) throw ArgumentError("direct_sum: degree counts differ");
  CosimplicialModule<T> c = a;
  for (int n = 0; n <= a.top(); ++n) {
    c.ranks[n] = a.ranks[n] + b.ranks[n];
    for (std::size_t i = 0; i < a.coface[n].size(); ++i)
      c.coface[n][i] = hypergpd::direct_sum(a.coface[n][i], b.coface[n][i]);
    for (std::size_t i = 0; i < a.codegen[n].size(); ++i)
      c.codegen[n][i] = hypergpd::direct_sum(a.codegen[n][i], b.codegen[n][i]);
  }
  return c;
}

/// Alternating complex with differential sum (-1)^i d^i.
template <class T>
CochainComplex<T> alternating_complex(const CosimplicialModule<T>& A) {
  CochainComplex<T> c;
  c.ranks = A.ranks;
  c.d.resize(A.ranks.size());
  for (int n = 0; n < A.top(); ++n) {
    Matrix<T> m(A.ranks[n + 1], A.ranks[n]);
    for (int i = 0; i <= n + 1; ++i) m = i % 2 ? m - A.coface[n][i] : m + A.coface[n][i];
    c.d[n] = m;
  }
  c.open_above = true;
  return c;
}

template <class T>
struct Conormalized {
  CochainComplex<T> complex;
  std::vector<Matrix<T>> inclusion;  // A^n x N_c^n
};

/// N_c^n = intersection of ker s^i, differential sum (-1)^i d^i.
template <class T>
Conormalized<T> conormalize(const CosimplicialModule<T>& A) {
  Conormalized<T> out;
  for (int n = 0; n <= A.top(); ++n) {
    Matrix<T> stacked(0, A.ranks[n]);
    for (int i = 0; i < n; ++i) stacked = vstack(stacked, A.codegen[n][i]);
    out.inclusion.push_back(kernel_basis(stacked));
  }
  auto alt = alternating_complex(A);
  out.complex.ranks.clear();
  for (const auto& inc : out.inclusion) out.complex.ranks.push_back(inc.cols());
  out.complex.d.resize(out.complex.ranks.size());
  for (int n = 0; n < A.top(); ++n)
    out.complex.d[n] = solve_exact(out.inclusion[n + 1], alt.d[n] * out.inclusion[n]);
  out.complex.open_above = true;
  return out;
}

/// Chain maps between complexes with the same degree range: one matrix per degree.
template <class T>
using ChainMap = std::vector<Matrix<T>>;

/**
 * Double complex with columns indexed by cochain degree i = 0..D; every column
 * is a chain complex on the same degree range, delta[i][k] is the cochain map
 * column i -> column i+1 at chain degree lo+k.
 */
template <class T>
struct DoubleComplex {
  std::vector<ChainComplex<T>> columns;
  std::vector<ChainMap<T>> delta;
  bool bounded = true;  // columns beyond the stored ones vanish

  void validate() const {
    if (columns.empty()) throw ValidationError("double complex: no columns");
    for (const auto& c : columns) {
      c.validate();
      if (c.lo != columns[0].lo || c.ranks.size() != columns[0].ranks.size())
        throw ValidationError("double complex: columns must share the chain degree range");
    }
    if (delta.size() + 1 != columns.size()) throw ValidationError("double complex: need one delta per gap");
    for (std::size_t i = 0; i < delta.size(); ++i) {
      for (std::size_t k = 0; k < columns[i].ranks.size(); ++k) {
        const auto& m = delta[i][k];
        if (m.rows() != columns[i + 1].ranks[k] || m.cols() != columns[i].ranks[k])
          throw ValidationError("double complex: delta shape");
        if (k > 0 && columns[i + 1].d[k] * m != delta[i][k - 1] * columns[i].d[k])
          throw ValidationError("double complex: delta is not a chain map");
        if (i + 1 < delta.size() && !(delta[i + 1][k] * m).is_zero())
          throw ValidationError("double complex: delta.delta != 0");
      }
    }
  }
};

/**
 * Product total complex, (Tot V)_n = prod_i V^i_{n+i}, with
 * d = d_chain + (-1)^p delta on V^i_p. Degrees lo-1 and hi+1 are built too and
 * flagged open, so homology() reports exactly the window [lo, hi].
 */
template <class T>
ChainComplex<T> tot_pi(const DoubleComplex<T>& V, int lo, int hi) {
  V.validate();
  if (hi < lo) throw ArgumentError("tot_pi: empty window");
  int D = int(V.columns.size()) - 1;
  int chain_lo = V.columns[0].lo, chain_hi = V.columns[0].hi();
  // unstored columns i > D would enter degree n once n+i <= chain_hi
  if (!V.bounded && chain_hi - (lo - 1) > D)
    throw InsufficientData("tot_pi: cochain degrees up to " + std::to_string(chain_hi - (lo - 1)) +
                           " contribute to the window but only " + std::to_string(D) + " are stored");
  int a = lo - 1, b = hi + 1;
  auto offsets = [&](int n) {
    std::vector<std::size_t> off;
    std::size_t o = 0;
    for (int i = 0; i <= D; ++i) {
      off.push_back(o);
      o += V.columns[i].rank_at(n + i);
    }
    off.push_back(o);
    return off;
  };
  std::vector<std::size_t> ranks;
  for (int n = a; n <= b; ++n) ranks.push_back(offsets(n).back());
  auto C = make_complex<T>(a, ranks);
  for (int n = a + 1; n <= b; ++n) {
    auto src = offsets(n), dst = offsets(n - 1);
    Matrix<T> M(dst.back(), src.back());
    for (int i = 0; i <= D; ++i) {
      int p = n + i;
      if (V.columns[i].rank_at(p) == 0) continue;
      auto put = [&](const Matrix<T>& blk, std::size_t r0, std::size_t c0, bool neg) {
        for (std::size_t r = 0; r < blk.rows(); ++r)
          for (std::size_t c = 0; c < blk.cols(); ++c) M(r0 + r, c0 + c) = neg ? T(0) - blk(r, c) : blk(r, c);
      };
      put(V.columns[i].diff(p), dst[i], src[i], false);
      if (i < D && p >= chain_lo && p <= chain_hi) put(V.delta[i][std::size_t(p - chain_lo)], dst[i + 1], src[i], p % 2 != 0);
    }
    C.d[std::size_t(n - a)] = M;
  }
  C.open_below = C.open_above = true;
  C.validate();
  return C;
}

/**
 * Cosimplicial chain complex: columns with cosimplicial structure maps that
 * are chain maps. Conormalising in the cosimplicial direction gives a
 * double complex.
 */
template <class T>
struct CosimplicialChainComplex {
  std::vector<ChainComplex<T>> levels;
  std::vector<std::vector<ChainMap<T>>> coface;   // [i][j], j = 0..i+1
  std::vector<std::vector<ChainMap<T>>> codegen;  // [i][j], j = 0..i-1

  /// The cosimplicial module in chain degree lo+k.
  CosimplicialModule<T> at_degree(std::size_t k) const {
    CosimplicialModule<T> A;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      A.ranks.push_back(levels[i].ranks[k]);
      A.coface.emplace_back();
      A.codegen.emplace_back();
      if (i + 1 < levels.size())
        for (const auto& f : coface[i]) A.coface.back().push_back(f[k]);
      for (const auto& s : codegen[i]) A.codegen.back().push_back(s[k]);
    }
    return A;
  }
};

template <class T>
DoubleComplex<T> conormalize(const CosimplicialChainComplex<T>& V) {
  if (V.levels.empty()) throw ArgumentError("conormalize: no levels");
  std::size_t K = V.levels[0].ranks.size();
  int D = int(V.levels.size()) - 1;
  std::vector<Conormalized<T>> per;
  for (std::size_t k = 0; k < K; ++k) {
    auto A = V.at_degree(k);
    A.validate();
    per.push_back(conormalize(A));
  }
  DoubleComplex<T> out;
  out.bounded = false;
  for (int i = 0; i <= D; ++i) {
    std::vector<std::size_t> ranks;
    for (std::size_t k = 0; k < K; ++k) ranks.push_back(per[k].complex.ranks[i]);
    auto col = make_complex<T>(V.levels[i].lo, ranks);
    for (std::size_t k = 1; k < K; ++k)
      col.d[k] = solve_exact(per[k - 1].inclusion[i], V.levels[i].d[k] * per[k].inclusion[i]);
    out.columns.push_back(std::move(col));
  }
  for (int i = 0; i < D; ++i) {
    ChainMap<T> m;
    for (std::size_t k = 0; k < K; ++k) m.push_back(per[k].complex.d[i]);
    out.delta.push_back(std::move(m));
  }
  return out;
}

}  // namespace hypergpd::dkab
