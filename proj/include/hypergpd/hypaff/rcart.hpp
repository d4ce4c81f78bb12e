#pragma once

#include <string>
#include <vector>

#include "hypergpd/core/matrix.hpp"
#include "hypergpd/dkab/cosimplicial.hpp"
#include "hypergpd/simpset/sset.hpp"

namespace hypergpd::hypaff {

/**
 * A module on a discrete simplicial set, one vector space per simplex:
 * coface[n][i][z] : F_{n-1}(d_i z) -> F_n(z) and
 * codegen[n][i][z] : F_{n+1}(s_i z) -> F_n(z). Not required to be Cartesian.
 */
struct DiscreteLevelwiseModule {
  simpset::SSet X;
  std::vector<std::vector<std::size_t>> rank;
  std::vector<std::vector<std::vector<Matrix<Rational>>>> coface;
  std::vector<std::vector<std::vector<Matrix<Rational>>>> codegen;

  int top() const { return int(rank.size()) - 1; }

  void validate() const {
    if (top() > X.top()) throw ValidationError("levelwise module: more levels than the simplicial set");
    for (int n = 0; n <= top(); ++n) {
      if (rank[n].size() != X.count[n]) throw ValidationError("levelwise module: one rank per simplex");
      if (n > 0 && int(coface[n].size()) != n + 1) throw ValidationError("levelwise module: coface count");
      for (int i = 0; n > 0 && i <= n; ++i)
        for (std::size_t z = 0; z < X.count[n]; ++z) {
          const auto& m = coface[n][i].at(z);
          if (m.rows() != rank[n][z] || m.cols() != rank[n - 1][X.d(n, i, z)])
            throw ValidationError("levelwise module: coface matrix shape");
        }
      if (n < top() && int(codegen[n].size()) != n + 1) throw ValidationError("levelwise module: codegeneracy count");
      for (int i = 0; n < top() && i <= n; ++i)
        for (std::size_t z = 0; z < X.count[n]; ++z) {
          const auto& m = codegen[n][i].at(z);
          if (m.rows() != rank[n][z] || m.cols() != rank[n + 1][X.s(n, i, z)])
            throw ValidationError("levelwise module: codegeneracy matrix shape");
        }
    }
  }
};

struct RcartResult {
  dkab::CosimplicialModule<Rational> cosimplicial;
  dkab::CochainComplex<Rational> complex;  // conormalized
  std::vector<std::size_t> cohomology;     // degrees 0..depth
};

/**
 * Derived Cartesianification at u in X_m, truncated at the given depth:
 * C^n = sum over y in X_{n+m+1} ending in u of F_n(first n+1 vertices of y).
 */
inline RcartResult rcart_truncated(const DiscreteLevelwiseModule& F, int m, std::size_t u, int depth) {
  if (m < 0 || depth < 0) throw ArgumentError("rcart: negative level or depth");
  F.validate();
  const auto& X = F.X;
  int N = depth + 1;
  if (m + N + 1 > X.top() || N > F.top())
    throw InsufficientData("rcart: depth " + std::to_string(depth) + " at level " + std::to_string(m) +
                           " needs simplices of dimension " + std::to_string(m + N + 1));
  if (u >= X.count[m]) throw ArgumentError("rcart: no such simplex");
  auto range = [](int a, int b) {
    std::vector<int> v;
    for (int i = a; i <= b; ++i) v.push_back(i);
    return v;
  };
  auto bottom = [&](int n, std::size_t y) { return X.apply(OrdinalMap(n + m + 1, range(n + 1, n + m + 1)), y); };
  auto top_n = [&](int n, std::size_t y) { return X.apply(OrdinalMap(n + m + 1, range(0, n)), y); };
  // summands of C^n and their offsets
  std::vector<std::vector<std::size_t>> ys(N + 1), off(N + 1);
  std::vector<std::vector<std::size_t>> pos(N + 1);  // index of y in ys, or npos
  RcartResult out;
  auto& C = out.cosimplicial;
  for (int n = 0; n <= N; ++n) {
    std::size_t r = 0;
    pos[n].assign(X.count[n + m + 1], std::size_t(-1));
    for (std::size_t y = 0; y < X.count[n + m + 1]; ++y)
      if (bottom(n, y) == u) {
        pos[n][y] = ys[n].size();
        ys[n].push_back(y);
        off[n].push_back(r);
        r += F.rank[n][top_n(n, y)];
      }
    C.ranks.push_back(r);
  }
  C.coface.resize(N + 1);
  C.codegen.resize(N + 1);
  for (int n = 0; n < N; ++n)
    for (int i = 0; i <= n + 1; ++i) {
      Matrix<Rational> d(C.ranks[n + 1], C.ranks[n]);
      for (std::size_t k = 0; k < ys[n + 1].size(); ++k) {
        std::size_t y1 = ys[n + 1][k];
        std::size_t y = X.d(n + m + 2, i, y1);
        std::size_t src = pos[n].at(y);
        const auto& blk = F.coface[n + 1][i][top_n(n + 1, y1)];
        for (std::size_t a = 0; a < blk.rows(); ++a)
          for (std::size_t b = 0; b < blk.cols(); ++b) d(off[n + 1][k] + a, off[n][src] + b) = blk(a, b);
      }
      C.coface[n].push_back(std::move(d));
    }
  for (int n = 0; n < N; ++n)
    for (int i = 0; i <= n; ++i) {
      Matrix<Rational> s(C.ranks[n], C.ranks[n + 1]);
      for (std::size_t k = 0; k < ys[n].size(); ++k) {
        std::size_t y = ys[n][k];
        std::size_t y1 = X.s(n + m + 1, i, y);
        std::size_t dst = pos[n + 1].at(y1);
        const auto& blk = F.codegen[n][i][top_n(n, y)];
        for (std::size_t a = 0; a < blk.rows(); ++a)
          for (std::size_t b = 0; b < blk.cols(); ++b) s(off[n][k] + a, off[n + 1][dst] + b) = blk(a, b);
      }
      C.codegen[n + 1].push_back(std::move(s));
    }
  out.complex = dkab::conormalize(C).complex;
  out.cohomology = dkab::cohomology_dims(out.complex);
  out.cohomology.resize(depth + 1, 0);
  return out;
}

}  // namespace hypergpd::hypaff
