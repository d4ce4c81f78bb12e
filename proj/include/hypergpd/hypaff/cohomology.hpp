#pragma once

#include <map>
#include <string>
#include <vector>

#include "hypergpd/dkab/cosimplicial.hpp"
#include "hypergpd/hypaff/descent.hpp"

namespace hypergpd::hypaff {

/// Basis of one window slice of M_n, component by component.
struct LevelSlice {
  std::vector<std::vector<std::pair<std::size_t, Mono>>> basis;  // per component
  std::vector<std::size_t> offset;                               // per component
  std::vector<std::map<std::pair<std::size_t, Mono>, std::size_t>> index;
  std::size_t rank = 0;
};

/**
 * The window of the Cech complex: a weight range for graded hypergroupoids,
 * or the bound P = hi on the filtration when X carries one (then lo must be 0).
 */
struct Window {
  long lo = 0, hi = 0;
  int max_degree = 32;
};

namespace detail {

inline LevelSlice level_slice(const AffHypergroupoid& X, const LevelwiseExpansion& E, int n, long w, int cap) {
  LevelSlice s;
  const auto& L = X.level(n);
  for (std::size_t c = 0; c < L.size(); ++c) {
    const auto& A = L.comps[c];
    std::vector<std::pair<std::size_t, Mono>> b;
    const auto& gw = E.gen_weights(n, c);
    for (std::size_t j = 0; j < E.rank(n, c); ++j) {
      if (X.filtration) {
        for (auto& m : qalg::standard_monomials_upto(A, X.level_degree_cap(n, w)))
          if (X.filtration(n, c, m) <= w) b.emplace_back(j, m);
      } else {
        for (auto& m : qalg::standard_monomials(A, w - gw[j], cap)) b.emplace_back(j, m);
      }
    }
    s.offset.push_back(s.rank);
    s.index.emplace_back();
    for (std::size_t k = 0; k < b.size(); ++k) s.index.back()[b[k]] = s.rank + k;
    s.rank += b.size();
    s.basis.push_back(std::move(b));
  }
  return s;
}

inline void place(const LevelSlice& s, std::size_t c, const qalg::Vec& v, Matrix<Rational>& m, std::size_t col, long w,
                  int n) {
  for (std::size_t j = 0; j < v.size(); ++j)
    for (const auto& [mono, a] : v[j].terms()) {
      auto it = s.index[c].find({j, mono});
      if (it == s.index[c].end())
        throw WindowOverflow("weight " + std::to_string(w) + ": a structure map leaves the window at level " +
                             std::to_string(n));
      m(it->second, col) = a;
    }
}

inline qalg::Vec basis_vec(const AlgPtr& A, std::size_t rank, const std::pair<std::size_t, Mono>& b) {
  qalg::Vec v(rank, Poly(A->nvars()));
  v[b.first] = Poly::monomial(b.second, 1);
  return v;
}

}  // namespace detail

/// The cosimplicial vector space of sections in window slice w, levels 0..N.
inline dkab::CosimplicialModule<Rational> cech_slice(const AffHypergroupoid& X, const CartesianModule& M, long w,
                                                     int N, int cap = 32) {
  if (N > X.top())
    throw InsufficientData(X.name + ": level " + std::to_string(N) + " is not stored (top " + std::to_string(X.top()) + ")");
  LevelwiseExpansion E{&X, &M};
  std::vector<LevelSlice> S;
  for (int n = 0; n <= N; ++n) S.push_back(detail::level_slice(X, E, n, w, cap));
  dkab::CosimplicialModule<Rational> C;
  C.coface.resize(N + 1);
  C.codegen.resize(N + 1);
  for (int n = 0; n <= N; ++n) C.ranks.push_back(S[n].rank);
  for (int n = 1; n <= N; ++n)
    for (int i = 0; i <= n; ++i) {
      Matrix<Rational> m(S[n].rank, S[n - 1].rank);
      const auto& f = X.face[n][i];
      for (std::size_t tau = 0; tau < f.size(); ++tau) {
        std::size_t sigma = f.comp[tau];
        const auto& A = X.levels[n - 1].comps[sigma];
        for (std::size_t k = 0; k < S[n - 1].basis[sigma].size(); ++k) {
          auto v = E.coface(n, i, tau, detail::basis_vec(A, E.rank(n - 1, sigma), S[n - 1].basis[sigma][k]));
          detail::place(S[n], tau, v, m, S[n - 1].offset[sigma] + k, w, n);
        }
      }
      C.coface[n - 1].push_back(std::move(m));
    }
  for (int n = 0; n < N; ++n)
    for (int i = 0; i <= n; ++i) {
      Matrix<Rational> m(S[n].rank, S[n + 1].rank);
      const auto& s = X.degen[n][i];
      for (std::size_t c = 0; c < s.size(); ++c) {
        std::size_t rho = s.comp[c];
        const auto& A = X.levels[n + 1].comps[rho];
        for (std::size_t k = 0; k < S[n + 1].basis[rho].size(); ++k) {
          auto v = E.codegen(n, i, c, detail::basis_vec(A, E.rank(n + 1, rho), S[n + 1].basis[rho][k]));
          detail::place(S[n], c, v, m, S[n + 1].offset[rho] + k, w, n);
        }
      }
      C.codegen[n + 1].push_back(std::move(m));
    }
  return C;
}

struct CohomologyTable {
  int max_degree = 0;              // D
  bool filtered = false;           // rows are filtration bounds rather than weights
  std::vector<long> weights;       // row labels
  std::vector<std::vector<std::size_t>> dims;  // dims[row][q], q = 0..D
  std::vector<std::size_t> total;
};

/**
 * H^0..H^D of the conormalized cosimplicial complex of sections, per weight
 * of the window and summed. Needs levels 0..D+1.
 */
inline CohomologyTable cech_cohomology(const AffHypergroupoid& X, const CartesianModule& M, int D, const Window& win) {
  if (D < 0) throw ArgumentError("cech_cohomology: negative degree bound");
  if (win.hi < win.lo) throw ArgumentError("cech_cohomology: empty window");
  if (X.top() < D + 1)
    throw InsufficientData(X.name + ": cohomology up to degree " + std::to_string(D) + " needs level " +
                           std::to_string(D + 1));
  CohomologyTable t;
  t.max_degree = D;
  t.total.assign(D + 1, 0);
  std::vector<long> rows;
  if (X.filtration) {
    if (win.lo != 0) throw ArgumentError("cech_cohomology: a filtered window must start at 0");
    for (const auto& gw : M.gen_weights)
      for (int g : gw)
        if (g != 0) throw ArgumentError("cech_cohomology: generator weights must be 0 on a filtered hypergroupoid");
    t.filtered = true;
    rows.push_back(win.hi);
  } else {
    for (long w = win.lo; w <= win.hi; ++w) rows.push_back(w);
  }
  for (long w : rows) {
    auto C = cech_slice(X, M, w, D + 1, win.max_degree);
    auto dims = dkab::cohomology_dims(dkab::conormalize(C).complex);
    dims.resize(D + 1, 0);
    for (int q = 0; q <= D; ++q) t.total[q] += dims[q];
    t.weights.push_back(w);
    t.dims.push_back(dims);
  }
  return t;
}

}  // namespace hypergpd::hypaff
