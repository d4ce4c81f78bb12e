#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypergpd/dkab/cosimplicial.hpp"
#include "hypergpd/hypaff/certificate.hpp"
#include "hypergpd/hypaff/cohomology.hpp"
#include "hypergpd/hypaff/descent.hpp"
#include "hypergpd/qalg/module.hpp"

namespace hypergpd::cotan {

using hypaff::AffHypergroupoid;
using qalg::AlgebraMap;
using qalg::AlgPtr;
using qalg::FPModule;
using qalg::Poly;
using qalg::Vec;

/// A module map given by the images of the generators of its source.
using ModuleMap = std::vector<Vec>;

namespace detail {

inline FPModule base_change(const FPModule& M, const AlgebraMap& f) {
  std::vector<Vec> rels;
  for (const auto& r : M.relations) {
    Vec v;
    for (const auto& p : r) v.push_back(f.apply(p));
    rels.push_back(std::move(v));
  }
  return FPModule(f.dst, M.ngens, std::move(rels), M.gen_weights, M.gen_names);
}

/// Omega_Y -> Omega_Z for phi : O(Y) -> O(Z), coefficients moved on by sigma : O(Z) -> B.
inline ModuleMap induced_map(const AlgebraMap& phi, const AlgebraMap& sigma) {
  ModuleMap out;
  for (const auto& img : phi.images) {
    Vec v;
    for (std::size_t i = 0; i < phi.dst->nvars(); ++i) v.push_back(sigma.apply(phi.dst->nf(img.derivative(i))));
    out.push_back(std::move(v));
  }
  return out;
}

inline Vec apply(const AlgPtr& A, const ModuleMap& f, std::size_t target_rank, const Vec& v) {
  Vec out(target_rank, Poly(A->nvars()));
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j].is_zero()) continue;
    for (std::size_t r = 0; r < target_rank; ++r) out[r] = out[r] + v[j] * f[j][r];
  }
  for (auto& p : out) p = A->nf(p);
  return out;
}

/// O(S) -> O(X_q[tau]) through vertex 0.
inline AlgebraMap structure_map(const AffHypergroupoid& X, int q, std::size_t tau) {
  const auto& A = X.level(q).comps[tau];
  if (!X.base) return AlgebraMap::from_ground(A);
  auto v = X.op(OrdinalMap(q, {0}));
  return qalg::compose(v.pullback[tau], X.base_maps[v.comp[tau]]);
}

/// X_0 -> X_q, the total degeneracy.
inline hypaff::SchemeMap total_degeneracy(const AffHypergroupoid& X, int q) {
  return X.op(OrdinalMap(0, std::vector<int>(std::size_t(q) + 1, 0)));
}

}  // namespace detail

/**
 * One weight of a module with a chosen complement to the relations: `basis`
 * lists ambient positions whose classes form a basis of the quotient, and
 * proj sends ambient coordinates to coordinates in that basis.
 */
struct QuotientSlice {
  qalg::WeightSlice slice;
  std::vector<std::size_t> basis;
  Matrix<Rational> proj;  // dim x ambient
  std::size_t dim() const { return basis.size(); }
};

inline QuotientSlice quotient_slice(const FPModule& M, long w, int max_degree = 32) {
  QuotientSlice q;
  q.slice = qalg::weight_slice(M, w, max_degree);
  std::size_t n = q.slice.ambient.size();
  q.proj = Matrix<Rational>(0, n);
  if (n == 0) return q;
  Matrix<Rational> R = q.slice.relations.cols() ? column_space(q.slice.relations) : Matrix<Rational>(n, 0);
  std::size_t r = R.cols();
  auto I = Matrix<Rational>::identity(n);
  for (auto p : rref(hstack(R, I)).pivots)
    if (p >= r) q.basis.push_back(p - r);
  auto inv = inverse(hstack(R, I.columns(q.basis)));
  if (!inv) throw ValidationError("quotient_slice: complement is not a basis");  // unreachable
  q.proj = Matrix<Rational>(q.basis.size(), n);
  for (std::size_t i = 0; i < q.basis.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) q.proj(i, j) = (*inv)(r + i, j);
  return q;
}

/// Matrix of f between two quotient slices of modules over A.
inline Matrix<Rational> slice_map(const AlgPtr& A, const ModuleMap& f, const FPModule& from, const QuotientSlice& src,
                                  const FPModule& to, const QuotientSlice& dst) {
  Matrix<Rational> m(dst.dim(), src.dim());
  for (std::size_t k = 0; k < src.dim(); ++k) {
    auto v = hypaff::detail::basis_vec(A, from.ngens, src.slice.ambient[src.basis[k]]);
    auto col = dst.proj * dst.slice.coordinates(detail::apply(A, f, to.ngens, v));
    for (std::size_t r = 0; r < dst.dim(); ++r) m(r, k) = col(r, 0);
  }
  return m;
}

/**
 * V^q = s^* Omega(X_q / S) on every level-0 component c, with s the total
 * degeneracy, and the cosimplicial operators it inherits from X.
 * coface[q][i][c] : V^q -> V^{q+1}, codegen[q][i][c] : V^q -> V^{q-1}.
 */
struct PulledForms {
  int N = 0;
  std::vector<AlgPtr> rings;  // O(X_0[c])
  std::vector<std::vector<FPModule>> V;
  std::vector<std::vector<std::vector<ModuleMap>>> coface;
  std::vector<std::vector<std::vector<ModuleMap>>> codegen;
};

inline PulledForms pulled_forms(const AffHypergroupoid& X, int N) {
  if (N < 0) throw ArgumentError("pulled_forms: negative level");
  if (N > X.top())
    throw InsufficientData(X.name + ": level " + std::to_string(N) + " is not stored (top " + std::to_string(X.top()) + ")");
  PulledForms P;
  P.N = N;
  P.rings = X.level(0).comps;
  std::size_t C = P.rings.size();
  std::vector<hypaff::SchemeMap> sig;
  for (int q = 0; q <= N; ++q) sig.push_back(detail::total_degeneracy(X, q));
  for (int q = 0; q <= N; ++q) {
    P.V.emplace_back();
    for (std::size_t c = 0; c < C; ++c) {
      std::size_t tau = sig[q].comp[c];
      P.V[q].push_back(detail::base_change(qalg::kaehler(detail::structure_map(X, q, tau)), sig[q].pullback[c]));
    }
  }
  auto expect = [&](std::size_t got, std::size_t want) {
    if (got != want) throw ValidationError(X.name + ": operators do not fix the degenerate simplices");
  };
  P.coface.resize(N + 1);
  P.codegen.resize(N + 1);
  for (int q = 0; q < N; ++q)
    for (int i = 0; i <= q + 1; ++i) {
      P.coface[q].emplace_back();
      const auto& f = X.face[q + 1][i];
      for (std::size_t c = 0; c < C; ++c) {
        std::size_t t = sig[q + 1].comp[c];
        expect(f.comp[t], sig[q].comp[c]);
        P.coface[q][i].push_back(detail::induced_map(f.pullback[t], sig[q + 1].pullback[c]));
      }
    }
  for (int q = 1; q <= N; ++q)
    for (int i = 0; i < q; ++i) {
      P.codegen[q].emplace_back();
      const auto& s = X.degen[q - 1][i];
      for (std::size_t c = 0; c < C; ++c) {
        std::size_t t = sig[q - 1].comp[c];
        expect(s.comp[t], sig[q].comp[c]);
        P.codegen[q][i].push_back(detail::induced_map(s.pullback[t], sig[q - 1].pullback[c]));
      }
    }
  return P;
}

/// Weight w of V on component c as a cosimplicial vector space.
inline dkab::CosimplicialModule<Rational> forms_slice(const PulledForms& P, std::size_t c, long w, int cap = 32) {
  std::vector<QuotientSlice> S;
  for (int q = 0; q <= P.N; ++q) S.push_back(quotient_slice(P.V[q][c], w, cap));
  const auto& A = P.rings[c];
  dkab::CosimplicialModule<Rational> out;
  out.coface.resize(P.N + 1);
  out.codegen.resize(P.N + 1);
  for (int q = 0; q <= P.N; ++q) out.ranks.push_back(S[q].dim());
  for (int q = 0; q < P.N; ++q)
    for (int i = 0; i <= q + 1; ++i)
      out.coface[q].push_back(slice_map(A, P.coface[q][i][c], P.V[q][c], S[q], P.V[q + 1][c], S[q + 1]));
  for (int q = 1; q <= P.N; ++q)
    for (int i = 0; i < q; ++i)
      out.codegen[q].push_back(slice_map(A, P.codegen[q][i][c], P.V[q][c], S[q], P.V[q - 1][c], S[q - 1]));
  return out;
}

/**
 * A complex of modules over the level-0 components, terms[q][c] in
 * homological degree -q and diff[q][c] : terms[q] -> terms[q+1]. `descent`
 * optionally carries gluing data for each term, in the frames of free_frame.
 */
struct CotangentComplex {
  std::string name;
  int m = 0;
  std::vector<std::string> components;
  std::vector<AlgPtr> rings;
  std::vector<std::vector<FPModule>> terms;
  std::vector<std::vector<ModuleMap>> diff;
  std::vector<std::optional<hypaff::CartesianModule>> descent;

  /// Relations go to zero and d.d = 0, both by module normal forms.
  void validate() const {
    if (int(terms.size()) != m + 1 || int(diff.size()) != m) throw ValidationError(name + ": cotangent shape");
    for (int q = 0; q < m; ++q)
      for (std::size_t c = 0; c < rings.size(); ++c) {
        const auto& A = rings[c];
        const auto& src = terms[q][c];
        const auto& dst = terms[q + 1][c];
        if (diff[q][c].size() != src.ngens) throw ValidationError(name + ": differential has the wrong source");
        for (const auto& rel : src.relations)
          if (!dst.is_zero_element(detail::apply(A, diff[q][c], dst.ngens, rel)))
            throw ValidationError(name + ": differential out of degree " + std::to_string(-q) + " is not well defined");
        if (q + 1 < m)
          for (std::size_t j = 0; j < src.ngens; ++j) {
            auto once = detail::apply(A, diff[q][c], dst.ngens, src.basis(j));
            auto twice = detail::apply(A, diff[q + 1][c], terms[q + 2][c].ngens, once);
            if (!terms[q + 2][c].is_zero_element(twice))
              throw ValidationError(name + ": d.d != 0 out of degree " + std::to_string(-q));
          }
      }
  }
};

namespace detail {

inline const hypaff::CoverCertificate* find_certificate(const AffHypergroupoid& X, const hypaff::CertificateMap& certs,
                                                        int m, int k) {
  if (auto it = certs.find({m, k}); it != certs.end()) return &it->second;
  if (auto it = X.certificates.find({m, k}); it != X.certificates.end()) return &it->second;
  return nullptr;
}

}  // namespace detail

/**
 * The complex Omega(X_q / M_{Lambda^q_0} X) for q = 0..m, pulled back to X_0
 * and differentiated by d^0. These are the level-0 values of
 * Omega (x) (Delta^q / Lambda^q_0), i.e. V^q modulo the images of d^1..d^q.
 * Certificates for every (q, 0) must be attached or passed; they are not
 * re-verified here.
 */
inline CotangentComplex reduced_cotangent(const AffHypergroupoid& X, int m, const hypaff::CertificateMap& certs = {}) {
  if (m < 0) throw ArgumentError("reduced_cotangent: negative m");
  for (int q = 0; q <= m; ++q)
    if (!detail::find_certificate(X, certs, q, 0))
      throw InsufficientData(X.name + ": no smoothness certificate for (" + std::to_string(q) + ",0)");
  X.validate();
  auto P = pulled_forms(X, m);
  CotangentComplex L;
  L.name = X.name;
  L.m = m;
  L.components = X.level(0).labels;
  L.rings = P.rings;
  L.descent.assign(m + 1, std::nullopt);
  for (int q = 0; q <= m; ++q) {
    auto pm = hypaff::partial_matching(X, q, 0);
    auto sig = detail::total_degeneracy(X, q);
    L.terms.emplace_back();
    for (std::size_t c = 0; c < P.rings.size(); ++c) {
      std::size_t tau = sig.comp[c];
      auto rel = detail::base_change(qalg::kaehler(pm.map.pullback[tau]), sig.pullback[c]);
      if (rel.ngens != P.V[q][c].ngens) throw ValidationError(X.name + ": relative forms on the wrong generators");
      L.terms[q].push_back(std::move(rel));
    }
    if (q < m) L.diff.push_back(P.coface[q][0]);
  }
  L.validate();
  return L;
}

struct CotangentTable {
  int m = 0;
  std::vector<long> weights;
  std::vector<std::vector<std::size_t>> dims;  // dims[row][q] = dim H_{-q}
  std::vector<std::size_t> total;
  std::size_t at(int degree) const { return degree > 0 || -degree > m ? 0 : total[std::size_t(-degree)]; }
};

/// Homology of every weight in [lo, hi], summed over level-0 components.
inline CotangentTable cotangent_homology(const CotangentComplex& L, long lo, long hi, int cap = 32) {
  if (hi < lo) throw ArgumentError("cotangent_homology: empty window");
  CotangentTable t;
  t.m = L.m;
  t.total.assign(L.m + 1, 0);
  for (long w = lo; w <= hi; ++w) {
    std::vector<std::size_t> dims(L.m + 1, 0);
    for (std::size_t c = 0; c < L.rings.size(); ++c) {
      std::vector<QuotientSlice> S;
      for (int q = 0; q <= L.m; ++q) S.push_back(quotient_slice(L.terms[q][c], w, cap));
      std::vector<std::size_t> rk;
      for (int q = 0; q < L.m; ++q)
        rk.push_back(rank_of(slice_map(L.rings[c], L.diff[q][c], L.terms[q][c], S[q], L.terms[q + 1][c], S[q + 1])));
      for (int q = 0; q <= L.m; ++q)
        dims[q] += S[q].dim() - (q < L.m ? rk[q] : 0) - (q > 0 ? rk[q - 1] : 0);
    }
    for (int q = 0; q <= L.m; ++q) t.total[q] += dims[q];
    t.weights.push_back(w);
    t.dims.push_back(std::move(dims));
  }
  return t;
}

struct ShiftRow {
  long weight = 0;
  std::vector<std::size_t> tot;      // H_{-q} of Tot N_c V, q = 0..m
  std::size_t beyond = 0;            // H_{-(m+1)}, must vanish for the truncation
  std::vector<std::size_t> shifted;  // s^* Omega(X_m / M_{boundary} X) placed in degree -m
  bool agree = false;
};

struct ShiftReport {
  int m = 0;
  std::vector<ShiftRow> rows;
  bool truncation_ok() const {
    for (const auto& r : rows)
      if (r.beyond) return false;
    return true;
  }
  bool ok() const {
    for (const auto& r : rows)
      if (!r.agree || r.beyond) return false;
    return true;
  }
};

/**
 * Conormalized V truncated after degree m+1 against the relative forms of the
 * boundary matching map shifted to degree -m, weight by weight of the level-0
 * grading. Needs levels 0..m+2.
 */
inline ShiftReport cotangent_shift_check(const AffHypergroupoid& X, int m, const hypaff::Window& win) {
  if (m < 0) throw ArgumentError("cotangent_shift_check: negative m");
  if (win.hi < win.lo) throw ArgumentError("cotangent_shift_check: empty window");
  X.validate();
  auto P = pulled_forms(X, m + 2);
  hypaff::SchemeMap bd;
  if (m == 0) {
    bd = hypaff::partial_matching(X, 0, 0).map;
  } else {
    auto K = simpset::standard_complex(simpset::StandardKind::Boundary(m));
    bd = hypaff::matching_map(X, m, K, hypaff::matching_algebra(K, X));
  }
  auto sig = detail::total_degeneracy(X, m);
  std::vector<FPModule> Q;
  for (std::size_t c = 0; c < P.rings.size(); ++c)
    Q.push_back(detail::base_change(qalg::kaehler(bd.pullback[sig.comp[c]]), sig.pullback[c]));
  ShiftReport r;
  r.m = m;
  for (long w = win.lo; w <= win.hi; ++w) {
    ShiftRow row;
    row.weight = w;
    row.tot.assign(m + 1, 0);
    row.shifted.assign(m + 1, 0);
    for (std::size_t c = 0; c < P.rings.size(); ++c) {
      auto dims = dkab::cohomology_dims(dkab::conormalize(forms_slice(P, c, w, win.max_degree)).complex);
      dims.resize(m + 2, 0);
      for (int q = 0; q <= m; ++q) row.tot[q] += dims[q];
      row.beyond += dims[m + 1];
      row.shifted[m] += quotient_slice(Q[c], w, win.max_degree).dim();
    }
    row.agree = row.tot == row.shifted;
    r.rows.push_back(std::move(row));
  }
  return r;
}

}  // namespace hypergpd::cotan
