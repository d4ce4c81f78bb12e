#pragma once

#include <string>
#include <vector>

#include "hypergpd/cotan/cotangent.hpp"

namespace hypergpd::cotan {

using hypaff::CartesianModule;
using hypaff::PolyMatrix;

/**
 * A free basis of a module: frame element k is generator gens[k], and
 * generator j equals sum_k coords[k][j] times frame element k.
 */
struct FreeFrame {
  std::vector<std::size_t> gens;
  PolyMatrix coords;  // rank x ngens
  std::vector<int> weights;
  std::size_t rank() const { return gens.size(); }
};

/// Over a field any presentation will do; over a polynomial ring only one without relations.
inline FreeFrame free_frame(const FPModule& M) {
  const auto& A = M.ring;
  std::size_t n = M.ngens, nv = A->nvars();
  FreeFrame f;
  if (nv == 0) {
    Matrix<Rational> R(n, M.relations.size());
    for (std::size_t k = 0; k < M.relations.size(); ++k)
      for (std::size_t j = 0; j < n; ++j) R(j, k) = M.relations[k][j].constant_term();
    R = R.cols() ? column_space(R) : Matrix<Rational>(n, 0);
    std::size_t r = R.cols();
    auto I = Matrix<Rational>::identity(n);
    for (auto p : rref(hstack(R, I)).pivots)
      if (p >= r) f.gens.push_back(p - r);
    auto inv = *inverse(hstack(R, I.columns(f.gens)));
    for (std::size_t k = 0; k < f.gens.size(); ++k) {
      f.coords.emplace_back();
      for (std::size_t j = 0; j < n; ++j) f.coords[k].push_back(Poly::constant(0, inv(r + k, j)));
    }
  } else {
    for (const auto& rel : M.relations)
      for (const auto& p : rel)
        if (!p.is_zero()) throw InsufficientData("ext: a cotangent term is not presented as a free module");
    for (std::size_t j = 0; j < n; ++j) {
      f.gens.push_back(j);
      f.coords.emplace_back();
      for (std::size_t i = 0; i < n; ++i) f.coords[j].push_back(A->constant(i == j ? 1 : 0));
    }
  }
  for (auto g : f.gens) f.weights.push_back(M.gen_weights[g]);
  return f;
}

namespace detail {

/// The differential between frames: rank(to) x rank(from).
inline PolyMatrix frame_matrix(const AlgPtr& A, const ModuleMap& d, const FreeFrame& from, const FreeFrame& to) {
  PolyMatrix D(to.rank(), std::vector<Poly>(from.rank(), Poly(A->nvars())));
  for (std::size_t k = 0; k < from.rank(); ++k) {
    const auto& v = d[from.gens[k]];
    for (std::size_t r = 0; r < to.rank(); ++r) {
      Poly s(A->nvars());
      for (std::size_t j = 0; j < v.size(); ++j) s = s + to.coords[r][j] * v[j];
      D[r][k] = A->nf(s);
    }
  }
  return D;
}

inline bool is_constant_scheme(const AffHypergroupoid& X) {
  const auto& X0 = X.level(0);
  const auto& X1 = X.level(1);
  if (X1.size() != X0.size()) return false;
  for (int i = 0; i <= 1; ++i)
    for (std::size_t c = 0; c < X1.size(); ++c) {
      const auto& f = X.face[1][i];
      if (f.comp[c] != c || !f.pullback[c].same_as(AlgebraMap::identity(X0.comps[c]))) return false;
    }
  return true;
}

inline PolyMatrix identity_matrix(const AlgPtr& A, std::size_t r) {
  PolyMatrix m(r, std::vector<Poly>(r, Poly(A->nvars())));
  for (std::size_t i = 0; i < r; ++i) m[i][i] = A->constant(1);
  return m;
}

inline std::optional<PolyMatrix> invert(const AlgPtr& A, const PolyMatrix& w) {
  std::size_t r = w.size();
  bool constant = true;
  for (const auto& row : w)
    for (const auto& p : row) constant = constant && p.is_constant();
  if (constant) {
    Matrix<Rational> m(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) m(i, j) = w[i][j].constant_term();
    auto inv = inverse(m);
    if (!inv) return std::nullopt;
    PolyMatrix out(r, std::vector<Poly>(r, Poly(A->nvars())));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) out[i][j] = A->constant((*inv)(i, j));
    return out;
  }
  if (r == 1)
    if (auto u = qalg::unit_inverse(A, w[0][0])) return PolyMatrix{{*u}};
  return std::nullopt;
}

}  // namespace detail

/**
 * Gluing data of term q in its free frames: given on L, derived for constant
 * schemes and zero terms, or read from the construction's annotations.
 */
inline CartesianModule term_descent(const AffHypergroupoid& X, const CotangentComplex& L, int q,
                                    const std::vector<FreeFrame>& frames) {
  if (q < int(L.descent.size()) && L.descent[q]) return hypaff::descent_module(X, *L.descent[q]);
  CartesianModule M;
  bool zero = true;
  for (const auto& f : frames) {
    M.ranks.push_back(f.rank());
    M.gen_weights.push_back(f.weights);
    zero = zero && f.rank() == 0;
  }
  const auto& X1 = X.level(1);
  if (zero) {
    M.omega.assign(X1.size(), {});
    return hypaff::descent_module(X, std::move(M));
  }
  if (detail::is_constant_scheme(X)) {
    for (std::size_t c = 0; c < X1.size(); ++c) M.omega.push_back(detail::identity_matrix(X1.comps[c], M.ranks[c]));
    return hypaff::descent_module(X, std::move(M));
  }
  auto it = X.cotangent_gluing.find(q);
  if (it == X.cotangent_gluing.end())
    throw InsufficientData(X.name + ": no descent data for the cotangent term in degree " + std::to_string(-q));
  return hypaff::descent_module(X, M.ranks, M.gen_weights, it->second);
}

/// Hom(E, F) of Cartesian modules, frames e_a^* (x) f_b at index a * rank(F) + b.
inline CartesianModule hom_module(const AffHypergroupoid& X, const CartesianModule& E, const CartesianModule& F) {
  const auto& X1 = X.level(1);
  if (E.ranks.size() != F.ranks.size()) throw ArgumentError("hom_module: modules on different level-0 components");
  CartesianModule H;
  for (std::size_t c = 0; c < E.ranks.size(); ++c) {
    H.ranks.push_back(E.ranks[c] * F.ranks[c]);
    H.gen_weights.emplace_back();
    for (std::size_t a = 0; a < E.ranks[c]; ++a)
      for (std::size_t b = 0; b < F.ranks[c]; ++b) H.gen_weights[c].push_back(F.gen_weights[c][b] - E.gen_weights[c][a]);
  }
  auto v0 = hypaff::vertex_components(X, 1, 0), v1 = hypaff::vertex_components(X, 1, 1);
  for (std::size_t c = 0; c < X1.size(); ++c) {
    const auto& A = X1.comps[c];
    auto inv = detail::invert(A, E.omega[c]);
    if (!inv) throw InsufficientData("hom_module: cannot invert the gluing on '" + X1.labels[c] + "'");
    std::size_t e0 = E.ranks[v0[c]], e1 = E.ranks[v1[c]], f0 = F.ranks[v0[c]], f1 = F.ranks[v1[c]];
    PolyMatrix w(e0 * f0, std::vector<Poly>(e1 * f1, Poly(A->nvars())));
    for (std::size_t a = 0; a < e1; ++a)
      for (std::size_t b = 0; b < f1; ++b)
        for (std::size_t a2 = 0; a2 < e0; ++a2)
          for (std::size_t b2 = 0; b2 < f0; ++b2) w[a2 * f0 + b2][a * f1 + b] = A->nf((*inv)[a][a2] * F.omega[c][b2][b]);
    H.omega.push_back(std::move(w));
  }
  return hypaff::descent_module(X, std::move(H));
}

struct ExtTable {
  int a = 0, b = 0;
  bool filtered = false;
  std::vector<long> weights;                   // row labels (the filtration bound when filtered)
  std::vector<std::vector<std::size_t>> dims;  // dims[row][i - a]
  std::vector<std::size_t> total;
  std::size_t at(int i) const { return i < a || i > b ? 0 : total[std::size_t(i - a)]; }
};

/**
 * Ext^i(L, F) for i in [a, b] as H_i of the product total complex of the
 * Cech complexes of Hom(L_{-q}, F): block (q, p) sits in degree q - p, with
 * d = delta + (-1)^p h, h precomposition with the differential of L. Every
 * term of L needs a free frame and descent data. Needs levels 0..m-a+1.
 */
inline ExtTable ext_dims(const AffHypergroupoid& X, const CotangentComplex& L, const CartesianModule& F, int a, int b,
                         const hypaff::Window& win) {
  if (b < a) throw ArgumentError("ext_dims: empty degree range");
  if (win.hi < win.lo) throw ArgumentError("ext_dims: empty window");
  L.validate();
  int m = L.m;
  int N = std::max(m - a + 1, 0);
  if (X.top() < std::max(N, 2))
    throw InsufficientData(X.name + ": Ext from degree " + std::to_string(a) + " needs level " + std::to_string(std::max(N, 2)));
  auto Fd = hypaff::descent_module(X, F);
  std::size_t C = L.rings.size();
  if (Fd.ranks.size() != C) throw ArgumentError("ext_dims: F lives on other level-0 components");

  std::vector<std::vector<FreeFrame>> frames(m + 1);
  for (int q = 0; q <= m; ++q)
    for (std::size_t c = 0; c < C; ++c) frames[q].push_back(free_frame(L.terms[q][c]));
  std::vector<std::vector<PolyMatrix>> D(m);  // D[q][c] : frame q -> frame q+1
  for (int q = 0; q < m; ++q)
    for (std::size_t c = 0; c < C; ++c)
      D[q].push_back(detail::frame_matrix(L.rings[c], L.diff[q][c], frames[q][c], frames[q + 1][c]));
  std::vector<CartesianModule> Ld, H;
  for (int q = 0; q <= m; ++q) {
    Ld.push_back(term_descent(X, L, q, frames[q]));
    H.push_back(hom_module(X, Ld[q], Fd));
  }
  // the differential of L must respect the gluing
  const auto& X1 = X.level(1);
  auto e0 = X.op(OrdinalMap(1, {0})), e1 = X.op(OrdinalMap(1, {1}));
  for (int q = 0; q < m; ++q)
    for (std::size_t c = 0; c < X1.size(); ++c) {
      const auto& A = X1.comps[c];
      auto lhs = hypaff::detail::multiply(A, hypaff::detail::pull(e0.pullback[c], D[q][e0.comp[c]]), Ld[q].omega[c],
                                          Ld[q].ranks[e0.comp[c]]);
      auto rhs = hypaff::detail::multiply(A, Ld[q + 1].omega[c], hypaff::detail::pull(e1.pullback[c], D[q][e1.comp[c]]),
                                          Ld[q + 1].ranks[e1.comp[c]]);
      for (std::size_t i = 0; i < lhs.size(); ++i)
        for (std::size_t j = 0; j < lhs[i].size(); ++j)
          if (!A->equal(lhs[i][j], rhs[i][j]))
            throw DescentInvalid("ext: the differential out of degree " + std::to_string(-q) +
                                 " does not commute with the gluing on '" + X1.labels[c] + "'");
    }

  ExtTable t;
  t.a = a;
  t.b = b;
  t.total.assign(std::size_t(b - a + 1), 0);
  std::vector<long> rows;
  if (X.filtration) {
    if (win.lo != 0) throw ArgumentError("ext_dims: a filtered window must start at 0");
    for (const auto& Hq : H)
      for (const auto& gw : Hq.gen_weights)
        for (int g : gw)
          if (g != 0) throw ArgumentError("ext_dims: generator weights must be 0 on a filtered hypergroupoid");
    t.filtered = true;
    rows.push_back(win.hi);
  } else {
    for (long w = win.lo; w <= win.hi; ++w) rows.push_back(w);
  }

  for (long w : rows) {
    std::vector<dkab::CochainComplex<Rational>> cech;
    std::vector<std::vector<hypaff::LevelSlice>> S(m + 1);
    for (int q = 0; q <= m; ++q) {
      cech.push_back(dkab::alternating_complex(hypaff::cech_slice(X, H[q], w, N, win.max_degree)));
      hypaff::LevelwiseExpansion E{&X, &H[q]};
      for (int p = 0; p <= N; ++p) S[q].push_back(hypaff::detail::level_slice(X, E, p, w, win.max_degree));
    }
    // h[q][p] : Hom(L_{-(q+1)}, F) -> Hom(L_{-q}, F) on Cech level p
    std::vector<std::vector<Matrix<Rational>>> h(m);
    for (int q = 0; q < m; ++q)
      for (int p = 0; p <= N; ++p) {
        const auto& src = S[q + 1][p];
        const auto& dst = S[q][p];
        Matrix<Rational> mat(dst.rank, src.rank);
        auto v0 = X.op(OrdinalMap(p, {0}));
        const auto& Xp = X.level(p);
        for (std::size_t tau = 0; tau < Xp.size(); ++tau) {
          const auto& A = Xp.comps[tau];
          std::size_t c0 = v0.comp[tau];
          auto Dp = hypaff::detail::pull(v0.pullback[tau], D[q][c0]);
          std::size_t rf = Fd.ranks[c0], rq = frames[q][c0].rank();
          for (std::size_t k = 0; k < src.basis[tau].size(); ++k) {
            const auto& [j, mono] = src.basis[tau][k];
            std::size_t ai = j / rf, bi = j % rf;
            Vec v(rq * rf, Poly(A->nvars()));
            for (std::size_t a2 = 0; a2 < rq; ++a2) v[a2 * rf + bi] = A->nf(Dp[ai][a2].times_mono(mono, 1));
            hypaff::detail::place(dst, tau, v, mat, src.offset[tau] + k, w, p);
          }
        }
        h[q].push_back(std::move(mat));
      }
    // total complex in degrees -N..m
    int lo = -N;
    std::vector<std::vector<std::size_t>> off(m + 1, std::vector<std::size_t>(N + 1, 0));
    std::vector<std::size_t> ranks(std::size_t(m + N + 1), 0);
    for (int q = 0; q <= m; ++q)
      for (int p = 0; p <= N; ++p) {
        auto& r = ranks[std::size_t(q - p - lo)];
        off[q][p] = r;
        r += cech[q].ranks[p];
      }
    auto T = dkab::make_complex<Rational>(lo, ranks);
    for (int q = 0; q <= m; ++q)
      for (int p = 0; p <= N; ++p) {
        int i = q - p;
        if (i - 1 < lo) continue;
        auto& d = T.d[std::size_t(i - lo)];
        if (p + 1 <= N) {
          const auto& del = cech[q].d[p];
          for (std::size_t r = 0; r < del.rows(); ++r)
            for (std::size_t c = 0; c < del.cols(); ++c) d(off[q][p + 1] + r, off[q][p] + c) += del(r, c);
        }
        if (q >= 1) {
          const auto& hh = h[q - 1][p];
          for (std::size_t r = 0; r < hh.rows(); ++r)
            for (std::size_t c = 0; c < hh.cols(); ++c)
              d(off[q - 1][p] + r, off[q][p] + c) += p % 2 ? -hh(r, c) : hh(r, c);
        }
      }
    T.validate();
    std::vector<std::size_t> dims;
    for (int i = a; i <= b; ++i) {
      std::size_t r_out = rank_of(T.diff(i));
      std::size_t r_in = i + 1 <= T.hi() ? rank_of(T.diff(i + 1)) : 0;
      dims.push_back(T.rank_at(i) - r_out - r_in);
    }
    for (std::size_t k = 0; k < dims.size(); ++k) t.total[k] += dims[k];
    t.weights.push_back(w);
    t.dims.push_back(std::move(dims));
  }
  return t;
}

}  // namespace hypergpd::cotan
