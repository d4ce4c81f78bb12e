#pragma once

#include <string>
#include <vector>

#include "hypergpd/hypaff/scheme.hpp"
#include "hypergpd/qalg/module.hpp"

namespace hypergpd::hypaff {

using PolyMatrix = std::vector<std::vector<Poly>>;

namespace detail {

inline PolyMatrix pull(const AlgebraMap& f, const PolyMatrix& m) {
  PolyMatrix out = m;
  for (auto& row : out)
    for (auto& p : row) p = f.apply(p);
  return out;
}

inline PolyMatrix multiply(const AlgPtr& A, const PolyMatrix& a, const PolyMatrix& b, std::size_t inner) {
  std::size_t cols = b.empty() ? 0 : b[0].size();
  PolyMatrix out(a.size(), std::vector<Poly>(cols, Poly(A->nvars())));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      Poly s(A->nvars());
      for (std::size_t k = 0; k < inner; ++k) s = s + a[i][k] * b[k][j];
      out[i][j] = A->nf(s);
    }
  return out;
}

inline bool is_identity(const AlgPtr& A, const PolyMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j)
      if (!A->equal(m[i][j], A->constant(i == j ? 1 : 0))) return false;
  return true;
}

}  // namespace detail

/**
 * Quasi-coherent module given by descent: a free module on every level-0
 * component and, on every level-1 component c, the matrix omega[c] writing
 * the frame at vertex 1 in the frame at vertex 0.
 */
struct CartesianModule {
  std::vector<std::size_t> ranks;             // per level-0 component
  std::vector<std::vector<int>> gen_weights;  // per level-0 component
  std::vector<PolyMatrix> omega;              // per level-1 component, rank(v0) x rank(v1)
};

/// Component of vertex v of every component of X_n.
inline std::vector<std::size_t> vertex_components(const AffHypergroupoid& X, int n, int v) {
  return X.op(OrdinalMap(n, {v})).comp;
}

/**
 * Checks shapes, weights, normalization along s_0 and the cocycle condition
 * on X_2. Failures of the last two raise DescentInvalid naming the witness.
 */
inline CartesianModule descent_module(const AffHypergroupoid& X, CartesianModule M) {
  if (X.top() < 2) throw InsufficientData(X.name + ": descent needs level 2");
  const auto& X0 = X.level(0);
  const auto& X1 = X.level(1);
  if (M.ranks.size() != X0.size()) throw ValidationError("descent: one rank per level-0 component");
  if (M.gen_weights.empty())
    for (auto r : M.ranks) M.gen_weights.emplace_back(r, 0);
  if (M.gen_weights.size() != X0.size()) throw ValidationError("descent: one weight list per level-0 component");
  for (std::size_t a = 0; a < X0.size(); ++a)
    if (M.gen_weights[a].size() != M.ranks[a]) throw ValidationError("descent: one weight per generator");
  if (M.omega.size() != X1.size()) throw ValidationError("descent: one gluing matrix per level-1 component");
  auto v0 = vertex_components(X, 1, 0), v1 = vertex_components(X, 1, 1);
  for (std::size_t c = 0; c < X1.size(); ++c) {
    const auto& A = X1.comps[c];
    auto& w = M.omega[c];
    std::string at = "gluing matrix on '" + X1.labels[c] + "'";
    if (w.size() != M.ranks[v0[c]]) throw ValidationError("descent: " + at + " has the wrong number of rows");
    for (auto& row : w) {
      if (row.size() != M.ranks[v1[c]]) throw ValidationError("descent: " + at + " has the wrong number of columns");
      for (auto& p : row) {
        if (p.nvars() != A->nvars()) throw ValidationError("descent: " + at + " has an entry in the wrong ring");
        p = A->nf(p);
      }
    }
  }
  const auto& s0 = X.degen[0][0];
  for (std::size_t a = 0; a < X0.size(); ++a)
    if (!detail::is_identity(X0.comps[a], detail::pull(s0.pullback[a], M.omega[s0.comp[a]])))
      throw DescentInvalid("descent: gluing matrix is not the identity on the diagonal of '" + X0.labels[a] + "'");
  const auto& X2 = X.level(2);
  auto e01 = X.op(OrdinalMap(2, {0, 1})), e12 = X.op(OrdinalMap(2, {1, 2})), e02 = X.op(OrdinalMap(2, {0, 2}));
  auto v2 = vertex_components(X, 2, 1);
  for (std::size_t t = 0; t < X2.size(); ++t) {
    const auto& A = X2.comps[t];
    auto om = [&](const SchemeMap& e) { return detail::pull(e.pullback[t], M.omega[e.comp[t]]); };
    auto lhs = detail::multiply(A, om(e01), om(e12), M.ranks[v2[t]]);
    auto rhs = om(e02);
    bool ok = lhs.size() == rhs.size();
    for (std::size_t i = 0; ok && i < lhs.size(); ++i)
      for (std::size_t j = 0; ok && j < lhs[i].size(); ++j) ok = A->equal(lhs[i][j], rhs[i][j]);
    if (!ok) throw DescentInvalid("descent: cocycle condition fails on level-2 component '" + X2.labels[t] + "'");
  }
  // weights last, so that a broken cocycle is reported as such
  for (std::size_t c = 0; c < X1.size(); ++c) {
    const auto& A = X1.comps[c];
    const auto& w = M.omega[c];
    if (X.filtration || !A->is_graded()) continue;
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = 0; j < w[i].size(); ++j) {
        if (w[i][j].is_zero()) continue;
        auto wt = w[i][j].homogeneous_weight(A->weights());
        long want = long(M.gen_weights[v1[c]][j]) - M.gen_weights[v0[c]][i];
        if (!wt || *wt != want)
          throw ValidationError("descent: gluing matrix on '" + X1.labels[c] + "' entry (" + std::to_string(i) + "," +
                                std::to_string(j) + ") should have weight " + std::to_string(want));
      }
  }
  return M;
}

/// Gluing matrices given as strings in the variables of each level-1 component.
inline CartesianModule descent_module(const AffHypergroupoid& X, std::vector<std::size_t> ranks,
                                      std::vector<std::vector<int>> weights,
                                      const std::vector<std::vector<std::vector<std::string>>>& omega) {
  CartesianModule M{std::move(ranks), std::move(weights), {}};
  const auto& X1 = X.level(1);
  if (omega.size() != X1.size()) throw ValidationError("descent: one gluing matrix per level-1 component");
  for (std::size_t c = 0; c < X1.size(); ++c) {
    PolyMatrix w;
    for (const auto& row : omega[c]) {
      w.emplace_back();
      for (const auto& s : row) w.back().push_back(X1.comps[c]->parse_element(s));
    }
    M.omega.push_back(std::move(w));
  }
  return descent_module(X, std::move(M));
}

inline CartesianModule structure_sheaf(const AffHypergroupoid& X) {
  CartesianModule M;
  M.ranks.assign(X.level(0).size(), 1);
  for (const auto& A : X.level(1).comps) M.omega.push_back({{A->constant(1)}});
  return descent_module(X, std::move(M));
}

/**
 * O(d) on the builtin projective line: generator of weight 0 on the s-chart
 * and d on the t-chart, glued by s^d (equivalently t^-d).
 */
inline CartesianModule line_bundle_P1(const AffHypergroupoid& X, int d) {
  const auto& X0 = X.level(0);
  if (X0.size() != 2) throw ArgumentError("line_bundle_P1: expected the two-chart projective line");
  std::vector<std::vector<int>> weights;
  for (const auto& l : X0.labels) {
    if (l != "s" && l != "t") throw ArgumentError("line_bundle_P1: charts must be labelled s and t");
    weights.push_back({l == "s" ? 0 : d});
  }
  auto v0 = vertex_components(X, 1, 0), v1 = vertex_components(X, 1, 1);
  auto power = [](const std::string& x, int e) { return e == 0 ? std::string("1") : x + "^" + std::to_string(e); };
  std::vector<std::vector<std::vector<std::string>>> omega;
  for (std::size_t c = 0; c < X.level(1).size(); ++c) {
    const auto& a = X0.labels[v0[c]];
    const auto& b = X0.labels[v1[c]];
    std::string w = "1";
    if (a != b) {
      const std::string& other = a == "s" ? "t" : "s";
      w = d >= 0 ? power(a, d) : power(other, -d);
    }
    omega.push_back({{w}});
  }
  return descent_module(X, {1, 1}, weights, omega);
}

/**
 * The Cartesian module spread over every level: on a component of X_n it is
 * the module of vertex 0, and the operators are pullbacks except d^0, which
 * also changes frame by omega along the edge (0,1).
 */
struct LevelwiseExpansion {
  const AffHypergroupoid* X = nullptr;
  const CartesianModule* M = nullptr;

  std::size_t base_component(int n, std::size_t c) const { return vertex_components(*X, n, 0)[c]; }
  std::size_t rank(int n, std::size_t c) const { return M->ranks[base_component(n, c)]; }
  const std::vector<int>& gen_weights(int n, std::size_t c) const { return M->gen_weights[base_component(n, c)]; }

  /// d^i : M_{n-1}[d_i tau] -> M_n[tau].
  qalg::Vec coface(int n, int i, std::size_t tau, const qalg::Vec& v) const {
    const auto& f = X->face[n][i];
    qalg::Vec w;
    for (const auto& p : v) w.push_back(f.pullback[tau].apply(p));
    if (i != 0) return w;
    auto e = X->op(OrdinalMap(n, {0, 1}));
    auto om = detail::pull(e.pullback[tau], M->omega[e.comp[tau]]);
    const auto& A = X->levels[n].comps[tau];
    qalg::Vec out(om.size(), Poly(A->nvars()));
    for (std::size_t r = 0; r < om.size(); ++r) {
      Poly s(A->nvars());
      for (std::size_t k = 0; k < w.size(); ++k) s = s + om[r][k] * w[k];
      out[r] = A->nf(s);
    }
    return out;
  }

  /// s^i : M_{n+1}[s_i c] -> M_n[c].
  qalg::Vec codegen(int n, int i, std::size_t c, const qalg::Vec& v) const {
    const auto& s = X->degen[n][i];
    qalg::Vec w;
    for (const auto& p : v) w.push_back(s.pullback[c].apply(p));
    return w;
  }
};

}  // namespace hypergpd::hypaff
