#pragma once

#include <map>
#include <string>
#include <vector>

#include "hypergpd/dkab/simplicial_module.hpp"
#include "hypergpd/simpset/sset.hpp"

namespace hypergpd::cotan {

/**
 * (M (x) K) / (M (x) L) for a simplicial module M and L inside K: level n is
 * one copy of M_n for every x in K_n \ L_n, operators act diagonally and
 * send a copy to zero once its simplex lands in L.
 */
struct ModuleShapeTensor {
  dkab::SimplicialModule<Rational> module;
  std::vector<std::vector<std::size_t>> summands;  // per level, the simplices of generated K carrying a copy
};

namespace detail {

using VertexKey = std::vector<std::string>;

inline std::string vertex_label(const simpset::FinSSet& K, std::size_t z) {
  const auto& s = K.simplex(0, z);
  if (s.vertices && s.vertices->size() == 1) return std::to_string(s.vertices->front());
  return s.id;
}

/// Simplices of level n keyed by their vertex sequence; ArgumentError if that is ambiguous.
inline std::map<VertexKey, std::size_t> keyed_level(const simpset::FinSSet& K, const simpset::SSet& G, int n,
                                                    const std::string& what) {
  std::map<VertexKey, std::size_t> out;
  for (std::size_t x = 0; x < G.count[n]; ++x) {
    VertexKey k;
    for (int v = 0; v <= n; ++v) k.push_back(vertex_label(K, G.vertex(n, x, v)));
    if (!out.emplace(k, x).second)
      throw ArgumentError("module_shape_tensor: simplices of " + what + " are not determined by their vertices");
  }
  return out;
}

}  // namespace detail

/// Simplices of L and K are matched by their vertex labels, so both should be
/// subcomplexes of one simplex (or at least have vertex-determined simplices).
inline ModuleShapeTensor module_shape_tensor(const dkab::SimplicialModule<Rational>& M, const simpset::FinSSet& K,
                                             const simpset::FinSSet& L = {}) {
  M.validate();
  if (K.empty()) throw ArgumentError("module_shape_tensor: K is empty");
  int N = M.top();
  auto GK = simpset::generate(K, N);
  auto GL = simpset::generate(L, N);
  std::vector<std::vector<bool>> in_L(N + 1);
  for (int n = 0; n <= N; ++n) {
    auto kk = detail::keyed_level(K, GK, n, "K");
    auto kl = detail::keyed_level(L, GL, n, "L");
    in_L[n].assign(GK.count[n], false);
    for (const auto& [key, y] : kl) {
      auto it = kk.find(key);
      if (it == kk.end()) throw ArgumentError("module_shape_tensor: L is not a subcomplex of K");
      in_L[n][it->second] = true;
    }
  }
  ModuleShapeTensor T;
  auto& A = T.module;
  std::vector<std::vector<std::size_t>> pos(N + 1);
  for (int n = 0; n <= N; ++n) {
    T.summands.emplace_back();
    pos[n].assign(GK.count[n], std::size_t(-1));
    for (std::size_t x = 0; x < GK.count[n]; ++x)
      if (!in_L[n][x]) {
        pos[n][x] = T.summands[n].size();
        T.summands[n].push_back(x);
      }
    A.ranks.push_back(T.summands[n].size() * M.ranks[n]);
  }
  auto blockwise = [&](int from, int to, const std::vector<std::size_t>& f, const Matrix<Rational>& op) {
    Matrix<Rational> m(A.ranks[to], A.ranks[from]);
    std::size_t rf = M.ranks[from], rt = M.ranks[to];
    for (std::size_t k = 0; k < T.summands[from].size(); ++k) {
      std::size_t y = f[T.summands[from][k]];
      if (pos[to][y] == std::size_t(-1)) continue;
      for (std::size_t r = 0; r < rt; ++r)
        for (std::size_t c = 0; c < rf; ++c) m(pos[to][y] * rt + r, k * rf + c) = op(r, c);
    }
    return m;
  };
  A.face.resize(N + 1);
  A.degen.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    for (int i = 0; n > 0 && i <= n; ++i) A.face[n].push_back(blockwise(n, n - 1, GK.face[n][i], M.face[n][i]));
    for (int i = 0; n < N && i <= n; ++i) A.degen[n].push_back(blockwise(n, n + 1, GK.degen[n][i], M.degen[n][i]));
  }
  return T;
}

}  // namespace hypergpd::cotan
