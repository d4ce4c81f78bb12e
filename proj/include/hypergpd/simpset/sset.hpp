#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hypergpd/core/error.hpp"
#include "hypergpd/core/ordinal.hpp"
#include "hypergpd/simpset/finsset.hpp"

namespace hypergpd::simpset {

struct VecHash {
  std::size_t operator()(const std::vector<std::size_t>& v) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
    for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/**
 * Levels 0..top of a simplicial set, stored explicitly. face[n][i][x] is d_i
 * of x in X_n; degen[n][i][x] is s_i of x in X_n (defined for n < top).
 */
struct SSet {
  std::vector<std::size_t> count;
  std::vector<std::vector<std::vector<std::size_t>>> face;
  std::vector<std::vector<std::vector<std::size_t>>> degen;

  int top() const { return int(count.size()) - 1; }

  std::size_t d(int n, int i, std::size_t x) const { return face[n][i][x]; }
  std::size_t s(int n, int i, std::size_t x) const { return degen[n][i][x]; }

  /// X(theta)(x) for theta : [a] -> [n], x in X_n.
  std::size_t apply(const OrdinalMap& theta, std::size_t x) const {
    auto em = epi_mono(theta);
    int n = theta.dst;
    std::vector<int> img = em.mono.values;
    int cur = n;
    for (int v = n; v >= 0; --v)
      if (!std::binary_search(img.begin(), img.end(), v)) {
        x = face[cur][v][x];
        --cur;
      }
    auto w = degeneracy_word(em.epi);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      x = degen[cur][*it][x];
      ++cur;
    }
    return x;
  }

  /// Vertex v of an n-simplex.
  std::size_t vertex(int n, std::size_t x, int v) const { return apply(OrdinalMap(n, {v}), x); }

  /// The largest set J with x = s_j d_j x for j in J, i.e. the degeneracy word.
  std::vector<int> degeneracy_indices(int n, std::size_t x) const {
    std::vector<int> w;
    if (n == 0) return w;
    for (int j = n - 1; j >= 0; --j)
      if (degen[n - 1][j][face[n][j][x]] == x) w.push_back(j);
    return w;
  }
  bool degenerate(int n, std::size_t x) const { return n > 0 && !degeneracy_indices(n, x).empty(); }

  /// Check all simplicial identities on the stored levels.
  void validate() const {
    auto fail = [](const std::string& what) { throw ValidationError("simplicial identity " + what); };
    for (int n = 0; n <= top(); ++n) {
      if (n >= 1 && int(face[n].size()) != n + 1) fail("face table arity");
      for (std::size_t x = 0; x < count[n]; ++x) {
        for (int j = 1; j <= n; ++j)
          for (int i = 0; i < j; ++i)
            if (n >= 2 && face[n - 1][i][face[n][j][x]] != face[n - 1][j - 1][face[n][i][x]])
              fail("d_i d_j at level " + std::to_string(n));
        if (n < top()) {
          for (int j = 0; j <= n; ++j) {
            std::size_t y = degen[n][j][x];
            for (int i = 0; i <= n + 1; ++i) {
              std::size_t lhs = face[n + 1][i][y];
              std::size_t rhs;
              if (i == j || i == j + 1)
                rhs = x;
              else if (i < j)
                rhs = degen[n - 1][j - 1][face[n][i][x]];
              else
                rhs = degen[n - 1][j][face[n][i - 1][x]];
              if (lhs != rhs) fail("d_i s_j at level " + std::to_string(n));
            }
            if (n + 1 < top())
              for (int i = 0; i <= j; ++i)
                if (degen[n + 1][i][degen[n][j][x]] != degen[n + 1][j + 1][degen[n][i][x]])
                  fail("s_i s_j at level " + std::to_string(n));
          }
        }
      }
    }
  }

  SSet truncated(int n) const {
    SSet t;
    for (int k = 0; k <= std::min(n, top()); ++k) {
      t.count.push_back(count[k]);
      t.face.push_back(face[k]);
      t.degen.push_back(k < std::min(n, top()) ? degen[k] : std::vector<std::vector<std::size_t>>{});
    }
    return t;
  }
};

/// Levelwise map of explicit simplicial sets.
struct SSetMorphism {
  std::vector<std::vector<std::size_t>> map;
  int top() const { return int(map.size()) - 1; }
  std::size_t operator()(int n, std::size_t x) const { return map[n][x]; }

  void validate(const SSet& X, const SSet& Y) const {
    for (int n = 0; n <= top(); ++n) {
      if (map[n].size() != X.count[n]) throw ValidationError("morphism size mismatch");
      for (std::size_t x = 0; x < X.count[n]; ++x) {
        if (map[n][x] >= Y.count[n]) throw ValidationError("morphism image out of range");
        if (n >= 1)
          for (int i = 0; i <= n; ++i)
            if (map[n - 1][X.d(n, i, x)] != Y.d(n, i, map[n][x]))
              throw ValidationError("morphism does not commute with d_" + std::to_string(i));
        if (n < top())
          for (int i = 0; i <= n; ++i)
            if (map[n + 1][X.s(n, i, x)] != Y.s(n, i, map[n][x]))
              throw ValidationError("morphism does not commute with s_" + std::to_string(i));
      }
    }
  }

  SSetMorphism truncated(int n) const {
    SSetMorphism t;
    for (int k = 0; k <= std::min(n, top()); ++k) t.map.push_back(map[k]);
    return t;
  }
};

inline SSetMorphism compose(const SSetMorphism& g, const SSetMorphism& f) {
  SSetMorphism h;
  for (int n = 0; n <= std::min(f.top(), g.top()); ++n) {
    std::vector<std::size_t> m(f.map[n].size());
    for (std::size_t x = 0; x < m.size(); ++x) m[x] = g.map[n][f.map[n][x]];
    h.map.push_back(std::move(m));
  }
  return h;
}

inline SSetMorphism identity_morphism(const SSet& X) {
  SSetMorphism f;
  for (int n = 0; n <= X.top(); ++n) {
    std::vector<std::size_t> m(X.count[n]);
    for (std::size_t x = 0; x < m.size(); ++x) m[x] = x;
    f.map.push_back(std::move(m));
  }
  return f;
}

/// Explicit levels 0..N of a finite simplicial set.
inline SSet generate(const FinSSet& K, int N) {
  SSet X;
  std::vector<std::map<FinSSet::Simplex, std::size_t>> index(N + 1);
  std::vector<std::vector<FinSSet::Simplex>> lv(N + 1);
  for (int n = 0; n <= N; ++n) {
    lv[n] = K.level(n);
    for (std::size_t i = 0; i < lv[n].size(); ++i) index[n][lv[n][i]] = i;
    X.count.push_back(lv[n].size());
  }
  for (int n = 0; n <= N; ++n) {
    std::vector<std::vector<std::size_t>> f;
    if (n >= 1)
      for (int i = 0; i <= n; ++i) {
        std::vector<std::size_t> col(lv[n].size());
        for (std::size_t x = 0; x < lv[n].size(); ++x) col[x] = index[n - 1].at(K.face(lv[n][x], i));
        f.push_back(std::move(col));
      }
    X.face.push_back(std::move(f));
    std::vector<std::vector<std::size_t>> s;
    if (n < N)
      for (int i = 0; i <= n; ++i) {
        std::vector<std::size_t> col(lv[n].size());
        for (std::size_t x = 0; x < lv[n].size(); ++x) col[x] = index[n + 1].at(K.degeneracy(lv[n][x], i));
        s.push_back(std::move(col));
      }
    X.degen.push_back(std::move(s));
  }
  return X;
}

/// Nondegenerate tables of explicit levels 0..N (faces as normal-form words).
inline FinSSet to_finsset(const SSet& X, int N, const std::function<std::string(int, std::size_t)>& label = {}) {
  std::vector<std::vector<NondegSimplex>> levels(N + 1);
  std::vector<std::unordered_map<std::size_t, std::size_t>> nd_index(N + 1);
  for (int n = 0; n <= N; ++n)
    for (std::size_t x = 0; x < X.count[n]; ++x) {
      if (X.degenerate(n, x)) continue;
      NondegSimplex ns;
      ns.id = label ? label(n, x) : std::to_string(n) + ":" + std::to_string(x);
      if (n >= 1)
        for (int i = 0; i <= n; ++i) {
          std::size_t y = X.d(n, i, x);
          auto w = X.degeneracy_indices(n - 1, y);
          std::size_t z = y;
          int cur = n - 1;
          for (int j : w) {
            z = X.d(cur, j, z);
            --cur;
          }
          ns.faces.push_back({w, nd_index[cur].at(z)});
        }
      nd_index[n][x] = levels[n].size();
      levels[n].push_back(std::move(ns));
    }
  return FinSSet(std::move(levels));
}

/// The terminal simplicial set, levels 0..N.
inline SSet point(int N) {
  SSet X;
  for (int n = 0; n <= N; ++n) {
    X.count.push_back(1);
    X.face.emplace_back(n >= 1 ? n + 1 : 0, std::vector<std::size_t>{0});
    X.degen.emplace_back(n < N ? n + 1 : 0, std::vector<std::size_t>{0});
  }
  return X;
}

/// Constant simplicial set on an m-element set.
inline SSet constant(std::size_t m, int N) {
  SSet X;
  std::vector<std::size_t> id(m);
  for (std::size_t i = 0; i < m; ++i) id[i] = i;
  for (int n = 0; n <= N; ++n) {
    X.count.push_back(m);
    X.face.emplace_back(n >= 1 ? n + 1 : 0, id);
    X.degen.emplace_back(n < N ? n + 1 : 0, id);
  }
  return X;
}

inline SSetMorphism to_point(const SSet& X) {
  SSetMorphism f;
  for (int n = 0; n <= X.top(); ++n) f.map.emplace_back(X.count[n], 0);
  return f;
}

/// X x_Z Y with its two projections.
struct FiberProduct {
  SSet P;
  SSetMorphism p1, p2;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs;
};

inline FiberProduct fiber_product(const SSet& X, const SSetMorphism& f, const SSet& Y, const SSetMorphism& g) {
  int N = std::min({X.top(), Y.top(), f.top(), g.top()});
  FiberProduct fp;
  std::vector<std::map<std::pair<std::size_t, std::size_t>, std::size_t>> index(N + 1);
  for (int n = 0; n <= N; ++n) {
    std::unordered_map<std::size_t, std::vector<std::size_t>> by_image;
    for (std::size_t y = 0; y < Y.count[n]; ++y) by_image[g(n, y)].push_back(y);
    std::vector<std::pair<std::size_t, std::size_t>> ps;
    for (std::size_t x = 0; x < X.count[n]; ++x) {
      auto it = by_image.find(f(n, x));
      if (it == by_image.end()) continue;
      for (auto y : it->second) ps.emplace_back(x, y);
    }
    for (std::size_t i = 0; i < ps.size(); ++i) index[n][ps[i]] = i;
    fp.P.count.push_back(ps.size());
    fp.pairs.push_back(std::move(ps));
  }
  for (int n = 0; n <= N; ++n) {
    const auto& ps = fp.pairs[n];
    std::vector<std::vector<std::size_t>> fc, dg;
    if (n >= 1)
      for (int i = 0; i <= n; ++i) {
        std::vector<std::size_t> col(ps.size());
        for (std::size_t k = 0; k < ps.size(); ++k)
          col[k] = index[n - 1].at({X.d(n, i, ps[k].first), Y.d(n, i, ps[k].second)});
        fc.push_back(std::move(col));
      }
    if (n < N)
      for (int i = 0; i <= n; ++i) {
        std::vector<std::size_t> col(ps.size());
        for (std::size_t k = 0; k < ps.size(); ++k)
          col[k] = index[n + 1].at({X.s(n, i, ps[k].first), Y.s(n, i, ps[k].second)});
        dg.push_back(std::move(col));
      }
    fp.P.face.push_back(std::move(fc));
    fp.P.degen.push_back(std::move(dg));
    std::vector<std::size_t> a(ps.size()), b(ps.size());
    for (std::size_t k = 0; k < ps.size(); ++k) {
      a[k] = ps[k].first;
      b[k] = ps[k].second;
    }
    fp.p1.map.push_back(std::move(a));
    fp.p2.map.push_back(std::move(b));
  }
  return fp;
}

// ---------------------------------------------------------------------------
// Finite groupoids and their nerves.

struct Groupoid {
  std::size_t objects = 0;
  std::vector<std::size_t> src, tgt;
  std::vector<std::vector<std::size_t>> compose;  // compose[f][g] = g o f (f then g), when tgt f = src g
  std::vector<std::size_t> identity;

  std::size_t arrows() const { return src.size(); }
  bool discrete() const { return arrows() == objects; }

  void validate() const {
    for (std::size_t f = 0; f < arrows(); ++f)
      for (std::size_t g = 0; g < arrows(); ++g) {
        if (tgt[f] != src[g]) continue;
        std::size_t h = compose[f][g];
        if (src[h] != src[f] || tgt[h] != tgt[g]) throw ValidationError("groupoid composition endpoints");
      }
    for (std::size_t f = 0; f < arrows(); ++f) {
      if (compose[identity[src[f]]][f] != f || compose[f][identity[tgt[f]]] != f)
        throw ValidationError("groupoid identity law");
      bool inv = false;
      for (std::size_t g = 0; g < arrows(); ++g)
        if (src[g] == tgt[f] && tgt[g] == src[f] && compose[f][g] == identity[src[f]]) inv = true;
      if (!inv) throw ValidationError("groupoid arrow without inverse");
    }
  }
};

/// A group given by its multiplication table (element 0 is the unit).
struct FiniteGroup {
  std::vector<std::vector<std::size_t>> mul;
  std::size_t order() const { return mul.size(); }

  static FiniteGroup cyclic(std::size_t n) {
    FiniteGroup g;
    g.mul.assign(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) g.mul[a][b] = (a + b) % n;
    return g;
  }
  /// S3 as permutations of {0,1,2}, listed lexicographically (identity first).
  static FiniteGroup symmetric3() {
    std::vector<std::vector<int>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    FiniteGroup g;
    g.mul.assign(6, std::vector<std::size_t>(6));
    for (std::size_t a = 0; a < 6; ++a)
      for (std::size_t b = 0; b < 6; ++b) {
        std::vector<int> c(3);
        for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
        g.mul[a][b] = std::find(perms.begin(), perms.end(), c) - perms.begin();
      }
    return g;
  }
};

/// Connected groupoid with k objects and vertex group G; arrow (a,b,g) : a -> b,
/// composite (a,b,g) then (b,c,h) = (a,c,g*h).
inline Groupoid connected_groupoid(std::size_t k, const FiniteGroup& G) {
  Groupoid gd;
  gd.objects = k;
  std::size_t m = G.order();
  auto id_of = [&](std::size_t a, std::size_t b, std::size_t g) { return (a * k + b) * m + g; };
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t g = 0; g < m; ++g) {
        gd.src.push_back(a);
        gd.tgt.push_back(b);
      }
  std::size_t n = gd.src.size();
  gd.compose.assign(n, std::vector<std::size_t>(n, 0));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t g = 0; g < m; ++g)
          for (std::size_t h = 0; h < m; ++h) gd.compose[id_of(a, b, g)][id_of(b, c, h)] = id_of(a, c, G.mul[g][h]);
  for (std::size_t a = 0; a < k; ++a) gd.identity.push_back(id_of(a, a, 0));
  return gd;
}

inline Groupoid disjoint_union(const Groupoid& A, const Groupoid& B) {
  Groupoid C;
  C.objects = A.objects + B.objects;
  std::size_t na = A.arrows(), nb = B.arrows();
  C.src = A.src;
  C.tgt = A.tgt;
  for (std::size_t f = 0; f < nb; ++f) {
    C.src.push_back(B.src[f] + A.objects);
    C.tgt.push_back(B.tgt[f] + A.objects);
  }
  C.compose.assign(na + nb, std::vector<std::size_t>(na + nb, 0));
  for (std::size_t f = 0; f < na; ++f)
    for (std::size_t g = 0; g < na; ++g) C.compose[f][g] = A.compose[f][g];
  for (std::size_t f = 0; f < nb; ++f)
    for (std::size_t g = 0; g < nb; ++g) C.compose[na + f][na + g] = na + B.compose[f][g];
  C.identity = A.identity;
  for (auto i : B.identity) C.identity.push_back(i + na);
  return C;
}

/// Nerve levels 0..N; an n-simplex is a chain of n composable arrows.
inline SSet nerve(const Groupoid& G, int N) {
  SSet X;
  std::vector<std::vector<std::vector<std::size_t>>> chains(N + 1);
  std::vector<std::unordered_map<std::vector<std::size_t>, std::size_t, VecHash>> index(N + 1);
  for (std::size_t o = 0; o < G.objects; ++o) chains[0].push_back({o});
  for (int n = 1; n <= N; ++n)
    for (const auto& c : chains[n - 1]) {
      std::size_t end = n == 1 ? c[0] : G.tgt[c.back()];
      for (std::size_t f = 0; f < G.arrows(); ++f) {
        if (G.src[f] != end) continue;
        std::vector<std::size_t> nc = n == 1 ? std::vector<std::size_t>{} : c;
        nc.push_back(f);
        chains[n].push_back(std::move(nc));
      }
    }
  for (int n = 0; n <= N; ++n) {
    for (std::size_t i = 0; i < chains[n].size(); ++i) index[n][chains[n][i]] = i;
    X.count.push_back(chains[n].size());
  }
  auto obj = [&](const std::vector<std::size_t>& c, int n, int i) -> std::size_t {
    if (n == 0) return c[0];
    return i == 0 ? G.src[c[0]] : G.tgt[c[i - 1]];
  };
  for (int n = 0; n <= N; ++n) {
    std::vector<std::vector<std::size_t>> fc, dg;
    if (n >= 1)
      for (int i = 0; i <= n; ++i) {
        std::vector<std::size_t> col;
        for (const auto& c : chains[n]) {
          std::vector<std::size_t> r;
          if (n == 1) {
            r = {i == 0 ? G.tgt[c[0]] : G.src[c[0]]};
          } else if (i == 0) {
            r.assign(c.begin() + 1, c.end());
          } else if (i == n) {
            r.assign(c.begin(), c.end() - 1);
          } else {
            r.assign(c.begin(), c.begin() + i - 1);
            r.push_back(G.compose[c[i - 1]][c[i]]);
            r.insert(r.end(), c.begin() + i + 1, c.end());
          }
          col.push_back(index[n - 1].at(r));
        }
        fc.push_back(std::move(col));
      }
    if (n < N)
      for (int i = 0; i <= n; ++i) {
        std::vector<std::size_t> col;
        for (const auto& c : chains[n]) {
          std::vector<std::size_t> r;
          std::size_t idn = G.identity[obj(c, n, i)];
          if (n == 0) {
            r = {idn};
          } else {
            r = c;
            r.insert(r.begin() + i, idn);
          }
          col.push_back(index[n + 1].at(r));
        }
        dg.push_back(std::move(col));
      }
    X.face.push_back(std::move(fc));
    X.degen.push_back(std::move(dg));
  }
  return X;
}

}  // namespace hypergpd::simpset
