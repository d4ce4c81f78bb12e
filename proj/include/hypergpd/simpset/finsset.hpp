#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hypergpd/core/error.hpp"
#include "hypergpd/core/ordinal.hpp"

namespace hypergpd::simpset {

/// d_i x = s_{deg[0]} s_{deg[1]} ... (target), deg strictly decreasing.
struct FaceRecord {
  std::vector<int> deg;
  std::size_t target = 0;
  friend bool operator==(const FaceRecord& a, const FaceRecord& b) {
    return a.deg == b.deg && a.target == b.target;
  }
};

struct NondegSimplex {
  std::string id;
  std::vector<FaceRecord> faces;  // dim+1 entries (none for vertices)
  std::optional<std::vector<int>> vertices;  // embedding into an ambient simplex
};

/**
 * A finite simplicial set given by its nondegenerate simplices. Level n of
 * the generated simplicial set consists of pairs (surjection [n]->>[k],
 * nondegenerate k-simplex).
 */
class FinSSet {
 public:
  FinSSet() = default;
  explicit FinSSet(std::vector<std::vector<NondegSimplex>> levels) : levels_(std::move(levels)) {
    while (!levels_.empty() && levels_.back().empty()) levels_.pop_back();
    validate();
  }

  int top_dim() const { return int(levels_.size()) - 1; }
  bool empty() const { return levels_.empty(); }
  std::size_t count(int n) const { return n <= top_dim() && n >= 0 ? levels_[n].size() : 0; }
  const NondegSimplex& simplex(int n, std::size_t i) const { return levels_.at(n).at(i); }
  const std::vector<std::vector<NondegSimplex>>& levels() const { return levels_; }

  std::optional<std::size_t> find(int n, const std::string& id) const {
    if (n < 0 || n > top_dim()) return std::nullopt;
    for (std::size_t i = 0; i < levels_[n].size(); ++i)
      if (levels_[n][i].id == id) return i;
    return std::nullopt;
  }

  /// A simplex of the generated simplicial set.
  struct Simplex {
    OrdinalMap sigma;  // surjection [n] ->> [k]
    std::size_t nd = 0;
    friend bool operator<(const Simplex& a, const Simplex& b) {
      if (a.sigma < b.sigma) return true;
      if (b.sigma < a.sigma) return false;
      return a.nd < b.nd;
    }
    friend bool operator==(const Simplex& a, const Simplex& b) {
      return a.sigma == b.sigma && a.nd == b.nd;
    }
  };

  /// X(theta)(x) for theta : [a] -> [n].
  Simplex apply(const OrdinalMap& theta, const Simplex& x) const {
    OrdinalMap f = x.sigma.after(theta);  // [a] -> [k]
    auto em = epi_mono(f);
    int k = x.sigma.dst;
    std::size_t nd = x.nd;
    OrdinalMap rho = em.epi;
    // X(mono) on the nondegenerate part: remove missing vertices, largest first
    std::vector<int> img = em.mono.values;
    std::vector<int> missing;
    for (int v = k; v >= 0; --v)
      if (!std::binary_search(img.begin(), img.end(), v)) missing.push_back(v);
    OrdinalMap tau = OrdinalMap::identity(k);
    for (int v : missing) {
      // apply d_v to X(tau)(nd) in X_cur
      Simplex s = face({tau, nd}, v);
      tau = s.sigma;
      nd = s.nd;
    }
    return {tau.after(rho), nd};
  }

  /// d_i of a generated simplex.
  Simplex face(const Simplex& x, int i) const {
    int n = x.sigma.src;
    OrdinalMap theta = x.sigma.after(OrdinalMap::coface(n, i));
    auto em = epi_mono(theta);
    if (em.mono.is_identity()) return {em.epi, x.nd};
    int k = x.sigma.dst;
    int l = 0;
    while (l < int(em.mono.values.size()) && em.mono.values[l] == l) ++l;
    // missing vertex l of the nondegenerate simplex
    const FaceRecord& fr = levels_[k][x.nd].faces[l];
    int kk = k - 1 - int(fr.deg.size());
    OrdinalMap tw = surjection_from_word(kk, fr.deg);
    return {tw.after(em.epi), fr.target};
  }

  Simplex degeneracy(const Simplex& x, int i) const {
    return {x.sigma.after(OrdinalMap::codegeneracy(x.sigma.src, i)), x.nd};
  }

  /// All simplices of level n, ordered by (k, surjection, nd).
  std::vector<Simplex> level(int n) const {
    std::vector<Simplex> out;
    for (int k = 0; k <= std::min(n, top_dim()); ++k)
      for (const auto& s : surjections(n, k))
        for (std::size_t z = 0; z < levels_[k].size(); ++z) out.push_back({s, z});
    return out;
  }

 private:
  void validate() const {
    for (int n = 0; n <= top_dim(); ++n)
      for (const auto& s : levels_[n]) {
        if (n == 0) {
          if (!s.faces.empty()) throw ValidationError("vertex '" + s.id + "' has face records");
          continue;
        }
        if (int(s.faces.size()) != n + 1)
          throw ValidationError("simplex '" + s.id + "' needs " + std::to_string(n + 1) + " face records");
        for (const auto& fr : s.faces) {
          for (std::size_t a = 1; a < fr.deg.size(); ++a)
            if (fr.deg[a] >= fr.deg[a - 1])
              throw ValidationError("face record of '" + s.id + "' not in decreasing normal form");
          int kk = n - 1 - int(fr.deg.size());
          if (kk < 0 || fr.target >= levels_[kk].size())
            throw ValidationError("face record of '" + s.id + "' points to a missing simplex");
          for (int j : fr.deg)
            if (j < 0 || j >= n - 1)
              throw ValidationError("face record of '" + s.id + "' has degeneracy index out of range");
        }
      }
    // simplicial identities d_i d_j = d_{j-1} d_i on nondegenerate simplices
    for (int n = 2; n <= top_dim(); ++n)
      for (std::size_t x = 0; x < levels_[n].size(); ++x) {
        Simplex sx{OrdinalMap::identity(n), x};
        for (int j = 1; j <= n; ++j)
          for (int i = 0; i < j; ++i)
            if (!(face(face(sx, j), i) == face(face(sx, i), j - 1)))
              throw ValidationError("simplicial identity d" + std::to_string(i) + "d" + std::to_string(j) +
                                    " fails on '" + levels_[n][x].id + "'");
      }
  }

  std::vector<std::vector<NondegSimplex>> levels_;
};

inline std::string subset_id(const std::vector<int>& s) {
  std::string id = "{";
  for (std::size_t i = 0; i < s.size(); ++i) id += (i ? "," : "") + std::to_string(s[i]);
  return id + "}";
}

struct StandardKind {
  enum Kind { delta, boundary, horn } kind = delta;
  int n = 0;
  int k = 0;
  static StandardKind Delta(int n) { return {delta, n, 0}; }
  static StandardKind Boundary(int n) { return {boundary, n, 0}; }
  static StandardKind Horn(int n, int k) { return {horn, n, k}; }
};

/// Sub-complex of Delta^n spanned by the given nondegenerate subsets (must be
/// closed under faces).
inline FinSSet subcomplex_of_simplex(int n, const std::vector<std::vector<int>>& subsets) {
  std::vector<std::vector<std::vector<int>>> by_dim(n + 1);
  for (const auto& s : subsets) by_dim.at(s.size() - 1).push_back(s);
  std::vector<std::vector<NondegSimplex>> levels(n + 1);
  std::vector<std::map<std::vector<int>, std::size_t>> index(n + 1);
  for (int d = 0; d <= n; ++d) {
    std::sort(by_dim[d].begin(), by_dim[d].end());
    for (const auto& s : by_dim[d]) {
      NondegSimplex ns;
      ns.id = subset_id(s);
      ns.vertices = s;
      if (d > 0)
        for (int i = 0; i <= d; ++i) {
          std::vector<int> f = s;
          f.erase(f.begin() + i);
          auto it = index[d - 1].find(f);
          if (it == index[d - 1].end()) throw ArgumentError("subcomplex not closed under faces");
          ns.faces.push_back({{}, it->second});
        }
      index[d][s] = levels[d].size();
      levels[d].push_back(std::move(ns));
    }
  }
  return FinSSet(std::move(levels));
}

inline FinSSet standard_complex(const StandardKind& kind) {
  int n = kind.n;
  if (n < 0) throw ArgumentError("standard complex needs n >= 0");
  if (kind.kind == StandardKind::horn && (n < 1 || kind.k < 0 || kind.k > n)) {
    // Lambda^0_0 is the empty simplicial set
    if (n == 0 && kind.k == 0) return FinSSet();
    throw ArgumentError("horn(" + std::to_string(n) + "," + std::to_string(kind.k) + ") is invalid");
  }
  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 1; mask < (1u << (n + 1)); ++mask) {
    std::vector<int> s;
    for (int v = 0; v <= n; ++v)
      if (mask & (1u << v)) s.push_back(v);
    bool full = int(s.size()) == n + 1;
    if (kind.kind != StandardKind::delta && full) continue;
    if (kind.kind == StandardKind::horn && int(s.size()) == n &&
        !std::binary_search(s.begin(), s.end(), kind.k))
      continue;
    subsets.push_back(s);
  }
  return subcomplex_of_simplex(n, subsets);
}

}  // namespace hypergpd::simpset
