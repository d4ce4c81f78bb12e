#pragma once

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hypergpd/core/error.hpp"
#include "hypergpd/simpset/finsset.hpp"
#include "hypergpd/simpset/sset.hpp"

namespace hypergpd::simpset {

/**
 * Compatible tuples (x_j)_{j != skip} of (m-1)-simplices with
 * d_i x_j = d_{j-1} x_i for i < j: the matching set of the boundary of
 * Delta^m, or of the horn Lambda^m_skip. Missing positions hold SIZE_MAX.
 */
inline std::vector<std::vector<std::size_t>> matching_tuples(const SSet& X, int m, int skip = -1) {
  if (m < 1) throw ArgumentError("matching_tuples needs m >= 1");
  if (X.top() < m - 1) throw InsufficientData("level " + std::to_string(m - 1) + " not available");
  const std::size_t none = SIZE_MAX;
  std::vector<int> pos;
  for (int j = 0; j <= m; ++j)
    if (j != skip) pos.push_back(j);
  // index of X_{m-1} by the faces constrained when position j is chosen
  std::vector<std::unordered_map<std::vector<std::size_t>, std::vector<std::size_t>, VecHash>> idx(m + 1);
  std::vector<std::vector<int>> constrained(m + 1);
  for (int j : pos) {
    for (int i = 0; i < j; ++i)
      if (i != skip) constrained[j].push_back(i);
    if (m == 1) constrained[j].clear();
    for (std::size_t y = 0; y < X.count[m - 1]; ++y) {
      std::vector<std::size_t> key;
      for (int i : constrained[j]) key.push_back(X.d(m - 1, i, y));
      idx[j][key].push_back(y);
    }
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(m + 1, none);
  std::function<void(std::size_t)> rec = [&](std::size_t p) {
    if (p == pos.size()) {
      out.push_back(cur);
      return;
    }
    int j = pos[p];
    std::vector<std::size_t> key;
    for (int i : constrained[j]) key.push_back(X.d(m - 1, j - 1, cur[i]));
    auto it = idx[j].find(key);
    if (it == idx[j].end()) return;
    for (auto y : it->second) {
      cur[j] = y;
      rec(p + 1);
    }
    cur[j] = none;
  };
  rec(0);
  return out;
}

/// Append level top+1 computed as the boundary matching set of the current top.
inline SSet extend_by_boundary(SSet X) {
  int m = X.top() + 1;
  auto tuples = m >= 1 ? matching_tuples(X, m) : std::vector<std::vector<std::size_t>>{{}};
  std::unordered_map<std::vector<std::size_t>, std::size_t, VecHash> index;
  for (std::size_t t = 0; t < tuples.size(); ++t) index[tuples[t]] = t;
  X.count.push_back(tuples.size());
  std::vector<std::vector<std::size_t>> fc(m + 1, std::vector<std::size_t>(tuples.size()));
  for (std::size_t t = 0; t < tuples.size(); ++t)
    for (int i = 0; i <= m; ++i) fc[i][t] = tuples[t][i];
  X.face.push_back(std::move(fc));
  X.degen.emplace_back();
  // degeneracies X_{m-1} -> X_m from the identities d_i s_j
  auto& dg = X.degen[m - 1];
  dg.assign(m, std::vector<std::size_t>(X.count[m - 1]));
  for (int j = 0; j < m; ++j)
    for (std::size_t y = 0; y < X.count[m - 1]; ++y) {
      std::vector<std::size_t> tup(m + 1);
      for (int i = 0; i <= m; ++i) {
        if (i == j || i == j + 1)
          tup[i] = y;
        else if (i < j)
          tup[i] = X.s(m - 2, j - 1, X.d(m - 1, i, y));
        else
          tup[i] = X.s(m - 2, j, X.d(m - 1, i - 1, y));
      }
      dg[j][y] = index.at(tup);
    }
  return X;
}

/**
 * Levels 0..N stored explicitly, plus how to obtain higher levels: never,
 * from the generating finite simplicial set, or as a coskeleton.
 */
class TruncatedSSet {
 public:
  enum class Extension { none, skeletal, coskeletal };

  TruncatedSSet() = default;
  TruncatedSSet(SSet data, Extension ext, std::optional<int> c = std::nullopt,
                std::shared_ptr<const FinSSet> gen = nullptr)
      : data_(std::move(data)), ext_(ext), c_(c), gen_(std::move(gen)) {
    if (ext_ == Extension::coskeletal && (!c_ || *c_ > data_.top()))
      throw ArgumentError("coskeletal flag needs stored levels up to c");
    if (ext_ == Extension::skeletal && !gen_) throw ArgumentError("skeletal extension needs a generator");
  }

  static TruncatedSSet from_finsset(const FinSSet& K, int N) {
    return TruncatedSSet(generate(K, N), Extension::skeletal, std::nullopt, std::make_shared<const FinSSet>(K));
  }
  static TruncatedSSet stored(SSet data) { return TruncatedSSet(std::move(data), Extension::none); }
  static TruncatedSSet coskeletal(SSet data, int c) {
    return TruncatedSSet(std::move(data), Extension::coskeletal, c);
  }

  const SSet& data() const { return data_; }
  int top() const { return data_.top(); }
  Extension extension() const { return ext_; }
  std::optional<int> coskeletal_above() const {
    return ext_ == Extension::coskeletal ? c_ : std::nullopt;
  }
  const std::shared_ptr<const FinSSet>& generator() const { return gen_; }

  bool can_reach(int N) const { return N <= top() || ext_ != Extension::none; }

  /// Same object with at least N explicit levels.
  TruncatedSSet extended(int N) const {
    if (N <= top()) return *this;
    if (ext_ == Extension::none)
      throw InsufficientData("levels above " + std::to_string(top()) + " are not stored and no coskeletal flag is set");
    if (ext_ == Extension::skeletal) return TruncatedSSet(generate(*gen_, N), ext_, c_, gen_);
    SSet X = data_;
    while (X.top() < N) X = extend_by_boundary(std::move(X));
    return TruncatedSSet(std::move(X), ext_, c_, gen_);
  }

 private:
  SSet data_;
  Extension ext_ = Extension::none;
  std::optional<int> c_;
  std::shared_ptr<const FinSSet> gen_;
};

/// cosk_c X with explicit levels up to up_to.
inline TruncatedSSet coskeleton(const TruncatedSSet& X, int c, int up_to) {
  if (up_to < c) throw ArgumentError("coskeleton: up_to < c");
  if (c < 0) throw ArgumentError("coskeleton: negative c");
  if (X.top() < c && !X.can_reach(c)) throw InsufficientData("coskeleton needs levels up to c");
  SSet base = X.extended(c).data().truncated(c);
  while (base.top() < up_to) base = extend_by_boundary(std::move(base));
  return TruncatedSSet::coskeletal(std::move(base), c);
}

/// Images under f of the boundary tuple at level m, looked up in Y when Y_m is
/// the boundary matching set (true for coskeletal levels).
inline SSetMorphism extend_morphism(const SSet& X, const SSet& Y, SSetMorphism f, int N) {
  while (f.top() < N) {
    int m = f.top() + 1;
    if (X.top() < m || Y.top() < m) throw InsufficientData("morphism extension beyond stored levels");
    std::unordered_map<std::vector<std::size_t>, std::vector<std::size_t>, VecHash> by_bd;
    for (std::size_t y = 0; y < Y.count[m]; ++y) {
      std::vector<std::size_t> key;
      for (int i = 0; i <= m; ++i) key.push_back(Y.d(m, i, y));
      by_bd[key].push_back(y);
    }
    std::vector<std::size_t> img(X.count[m]);
    for (std::size_t x = 0; x < X.count[m]; ++x) {
      std::vector<std::size_t> key;
      for (int i = 0; i <= m; ++i) key.push_back(f(m - 1, X.d(m, i, x)));
      auto it = by_bd.find(key);
      if (it == by_bd.end() || it->second.size() != 1)
        throw InsufficientData("morphism not determined by boundaries at level " + std::to_string(m));
      img[x] = it->second[0];
    }
    f.map.push_back(std::move(img));
  }
  return f;
}

struct DecResult {
  TruncatedSSet dec;
  SSetMorphism counit;     // d_top : (Dec X)_n = X_{n+1} -> X_n
  SSetMorphism to_vertex;  // last vertex: Dec X -> constant X_0
  std::vector<std::size_t> section;     // s_0 : X_0 -> (Dec X)_0 = X_1
  std::vector<std::size_t> retraction;  // d_0 : X_1 -> X_0
};

/// Dec+ X with levels 0..X.top()-1.
inline DecResult dec_plus(const TruncatedSSet& Xt) {
  const SSet& X = Xt.data();
  int N = X.top() - 1;
  if (N < 0) throw InsufficientData("dec_plus needs level 1");
  SSet D;
  for (int n = 0; n <= N; ++n) {
    D.count.push_back(X.count[n + 1]);
    std::vector<std::vector<std::size_t>> fc, dg;
    if (n >= 1)
      for (int i = 0; i <= n; ++i) fc.push_back(X.face[n + 1][i]);
    if (n < N)
      for (int i = 0; i <= n; ++i) dg.push_back(X.degen[n + 1][i]);
    D.face.push_back(std::move(fc));
    D.degen.push_back(std::move(dg));
  }
  DecResult r;
  auto c = Xt.coskeletal_above();
  r.dec = c && *c <= N ? TruncatedSSet::coskeletal(D, *c) : TruncatedSSet::stored(D);
  for (int n = 0; n <= N; ++n) {
    r.counit.map.push_back(X.face[n + 1][n + 1]);
    std::vector<std::size_t> v(X.count[n + 1]);
    for (std::size_t x = 0; x < v.size(); ++x) v[x] = X.vertex(n + 1, x, n + 1);
    r.to_vertex.map.push_back(std::move(v));
  }
  r.section = X.degen[0][0];
  r.retraction = X.face[1][0];
  return r;
}

}  // namespace hypergpd::simpset
