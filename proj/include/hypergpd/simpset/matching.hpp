#pragma once

#include <functional>
#include <vector>

#include "hypergpd/simpset/finsset.hpp"
#include "hypergpd/simpset/truncated.hpp"

namespace hypergpd::simpset {

/// A simplicial map K -> X: image of every nondegenerate simplex of K, as an
/// index into the explicit level of X.
struct SMap {
  std::vector<std::vector<std::size_t>> images;  // images[d][i] for nondegenerate i in K_d
  friend bool operator==(const SMap& a, const SMap& b) { return a.images == b.images; }
};

/**
 * Order in which nondegenerate simplices are assigned: vertices one at a time,
 * each followed by every simplex whose faces are already placed. Keeps the
 * backtracking tight.
 */
inline std::vector<std::pair<int, std::size_t>> assignment_schedule(const FinSSet& K) {
  std::vector<std::vector<bool>> placed(K.top_dim() + 1);
  for (int d = 0; d <= K.top_dim(); ++d) placed[d].assign(K.count(d), false);
  std::vector<std::pair<int, std::size_t>> order;
  auto ready = [&](int d, std::size_t i) {
    for (const auto& fr : K.simplex(d, i).faces) {
      int dd = d - 1 - int(fr.deg.size());
      if (!placed[dd][fr.target]) return false;
    }
    return true;
  };
  for (std::size_t v = 0; v < K.count(0); ++v) {
    placed[0][v] = true;
    order.emplace_back(0, v);
    bool progress = true;
    while (progress) {
      progress = false;
      for (int d = 1; d <= K.top_dim(); ++d)
        for (std::size_t i = 0; i < K.count(d); ++i)
          if (!placed[d][i] && ready(d, i)) {
            placed[d][i] = true;
            order.emplace_back(d, i);
            progress = true;
          }
    }
  }
  return order;
}

/// Every simplicial map K -> X, by backtracking in schedule order.
inline std::vector<SMap> simplicial_maps(const FinSSet& K, const TruncatedSSet& Xt) {
  if (K.empty()) return {SMap{}};
  const int D = K.top_dim();
  TruncatedSSet Xe = Xt.extended(D);
  const SSet& X = Xe.data();
  // full face-tuple index of each needed level
  std::vector<std::unordered_map<std::vector<std::size_t>, std::vector<std::size_t>, VecHash>> bd(D + 1);
  for (int d = 1; d <= D; ++d)
    for (std::size_t x = 0; x < X.count[d]; ++x) {
      std::vector<std::size_t> key;
      for (int i = 0; i <= d; ++i) key.push_back(X.d(d, i, x));
      bd[d][key].push_back(x);
    }
  auto order = assignment_schedule(K);
  SMap cur;
  cur.images.resize(D + 1);
  for (int d = 0; d <= D; ++d) cur.images[d].assign(K.count(d), SIZE_MAX);
  std::vector<SMap> out;
  std::vector<std::size_t> all0(X.count[0]);
  for (std::size_t i = 0; i < all0.size(); ++i) all0[i] = i;
  std::function<void(std::size_t)> rec = [&](std::size_t p) {
    if (p == order.size()) {
      out.push_back(cur);
      return;
    }
    auto [d, i] = order[p];
    const std::vector<std::size_t>* cands = &all0;
    if (d > 0) {
      std::vector<std::size_t> key;
      for (const auto& fr : K.simplex(d, i).faces) {
        int dd = d - 1 - int(fr.deg.size());
        std::size_t z = cur.images[dd][fr.target];
        int lvl = dd;
        for (auto it = fr.deg.rbegin(); it != fr.deg.rend(); ++it) z = X.s(lvl++, *it, z);
        key.push_back(z);
      }
      auto it = bd[d].find(key);
      if (it == bd[d].end()) return;
      cands = &it->second;
    }
    for (auto x : *cands) {
      cur.images[d][i] = x;
      rec(p + 1);
    }
    cur.images[d][i] = SIZE_MAX;
  };
  rec(0);
  return out;
}

}  // namespace hypergpd::simpset
