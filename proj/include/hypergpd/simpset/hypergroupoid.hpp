#pragma once

#include <string>
#include <unordered_map>

#include "hypergpd/core/report.hpp"
#include "hypergpd/simpset/truncated.hpp"

namespace hypergpd::simpset {

enum class HypMode { absolute, relative, trivial_relative };

namespace detail {

struct FiberCount {
  bool surjective = true;
  bool injective = true;
  std::size_t pairs = 0;
};

/// Fibres of X_m -> Y_m x_{M Y} M X for the boundary (k < 0) or the horn k.
/// m = 0 uses the empty shape, so the map is f_0 : X_0 -> Y_0.
inline FiberCount partial_matching_fibres(const SSet& X, const SSet& Y, const SSetMorphism& f, int m, int k) {
  FiberCount fc;
  if (m == 0) {
    std::vector<std::size_t> hits(Y.count[0], 0);
    for (std::size_t x = 0; x < X.count[0]; ++x) ++hits[f(0, x)];
    for (auto h : hits) {
      if (h == 0) fc.surjective = false;
      if (h > 1) fc.injective = false;
    }
    fc.pairs = Y.count[0];
    return fc;
  }
  auto restrict_key = [&](const SSet& S, std::size_t s) {
    std::vector<std::size_t> key;
    for (int j = 0; j <= m; ++j)
      if (j != k) key.push_back(S.d(m, j, s));
    return key;
  };
  std::unordered_map<std::vector<std::size_t>, std::vector<std::size_t>, VecHash> y_by_key;
  for (std::size_t y = 0; y < Y.count[m]; ++y) y_by_key[restrict_key(Y, y)].push_back(y);
  std::unordered_map<std::vector<std::size_t>, std::size_t, VecHash> x_count;
  for (std::size_t x = 0; x < X.count[m]; ++x) {
    auto key = restrict_key(X, x);
    key.push_back(f(m, x));
    ++x_count[key];
  }
  for (const auto& h : matching_tuples(X, m, k)) {
    std::vector<std::size_t> hk, fh;
    for (int j = 0; j <= m; ++j)
      if (j != k) {
        hk.push_back(h[j]);
        fh.push_back(f(m - 1, h[j]));
      }
    auto it = y_by_key.find(fh);
    if (it == y_by_key.end()) continue;
    for (auto y : it->second) {
      ++fc.pairs;
      auto key = hk;
      key.push_back(y);
      auto c = x_count.find(key);
      std::size_t cnt = c == x_count.end() ? 0 : c->second;
      if (cnt == 0) fc.surjective = false;
      if (cnt > 1) fc.injective = false;
    }
  }
  return fc;
}

inline void record(HypReport& r, int m, int k, const FiberCount& fc, bool need_bijective) {
  if (!fc.surjective) r.fail(m, k, "not-surjective");
  if (need_bijective && !fc.injective) r.fail(m, k, "not-injective");
}

}  // namespace detail

/**
 * Relative check for f : X -> Y. Horn maps are tested for m <= n+2 (absolute
 * and relative) and boundary maps for the levels above, up to the stored top;
 * trivial mode tests boundary maps at every available level.
 */
inline HypReport is_hypergroupoid(const TruncatedSSet& Xt, const TruncatedSSet& Yt, const SSetMorphism& f0, int n,
                                  HypMode mode) {
  if (n < 0) throw ArgumentError("hypergroupoid dimension must be >= 0");
  int need = n + 2;
  if (!Xt.can_reach(need) || !Yt.can_reach(need))
    throw InsufficientData("levels up to " + std::to_string(need) + " are required");
  TruncatedSSet Xe = Xt.extended(need), Ye = Yt.extended(need);
  int top = std::min(Xe.top(), Ye.top());
  SSetMorphism f = f0;
  if (f.top() < top) f = extend_morphism(Xe.data(), Ye.data(), f, top);
  const SSet& X = Xe.data();
  const SSet& Y = Ye.data();
  HypReport r;
  r.dimension_tested = n;
  if (mode == HypMode::trivial_relative) {
    for (int m = 0; m <= top; ++m)
      detail::record(r, m, -1, detail::partial_matching_fibres(X, Y, f, m, -1), m >= n);
    return r;
  }
  for (int m = 0; m <= n + 2; ++m)
    for (int k = 0; k <= m; ++k)
      detail::record(r, m, k, detail::partial_matching_fibres(X, Y, f, m, k), m > n);
  // coskeletal reconstruction above n+1
  for (int m = n + 2; m <= top; ++m) {
    auto fc = detail::partial_matching_fibres(X, Y, f, m, -1);
    detail::record(r, m, -1, fc, true);
  }
  return r;
}

inline HypReport is_hypergroupoid(const TruncatedSSet& Xt, int n) {
  int need = n + 2;
  if (!Xt.can_reach(need)) throw InsufficientData("levels up to " + std::to_string(need) + " are required");
  TruncatedSSet Xe = Xt.extended(need);
  TruncatedSSet P = TruncatedSSet::coskeletal(point(Xe.top()), 0);
  return is_hypergroupoid(Xe, P, to_point(Xe.data()), n, HypMode::absolute);
}

struct ReconstructResult {
  bool ok = true;
  int failing_level = -1;
  std::string reason;
};

/// X_m -> Y_m x_{M_{bd} Y} M_{bd} X bijective for n+2 <= m <= stored top.
inline ReconstructResult truncate_reconstruct_check(const TruncatedSSet& Xt, const TruncatedSSet& Yt,
                                                    const SSetMorphism& f, int n) {
  const SSet& X = Xt.data();
  const SSet& Y = Yt.data();
  int top = std::min({X.top(), Y.top(), f.top()});
  for (int m = std::max(n + 2, 0); m <= top; ++m) {
    auto fc = detail::partial_matching_fibres(X, Y, f, m, -1);
    if (!fc.surjective || !fc.injective)
      return {false, m, !fc.surjective ? "not-surjective" : "not-injective"};
  }
  return {};
}

}  // namespace hypergpd::simpset
