#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "hypergpd/core/error.hpp"

namespace hypergpd {

/// A weakly monotone map [m] -> [n] of finite ordinals.
struct OrdinalMap {
  int src = 0;
  int dst = 0;
  std::vector<int> values;

  OrdinalMap() = default;
  OrdinalMap(int n_dst, std::vector<int> vals) : src(int(vals.size()) - 1), dst(n_dst), values(std::move(vals)) {
    validate();
  }

  void validate() const {
    if (src < 0 || int(values.size()) != src + 1) throw ArgumentError("ordinal map: bad source size");
    for (int i = 0; i <= src; ++i) {
      if (values[i] < 0 || values[i] > dst) throw ArgumentError("ordinal map: value out of range");
      if (i && values[i] < values[i - 1]) throw ArgumentError("ordinal map: not monotone");
    }
  }

  static OrdinalMap identity(int n) {
    std::vector<int> v(n + 1);
    for (int i = 0; i <= n; ++i) v[i] = i;
    return OrdinalMap(n, v);
  }
  /// delta^i : [n-1] -> [n], skipping i.
  static OrdinalMap coface(int n, int i) {
    if (n < 1 || i < 0 || i > n) throw ArgumentError("coface index out of range");
    std::vector<int> v;
    for (int j = 0; j <= n; ++j)
      if (j != i) v.push_back(j);
    return OrdinalMap(n, v);
  }
  /// sigma^i : [n+1] -> [n], hitting i twice.
  static OrdinalMap codegeneracy(int n, int i) {
    if (n < 0 || i < 0 || i > n) throw ArgumentError("codegeneracy index out of range");
    std::vector<int> v;
    for (int j = 0; j <= n + 1; ++j) v.push_back(j <= i ? j : j - 1);
    return OrdinalMap(n, v);
  }
  /// Inclusion of a strictly increasing vertex list into [n].
  static OrdinalMap inclusion(int n, const std::vector<int>& verts) { return OrdinalMap(n, verts); }

  int operator()(int i) const { return values.at(i); }

  /// (this o g): first g, then this.
  OrdinalMap after(const OrdinalMap& g) const {
    if (g.dst != src) throw ArgumentError("ordinal composition mismatch");
    std::vector<int> v(g.src + 1);
    for (int i = 0; i <= g.src; ++i) v[i] = values[g.values[i]];
    return OrdinalMap(dst, v);
  }

  bool injective() const {
    for (int i = 1; i <= src; ++i)
      if (values[i] == values[i - 1]) return false;
    return true;
  }
  bool surjective() const {
    if (values.front() != 0 || values.back() != dst) return false;
    for (int i = 1; i <= src; ++i)
      if (values[i] - values[i - 1] > 1) return false;
    return true;
  }
  bool is_identity() const { return src == dst && injective(); }

  /// Image vertices, strictly increasing.
  std::vector<int> image() const {
    std::vector<int> im = values;
    im.erase(std::unique(im.begin(), im.end()), im.end());
    return im;
  }

  friend bool operator==(const OrdinalMap& a, const OrdinalMap& b) {
    return a.dst == b.dst && a.values == b.values;
  }
  friend bool operator<(const OrdinalMap& a, const OrdinalMap& b) {
    if (a.dst != b.dst) return a.dst < b.dst;
    return a.values < b.values;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i <= src; ++i) s += (i ? "," : "") + std::to_string(values[i]);
    return s + "]->" + std::to_string(dst);
  }
};

/// theta = mono o epi.
struct EpiMono {
  OrdinalMap epi;
  OrdinalMap mono;
};

inline EpiMono epi_mono(const OrdinalMap& f) {
  std::vector<int> im = f.image();
  int k = int(im.size()) - 1;
  std::vector<int> e(f.src + 1);
  for (int i = 0; i <= f.src; ++i)
    e[i] = int(std::lower_bound(im.begin(), im.end(), f.values[i]) - im.begin());
  return {OrdinalMap(k, e), OrdinalMap(f.dst, im)};
}

/// Degeneracy word of a surjection in strictly decreasing normal form: the
/// indices j with s(j) = s(j+1), largest first. X(s) = s_{w0} s_{w1} ... .
inline std::vector<int> degeneracy_word(const OrdinalMap& s) {
  if (!s.surjective()) throw ArgumentError("degeneracy word of non-surjection " + s.str());
  std::vector<int> w;
  for (int j = s.src - 1; j >= 0; --j)
    if (s.values[j] == s.values[j + 1]) w.push_back(j);
  return w;
}

/// Inverse of degeneracy_word: the surjection [k+len(w)] -> [k].
inline OrdinalMap surjection_from_word(int k, const std::vector<int>& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] >= w[i - 1]) throw ValidationError("degeneracy word not strictly decreasing");
  int n = k + int(w.size());
  std::vector<bool> merged(n + 1, false);
  for (int j : w) {
    if (j < 0 || j >= n) throw ValidationError("degeneracy index out of range");
    merged[j] = true;
  }
  std::vector<int> v(n + 1);
  int cur = 0;
  for (int i = 0; i <= n; ++i) {
    v[i] = cur;
    if (i < n && !merged[i]) ++cur;
  }
  if (cur != k) throw ValidationError("degeneracy word inconsistent with dimension");
  return OrdinalMap(k, v);
}

/// All surjections [n] ->> [k], in lexicographic order of values.
inline std::vector<OrdinalMap> surjections(int n, int k) {
  std::vector<OrdinalMap> out;
  if (k > n || k < 0) return out;
  // choose the k "step" positions among n gaps
  std::vector<int> steps(k);
  for (int i = 0; i < k; ++i) steps[i] = i;
  for (;;) {
    std::vector<int> v(n + 1);
    int cur = 0, s = 0;
    for (int i = 0; i <= n; ++i) {
      v[i] = cur;
      if (s < k && steps[s] == i) {
        ++cur;
        ++s;
      }
    }
    out.emplace_back(k, v);
    int i = k - 1;
    while (i >= 0 && steps[i] == n - k + i) --i;
    if (i < 0) break;
    ++steps[i];
    for (int j = i + 1; j < k; ++j) steps[j] = steps[j - 1] + 1;
  }
  return out;
}

/// All monotone maps [m] -> [n].
inline std::vector<OrdinalMap> monotone_maps(int m, int n) {
  std::vector<OrdinalMap> out;
  std::vector<int> v(m + 1, 0);
  for (;;) {
    out.emplace_back(n, v);
    int i = m;
    while (i >= 0 && v[i] == n) --i;
    if (i < 0) break;
    ++v[i];
    for (int j = i + 1; j <= m; ++j) v[j] = v[i];
  }
  return out;
}

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace hypergpd
