#pragma once

#include <string>
#include <vector>

#include "hypergpd/core/matrix.hpp"

namespace hypergpd::dkab {

/**
 * Chain complex in degrees lo .. lo+ranks.size()-1. d[k] maps degree lo+k to
 * lo+k-1 (d[0] is unused and empty). An open end means the neighbouring term
 * exists but was not computed, so homology is not reported there.
 */
template <class T>
struct ChainComplex {
  int lo = 0;
  std::vector<std::size_t> ranks;
  std::vector<Matrix<T>> d;
  bool open_below = false;
  bool open_above = false;

  int hi() const { return lo + int(ranks.size()) - 1; }
  std::size_t rank_at(int deg) const {
    return deg < lo || deg > hi() ? 0 : ranks[std::size_t(deg - lo)];
  }
  /// The differential leaving degree deg (rank_at(deg-1) x rank_at(deg)).
  Matrix<T> diff(int deg) const {
    if (deg <= lo || deg > hi()) return Matrix<T>(rank_at(deg - 1), rank_at(deg));
    return d[std::size_t(deg - lo)];
  }

  void validate() const {
    if (d.size() != ranks.size()) throw ValidationError("chain complex: one differential slot per degree");
    for (std::size_t k = 1; k < ranks.size(); ++k)
      if (d[k].rows() != ranks[k - 1] || d[k].cols() != ranks[k])
        throw ValidationError("chain complex: differential " + std::to_string(lo + int(k)) + " has shape " +
                              d[k].shape());
    for (std::size_t k = 2; k < ranks.size(); ++k)
      if (!(d[k - 1] * d[k]).is_zero())
        throw ValidationError("chain complex: d.d != 0 at degree " + std::to_string(lo + int(k)));
  }
};

template <class T>
ChainComplex<T> make_complex(int lo, std::vector<std::size_t> ranks) {
  ChainComplex<T> c;
  c.lo = lo;
  c.ranks = std::move(ranks);
  c.d.resize(c.ranks.size());
  for (std::size_t k = 1; k < c.ranks.size(); ++k) c.d[k] = Matrix<T>(c.ranks[k - 1], c.ranks[k]);
  return c;
}

/// Cochain complex: d[k] maps degree lo+k to lo+k+1 (last slot unused).
template <class T>
struct CochainComplex {
  int lo = 0;
  std::vector<std::size_t> ranks;
  std::vector<Matrix<T>> d;
  bool open_below = false;
  bool open_above = false;

  int hi() const { return lo + int(ranks.size()) - 1; }

  /// Same data with degrees negated.
  ChainComplex<T> as_chain() const {
    ChainComplex<T> c;
    c.lo = -hi();
    c.ranks.assign(ranks.rbegin(), ranks.rend());
    c.d.resize(ranks.size());
    for (std::size_t k = 1; k < ranks.size(); ++k) c.d[k] = d[ranks.size() - 1 - k];
    c.open_below = open_above;
    c.open_above = open_below;
    return c;
  }

  void validate() const {
    if (d.size() != ranks.size()) throw ValidationError("cochain complex: one differential slot per degree");
    for (std::size_t k = 0; k + 1 < ranks.size(); ++k)
      if (d[k].rows() != ranks[k + 1] || d[k].cols() != ranks[k])
        throw ValidationError("cochain complex: bad differential shape at " + std::to_string(lo + int(k)));
    for (std::size_t k = 0; k + 2 < ranks.size(); ++k)
      if (!(d[k + 1] * d[k]).is_zero())
        throw ValidationError("cochain complex: d.d != 0 at degree " + std::to_string(lo + int(k)));
  }
};

struct HomologyGroup {
  std::size_t rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1; always empty over a field

  bool zero() const { return rank == 0 && torsion.empty(); }
  friend bool operator==(const HomologyGroup& a, const HomologyGroup& b) {
    return a.rank == b.rank && a.torsion == b.torsion;
  }
  std::string str() const {
    std::string s = rank == 0 ? "" : (rank == 1 ? "Z" : "Z^" + std::to_string(rank));
    for (const auto& t : torsion) s += (s.empty() ? "" : "+") + ("Z/" + t.get_str());
    return s.empty() ? "0" : s;
  }
};

/// Homology in degrees [lo, hi]; ends adjacent to an open side are dropped.
struct Homology {
  int lo = 0;
  std::vector<HomologyGroup> groups;
  int hi() const { return lo + int(groups.size()) - 1; }
  const HomologyGroup& at(int deg) const { return groups.at(std::size_t(deg - lo)); }
  std::vector<std::size_t> ranks() const {
    std::vector<std::size_t> r;
    for (const auto& g : groups) r.push_back(g.rank);
    return r;
  }
};

template <class T>
Homology homology(const ChainComplex<T>& c) {
  Homology h;
  int from = c.lo + (c.open_below ? 1 : 0);
  int to = c.hi() - (c.open_above ? 1 : 0);
  h.lo = from;
  for (int deg = from; deg <= to; ++deg) {
    HomologyGroup g;
    std::size_t r_out = rank_of(c.diff(deg));
    Matrix<T> in = deg + 1 <= c.hi() ? c.diff(deg + 1) : Matrix<T>(c.rank_at(deg), 0);
    std::size_t r_in = rank_of(in);
    g.rank = c.rank_at(deg) - r_out - r_in;
    if constexpr (std::is_same_v<T, Integer>) {
      for (const auto& f : smith_invariants(in))
        if (f > 1) g.torsion.push_back(f);
    }
    h.groups.push_back(std::move(g));
  }
  return h;
}

/// Cohomology dimensions in degrees [lo, hi] of a cochain complex.
template <class T>
std::vector<std::size_t> cohomology_dims(const CochainComplex<T>& c, int* first_degree = nullptr) {
  Homology h = homology(c.as_chain());
  std::vector<std::size_t> out;
  for (int deg = h.hi(); deg >= h.lo; --deg) out.push_back(h.at(deg).rank);
  if (first_degree) *first_degree = -h.hi();
  return out;
}

template <class T>
ChainComplex<T> direct_sum(const ChainComplex<T>& a, const ChainComplex<T>& b) {
  if (a.lo != b.lo || a.ranks.size() != b.ranks.size()) throw ArgumentError("direct_sum: degree ranges differ");
  ChainComplex<T> c = a;
  for (std::size_t k = 0; k < a.ranks.size(); ++k) {
    c.ranks[k] = a.ranks[k] + b.ranks[k];
    if (k > 0) c.d[k] = hypergpd::direct_sum(a.d[k], b.d[k]);
  }
  return c;
}

}  // namespace hypergpd::dkab
