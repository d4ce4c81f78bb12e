#pragma once

#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "hypergpd/qalg/poly.hpp"

namespace hypergpd::qalg {

/// Step cap for Buchberger, overridable through HYPERGPD_GROEBNER_CAP.
inline std::size_t groebner_step_cap() {
  if (const char* s = std::getenv("HYPERGPD_GROEBNER_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0') return std::size_t(v);
  }
  return 200000;
}

namespace detail {

struct Descending {
  const MonomialOrder* ord;
  bool operator()(const Mono& a, const Mono& b) const { return ord->greater(a, b); }
};

using TermMap = std::map<Mono, Rational, Descending>;

inline TermMap to_terms(const Poly& p, const MonomialOrder& ord) {
  TermMap t(Descending{&ord});
  for (const auto& [m, c] : p.terms()) t.emplace(m, c);
  return t;
}

inline void add_scaled(TermMap& acc, const Poly& g, const Mono& shift, const Rational& c) {
  for (const auto& [m, a] : g.terms()) {
    Mono mm = mono_mul(m, shift);
    auto [it, fresh] = acc.emplace(mm, c * a);
    if (!fresh) {
      it->second += c * a;
      if (is_zero(it->second)) acc.erase(it);
    }
  }
}

}  // namespace detail

/// Reduced Groebner basis: monic, interreduced, sorted by leading monomial (descending).
struct GroebnerBasis {
  std::size_t nvars = 0;
  MonomialOrder ord;
  std::vector<Poly> g;
  std::vector<Mono> lead;

  bool unit() const { return g.size() == 1 && g[0].is_constant(); }

  /// Full reduction; the result is canonical for the residue class.
  Poly normal_form(const Poly& f) const {
    if (f.nvars() != nvars) throw ArgumentError("normal_form: polynomial in the wrong ring");
    if (unit()) return Poly(nvars);
    auto work = detail::to_terms(f, ord);
    Poly rem(nvars);
    while (!work.empty()) {
      auto it = work.begin();
      Mono m = it->first;
      Rational c = it->second;
      std::size_t k = 0;
      while (k < g.size() && !divides(lead[k], m)) ++k;
      if (k == g.size()) {
        rem.add_term(m, c);
        work.erase(it);
        continue;
      }
      detail::add_scaled(work, g[k], mono_div(m, lead[k]), -c);  // lead coefficients are 1
    }
    return rem;
  }

  bool member(const Poly& f) const { return normal_form(f).is_zero(); }
};

namespace detail {

/// Reduce f by the current (not necessarily reduced) basis until its leading
/// term is irreducible; lower terms are fully reduced too.
inline Poly reduce_against(const Poly& f, const std::vector<Poly>& basis, const std::vector<Mono>& lead,
                           const std::vector<Rational>& lc, const MonomialOrder& ord) {
  auto work = to_terms(f, ord);
  Poly rem(f.nvars());
  while (!work.empty()) {
    auto it = work.begin();
    Mono m = it->first;
    Rational c = it->second;
    std::size_t k = 0;
    while (k < basis.size() && !divides(lead[k], m)) ++k;
    if (k == basis.size()) {
      rem.add_term(m, c);
      work.erase(it);
      continue;
    }
    add_scaled(work, basis[k], mono_div(m, lead[k]), -c / lc[k]);
  }
  return rem;
}

}  // namespace detail

/**
 * Buchberger's algorithm with the coprime and chain criteria; pairs are
 * processed by smallest lcm first (ties by index), which makes the run
 * deterministic. Throws GroebnerCapExceeded once the number of pair
 * reductions passes groebner_step_cap().
 */
inline GroebnerBasis groebner_basis(const std::vector<Poly>& input, std::size_t nvars,
                                    const MonomialOrder& ord = {}) {
  GroebnerBasis out;
  out.nvars = nvars;
  out.ord = ord;
  std::vector<Poly> basis;
  std::vector<Mono> lead;
  std::vector<Rational> lc;
  auto push = [&](const Poly& p) {
    lead.push_back(p.leading(ord));
    lc.push_back(p.coeff(lead.back()));
    basis.push_back(p.scaled(1 / lc.back()));
    lc.back() = 1;
  };
  for (const auto& p : input) {
    if (p.nvars() != nvars) throw ArgumentError("groebner_basis: polynomial in the wrong ring");
    if (p.is_zero()) continue;
    Poly r = detail::reduce_against(p, basis, lead, lc, ord);
    if (!r.is_zero()) push(r);
  }
  auto pair_less = [&ord](const std::tuple<Mono, std::size_t, std::size_t>& a,
                          const std::tuple<Mono, std::size_t, std::size_t>& b) {
    if (ord.greater(std::get<0>(b), std::get<0>(a))) return true;
    if (ord.greater(std::get<0>(a), std::get<0>(b))) return false;
    return std::tie(std::get<1>(a), std::get<2>(a)) < std::tie(std::get<1>(b), std::get<2>(b));
  };
  std::set<std::tuple<Mono, std::size_t, std::size_t>, decltype(pair_less)> queue(pair_less);
  std::set<std::pair<std::size_t, std::size_t>> pending;
  auto enqueue_with = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      queue.emplace(mono_lcm(lead[i], lead[j]), i, j);
      pending.emplace(i, j);
    }
  };
  for (std::size_t j = 0; j < basis.size(); ++j) enqueue_with(j);
  std::size_t steps = 0, cap = groebner_step_cap();
  bool is_unit = false;
  for (const auto& p : basis)
    if (p.is_constant()) is_unit = true;
  while (!queue.empty() && !is_unit) {
    auto [l, i, j] = *queue.begin();
    queue.erase(queue.begin());
    pending.erase({i, j});
    // coprime leading monomials reduce to zero
    if (mono_mul(lead[i], lead[j]) == l) continue;
    // chain criterion
    bool skip = false;
    for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
      if (k == i || k == j || !divides(lead[k], l)) continue;
      auto key = [](std::size_t a, std::size_t b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); };
      if (!pending.count(key(i, k)) && !pending.count(key(j, k))) skip = true;
    }
    if (skip) continue;
    if (++steps > cap)
      throw GroebnerCapExceeded("Groebner basis computation exceeded " + std::to_string(cap) +
                                " pair reductions (raise HYPERGPD_GROEBNER_CAP)");
    Poly s = basis[i].times_mono(mono_div(l, lead[i]), 1) - basis[j].times_mono(mono_div(l, lead[j]), 1);
    Poly r = detail::reduce_against(s, basis, lead, lc, ord);
    if (r.is_zero()) continue;
    push(r);
    if (r.is_constant()) is_unit = true;
    enqueue_with(basis.size() - 1);
  }
  if (is_unit) {
    out.g = {Poly::constant(nvars, 1)};
    out.lead = {Mono(nvars, 0)};
    return out;
  }
  // minimal basis, then interreduce
  std::vector<std::size_t> keep;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < basis.size() && !redundant; ++b) {
      if (a == b || !divides(lead[b], lead[a])) continue;
      // equal leading monomials: keep the earliest
      redundant = lead[a] != lead[b] || b < a;
    }
    if (!redundant) keep.push_back(a);
  }
  std::vector<Poly> mb;
  std::vector<Mono> ml;
  for (auto a : keep) {
    mb.push_back(basis[a]);
    ml.push_back(lead[a]);
  }
  std::vector<std::pair<Mono, Poly>> red;
  for (std::size_t a = 0; a < mb.size(); ++a) {
    std::vector<Poly> others;
    std::vector<Mono> ol;
    std::vector<Rational> oc;
    for (std::size_t b = 0; b < mb.size(); ++b)
      if (b != a) {
        others.push_back(mb[b]);
        ol.push_back(ml[b]);
        oc.push_back(1);
      }
    Poly tail = mb[a] - Poly::monomial(ml[a]);
    Poly r = Poly::monomial(ml[a]) + detail::reduce_against(tail, others, ol, oc, ord);
    red.emplace_back(ml[a], r);
  }
  std::sort(red.begin(), red.end(), [&](const auto& a, const auto& b) { return ord.greater(a.first, b.first); });
  for (auto& [m, p] : red) {
    out.lead.push_back(m);
    out.g.push_back(std::move(p));
  }
  return out;
}

inline bool ideal_member(const Poly& f, const std::vector<Poly>& gens, const MonomialOrder& ord = {}) {
  return groebner_basis(gens, f.nvars(), ord).member(f);
}

inline bool is_unit_ideal(const std::vector<Poly>& gens, std::size_t nvars) {
  return groebner_basis(gens, nvars).unit();
}

}  // namespace hypergpd::qalg
