#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hypergpd/core/report.hpp"
#include "hypergpd/hypaff/matching.hpp"
#include "hypergpd/qalg/groebner.hpp"

namespace hypergpd::hypaff {

/// A partial matching map X_m -> M_K X together with its target.
struct PartialMatching {
  ComponentedAlgebra target;
  SchemeMap map;
};

/// X_m -> M_{Lambda^m_k} X; for m = 0 the target is the point (or the base).
inline PartialMatching partial_matching(const AffHypergroupoid& X, int m, int k) {
  PartialMatching out;
  const auto& Xm = X.level(m);
  if (m == 0) {
    out.target.add(X.base ? "base" : "pt", X.base ? X.base : FPAlgebra::ground());
    for (std::size_t c = 0; c < Xm.size(); ++c) {
      out.map.comp.push_back(0);
      out.map.pullback.push_back(X.base ? X.base_maps[c] : AlgebraMap::from_ground(Xm.comps[c]));
    }
    return out;
  }
  auto K = simpset::standard_complex(simpset::StandardKind::Horn(m, k));
  auto M = matching_algebra(K, X);
  out.map = matching_map(X, m, K, M);
  out.target = std::move(M.alg);
  return out;
}

namespace detail {

inline Poly parse_in(const AlgPtr& A, const std::string& s, const std::string& where) {
  try {
    return A->nf(A->parse_element(s));
  } catch (const ParseError& e) {
    throw ValidationError(where + ": cannot read '" + s + "' in " + A->str() + " (" + e.what() + ")");
  }
}

/// Determinant by cofactor expansion; minors here are tiny.
inline Poly determinant(const std::vector<std::vector<Poly>>& m, std::size_t nvars) {
  std::size_t n = m.size();
  if (n == 0) return Poly::constant(nvars, 1);
  if (n == 1) return m[0][0];
  Poly det(nvars);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Poly>> sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (std::size_t jj = 0; jj < n; ++jj)
        if (jj != j) row.push_back(m[i][jj]);
      sub.push_back(row);
    }
    Poly term = m[0][j] * determinant(sub, nvars);
    det = j % 2 ? det - term : det + term;
  }
  return det;
}

inline std::string where(int m, int k, std::size_t c) {
  return "(" + std::to_string(m) + "," + std::to_string(k) + ") component " + std::to_string(c);
}

/// Nonzero target components that receive no source component.
inline std::vector<std::size_t> uncovered(const PartialMatching& pm) {
  std::set<std::size_t> hit(pm.map.comp.begin(), pm.map.comp.end());
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < pm.target.size(); ++t)
    if (!hit.count(t) && !pm.target.comps[t]->is_zero_ring()) out.push_back(t);
  return out;
}

inline void check_zariski(const PartialMatching& pm, const CoverCertificate& cert, int m, int k, HypReport& rep) {
  const auto& p = pm.map;
  if (cert.elements.size() != p.size())
    throw ValidationError("zariski certificate at (" + std::to_string(m) + "," + std::to_string(k) +
                          "): one element per source component");
  std::map<std::size_t, std::vector<Poly>> by_target;
  for (std::size_t c = 0; c < p.size(); ++c) {
    const auto& T = p.pullback[c].src;
    const auto& S = p.pullback[c].dst;
    Poly f = parse_in(T, cert.elements[c], where(m, k, c));
    by_target[p.comp[c]].push_back(f);
    if (S->is_zero_ring()) continue;
    if (T->nf(f).is_zero()) {
      rep.fail(m, k, "not-injective", where(m, k, c) + ": localizing element is zero");
      continue;
    }
    // gradings play no part in the ring comparison
    auto L = qalg::localize(FPAlgebra::make(T->names(), T->relations()), f, "inv");
    auto finv = qalg::unit_inverse(S, p.pullback[c].apply(f));
    if (!finv) {
      rep.fail(m, k, "not-injective", where(m, k, c) + ": " + T->str(f) + " is not a unit on the source");
      continue;
    }
    auto imgs = p.pullback[c].images;
    imgs.push_back(*finv);
    AlgebraMap lm(L.alg, S, imgs);
    if (!lm.is_valid() || !qalg::inverse_map(lm))
      rep.fail(m, k, "not-injective", where(m, k, c) + ": source is not the localization of its target");
  }
  for (const auto& [t, fs] : by_target) {
    const auto& T = pm.target.comps[t];
    std::vector<Poly> gens = fs;
    for (const auto& r : T->relations()) gens.push_back(r);
    if (!qalg::is_unit_ideal(gens, T->nvars()))
      rep.fail(m, k, "not-surjective", "elements over target component '" + pm.target.labels[t] + "' do not generate the unit ideal");
  }
  for (auto t : uncovered(pm))
    rep.fail(m, k, "not-surjective", "target component '" + pm.target.labels[t] + "' receives nothing");
}

inline void check_smooth(const PartialMatching& pm, const CoverCertificate& cert, int m, int k, HypReport& rep) {
  const auto& p = pm.map;
  if (cert.smooth.size() != p.size())
    throw ValidationError("smooth certificate at (" + std::to_string(m) + "," + std::to_string(k) +
                          "): one entry per source component");
  std::set<std::size_t> sectioned;
  bool missing_section = false;
  for (std::size_t c = 0; c < p.size(); ++c) {
    const auto& sm = cert.smooth[c];
    const auto& T = p.pullback[c].src;
    const auto& S = p.pullback[c].dst;
    std::string at = where(m, k, c);
    if (sm.minor.size() != sm.equations.size())
      throw ValidationError("smooth certificate " + at + ": the minor must be square");
    // T' = T[coords]/(equations), mapped to S by the structure map and the coordinates
    std::vector<std::string> names = T->names();
    std::vector<int> weights = T->weights();
    std::vector<Poly> coord_imgs;
    for (const auto& x : sm.coords) {
      auto it = std::find(S->names().begin(), S->names().end(), x);
      if (it == S->names().end()) throw ValidationError("smooth certificate " + at + ": '" + x + "' is not a source variable");
      std::size_t idx = std::size_t(it - S->names().begin());
      names.push_back(qalg::detail::fresh_name(x, names));
      weights.push_back(S->weights()[idx]);
      coord_imgs.push_back(S->var(idx));
    }
    std::size_t N = names.size();
    std::vector<Poly> rels;
    for (const auto& r : T->relations()) rels.push_back(r.embedded(N));
    std::vector<Poly> eqs;
    for (const auto& e : sm.equations) {
      try {
        eqs.push_back(qalg::parse_poly(e, names));
      } catch (const ParseError& err) {
        throw ValidationError("smooth certificate " + at + ": cannot read equation '" + e + "' (" + err.what() + ")");
      }
      rels.push_back(eqs.back());
    }
    auto Tp = FPAlgebra::make(names, rels, weights);
    auto imgs = p.pullback[c].images;
    imgs.insert(imgs.end(), coord_imgs.begin(), coord_imgs.end());
    AlgebraMap tm(Tp, S, imgs);
    if (!tm.is_valid() || !qalg::inverse_map(tm)) {
      rep.fail(m, k, "not-surjective", at + ": source is not the presented algebra over its target");
      continue;
    }
    std::vector<std::vector<Poly>> jac;
    for (const auto& e : eqs) {
      std::vector<Poly> row;
      for (const auto& x : sm.minor) {
        auto it = std::find(names.begin() + long(T->nvars()), names.end(), x);
        if (it == names.end()) throw ValidationError("smooth certificate " + at + ": minor variable '" + x + "' is not a coordinate");
        row.push_back(e.derivative(std::size_t(it - names.begin())));
      }
      jac.push_back(row);
    }
    Poly det = tm.apply(determinant(jac, N));
    Poly w = parse_in(S, sm.witness, at);
    if (!S->equal(det * w, S->constant(1))) {
      rep.fail(m, k, "not-surjective", at + ": Jacobian minor times witness is not 1");
      continue;
    }
    if (sm.section.empty()) {
      missing_section = true;
      continue;
    }
    if (sm.section.size() != S->nvars()) throw ValidationError("smooth certificate " + at + ": section needs one image per source variable");
    std::vector<Poly> simgs;
    for (const auto& s : sm.section) simgs.push_back(parse_in(T, s, at));
    AlgebraMap sec(S, T, simgs);
    if (!sec.is_valid() || !qalg::compose(sec, p.pullback[c]).same_as(AlgebraMap::identity(T))) {
      rep.fail(m, k, "not-surjective", at + ": section is not a section");
      continue;
    }
    sectioned.insert(p.comp[c]);
  }
  for (std::size_t t = 0; t < pm.target.size(); ++t) {
    if (pm.target.comps[t]->is_zero_ring() || sectioned.count(t)) continue;
    if (missing_section) {
      rep.tainted = true;
      rep.notes.push_back("(" + std::to_string(m) + "," + std::to_string(k) + "): surjectivity onto '" +
                          pm.target.labels[t] + "' assumed (no section given)");
    } else {
      rep.fail(m, k, "not-surjective", "target component '" + pm.target.labels[t] + "' has no section");
    }
  }
}

/// Bijective on components onto the nonzero targets, and an isomorphism on each.
inline void check_iso(const PartialMatching& pm, const std::vector<std::vector<std::string>>& inverse, int m, int k,
                      HypReport& rep) {
  const auto& p = pm.map;
  std::map<std::size_t, std::size_t> seen;
  for (std::size_t c = 0; c < p.size(); ++c) {
    const auto& T = p.pullback[c].src;
    const auto& S = p.pullback[c].dst;
    std::string at = where(m, k, c);
    if (S->is_zero_ring()) continue;
    if (seen.count(p.comp[c])) {
      rep.fail(m, k, "not-injective", at + ": shares its target component with component " + std::to_string(seen[p.comp[c]]));
      continue;
    }
    seen[p.comp[c]] = c;
    bool ok;
    if (c < inverse.size() && !inverse[c].empty()) {
      if (inverse[c].size() != S->nvars()) throw ValidationError("iso certificate " + at + ": one image per source variable");
      std::vector<Poly> imgs;
      for (const auto& s : inverse[c]) imgs.push_back(parse_in(T, s, at));
      AlgebraMap g(S, T, imgs);
      ok = g.is_valid() && qalg::mutually_inverse(p.pullback[c], g);
    } else {
      ok = qalg::inverse_map(p.pullback[c]).has_value();
    }
    if (!ok) rep.fail(m, k, "not-injective", at + ": not an isomorphism onto its target");
  }
  for (auto t : uncovered(pm))
    rep.fail(m, k, "not-surjective", "target component '" + pm.target.labels[t] + "' receives nothing");
}

}  // namespace detail

/**
 * Checks that X is an n-hypergroupoid: the partial matching maps at (m, k) are
 * covers witnessed by certificates for m <= n and isomorphisms for
 * n < m <= n + 2. Explicit certificates take precedence over attached ones.
 */
inline HypReport check_scheme_hypergroupoid(const AffHypergroupoid& X, int n, const CertificateMap& certs = {}) {
  if (n < 0) throw ArgumentError("check_scheme_hypergroupoid: n must be non-negative");
  X.validate();
  HypReport rep;
  rep.dimension_tested = n;
  auto lookup = [&](int m, int k) -> const CoverCertificate& {
    if (auto it = certs.find({m, k}); it != certs.end()) return it->second;
    if (auto it = X.certificates.find({m, k}); it != X.certificates.end()) return it->second;
    throw InsufficientData(X.name + ": no cover certificate for (" + std::to_string(m) + "," + std::to_string(k) + ")");
  };
  for (int m = 0; m <= n; ++m)
    for (int k = 0; k <= m; ++k) lookup(m, k);
  if (n + 2 > X.top())
    throw InsufficientData(X.name + ": levels up to " + std::to_string(n + 2) + " are needed to check n = " +
                           std::to_string(n) + " (top " + std::to_string(X.top()) + ")");
  using Kind = CoverCertificate::Kind;
  for (int m = 0; m <= n + 2; ++m)
    for (int k = 0; k <= m; ++k) {
      auto pm = partial_matching(X, m, k);
      if (m > n) {
        detail::check_iso(pm, {}, m, k, rep);
        continue;
      }
      const auto& cert = lookup(m, k);
      switch (cert.kind) {
        case Kind::zariski: detail::check_zariski(pm, cert, m, k, rep); break;
        case Kind::smooth: detail::check_smooth(pm, cert, m, k, rep); break;
        case Kind::iso: detail::check_iso(pm, cert.inverse, m, k, rep); break;
        case Kind::user_asserted:
          rep.tainted = true;
          rep.notes.push_back("(" + std::to_string(m) + "," + std::to_string(k) + ") accepted on assertion" +
                              (cert.note.empty() ? "" : ": " + cert.note));
          break;
      }
    }
  return rep;
}

}  // namespace hypergpd::hypaff
