#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "hypergpd/hypaff/scheme.hpp"
#include "hypergpd/simpset/matching.hpp"

namespace hypergpd::hypaff {

/**
 * M_K X as a disjoint union: one component per simplicial map K -> (components
 * of X), each presented as the colimit of copies of the component algebras
 * glued along faces, then simplified.
 */
struct MatchingAlgebra {
  ComponentedAlgebra alg;  // simplified presentations; zero rings kept and flagged
  std::vector<simpset::SMap> assignments;
  std::vector<AlgPtr> raw;
  std::vector<AlgebraMap> from_simplified;  // alg.comps[t] -> raw[t]
  std::vector<std::vector<std::size_t>> offset;  // first raw variable of each copy, simplices in (d, i) order
};

namespace detail {

inline std::string sanitize(const std::string& id) {
  std::string s;
  for (char ch : id) s += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
  return s;
}

inline simpset::TruncatedSSet component_truncation(const AffHypergroupoid& X) {
  auto C = X.component_sset();
  if (X.coskeletal_above) return simpset::TruncatedSSet::coskeletal(std::move(C), *X.coskeletal_above);
  return simpset::TruncatedSSet::stored(std::move(C));
}

}  // namespace detail

inline MatchingAlgebra matching_algebra(const simpset::FinSSet& K, const AffHypergroupoid& X) {
  if (K.empty()) throw ArgumentError("matching_algebra: empty diagram (use the terminal object directly)");
  if (K.top_dim() > X.top())
    throw InsufficientData("matching_algebra: shape of dimension " + std::to_string(K.top_dim()) + " exceeds stored level " +
                           std::to_string(X.top()));
  auto Ct = detail::component_truncation(X);
  MatchingAlgebra out;
  out.assignments = simpset::simplicial_maps(K, Ct);
  auto order = simpset::assignment_schedule(K);
  for (const auto& phi : out.assignments) {
    std::vector<std::string> names;
    std::vector<int> weights;
    std::vector<Poly> rels;
    std::vector<std::vector<std::size_t>> offset(K.top_dim() + 1);
    for (int d = 0; d <= K.top_dim(); ++d) offset[d].assign(K.count(d), 0);
    bool first = true;
    for (auto [d, i] : order) {
      const auto& A = X.levels[d].comps[phi.images[d][i]];
      offset[d][i] = names.size();
      for (std::size_t v = 0; v < A->nvars(); ++v) {
        std::string base = first ? A->names()[v] : A->names()[v] + "_" + detail::sanitize(K.simplex(d, i).id);
        names.push_back(qalg::detail::fresh_name(base, names));
        weights.push_back(A->weights()[v]);
      }
      first = false;
    }
    std::size_t N = names.size();
    auto copy = [&](int d, std::size_t i, const Poly& p) { return p.embedded(N, offset[d][i]); };
    for (auto [d, i] : order)
      for (const auto& r : X.levels[d].comps[phi.images[d][i]]->relations()) rels.push_back(copy(d, i, r));
    // faces: d_j(sigma) = s_w(tau) identified through X_{d-1}
    for (int d = 1; d <= K.top_dim(); ++d)
      for (std::size_t i = 0; i < K.count(d); ++i) {
        std::size_t c = phi.images[d][i];
        for (int j = 0; j <= d; ++j) {
          const auto& fr = K.simplex(d, i).faces[j];
          int e = d - 1 - int(fr.deg.size());
          const SchemeMap& fj = X.face[d][j];
          SchemeMap sw = X.op(surjection_from_word(e, fr.deg));
          std::size_t ct = phi.images[e][fr.target];
          if (sw.comp[ct] != fj.comp[c]) throw ValidationError("matching_algebra: inconsistent component assignment");
          const auto& p1 = fj.pullback[c];
          const auto& p2 = sw.pullback[ct];
          for (std::size_t z = 0; z < p1.src->nvars(); ++z) {
            Poly diff = copy(d, i, p1.images[z]) - copy(e, fr.target, p2.images[z]);
            if (!diff.is_zero()) rels.push_back(diff);
          }
        }
      }
    // over a constant base all vertices share one point of the base
    if (X.base)
      for (std::size_t v = 1; v < K.count(0); ++v) {
        const auto& b0 = X.base_maps[phi.images[0][0]];
        const auto& bv = X.base_maps[phi.images[0][v]];
        for (std::size_t z = 0; z < X.base->nvars(); ++z) {
          Poly diff = copy(0, v, bv.images[z]) - copy(0, 0, b0.images[z]);
          if (!diff.is_zero()) rels.push_back(diff);
        }
      }
    auto raw = FPAlgebra::make(names, rels, weights);
    auto s = qalg::simplify(raw);
    std::string label;
    for (std::size_t v = 0; v < K.count(0); ++v) label += X.levels[0].labels[phi.images[0][v]] + (v + 1 < K.count(0) ? "|" : "");
    out.alg.add(label, s.alg);
    out.raw.push_back(raw);
    out.from_simplified.push_back(s.from);
    std::vector<std::size_t> flat;
    for (const auto& o : offset) flat.insert(flat.end(), o.begin(), o.end());
    out.offset.push_back(std::move(flat));
  }
  out.alg.allow_zero = true;
  return out;
}

/**
 * The partial matching map X_m -> M_K X for K a subcomplex of Delta^m whose
 * simplices carry their vertex lists.
 */
inline SchemeMap matching_map(const AffHypergroupoid& X, int m, const simpset::FinSSet& K, const MatchingAlgebra& M) {
  SchemeMap out;
  std::vector<std::vector<SchemeMap>> restrict(K.top_dim() + 1);
  for (int d = 0; d <= K.top_dim(); ++d)
    for (std::size_t i = 0; i < K.count(d); ++i) {
      const auto& vs = K.simplex(d, i).vertices;
      if (!vs) throw ArgumentError("matching_map: shape simplices need vertex lists");
      restrict[d].push_back(X.op(OrdinalMap(m, *vs)));
    }
  const auto& Xm = X.level(m);
  for (std::size_t c = 0; c < Xm.size(); ++c) {
    simpset::SMap phi;
    phi.images.resize(K.top_dim() + 1);
    for (int d = 0; d <= K.top_dim(); ++d)
      for (std::size_t i = 0; i < K.count(d); ++i) phi.images[d].push_back(restrict[d][i].comp[c]);
    std::size_t t = 0;
    while (t < M.assignments.size() && !(M.assignments[t] == phi)) ++t;
    if (t == M.assignments.size()) throw ValidationError("matching_map: restriction is not a simplicial map");
    const auto& raw = M.raw[t];
    std::vector<Poly> imgs(raw->nvars());
    std::size_t flat = 0;
    for (int d = 0; d <= K.top_dim(); ++d)
      for (std::size_t i = 0; i < K.count(d); ++i, ++flat) {
        std::size_t off = M.offset[t][flat];
        const auto& p = restrict[d][i].pullback[c];
        for (std::size_t z = 0; z < p.images.size(); ++z) imgs[off + z] = p.images[z];
      }
    AlgebraMap from_raw(raw, Xm.comps[c], imgs);
    out.comp.push_back(t);
    out.pullback.push_back(qalg::compose(from_raw, M.from_simplified[t]));
  }
  return out;
}

}  // namespace hypergpd::hypaff
