#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypergpd/core/ordinal.hpp"
#include "hypergpd/qalg/algebra.hpp"
#include "hypergpd/simpset/sset.hpp"

namespace hypergpd::hypaff {

using qalg::AlgebraMap;
using qalg::AlgPtr;
using qalg::FPAlgebra;
using qalg::Mono;
using qalg::Poly;

/// Spec of a finite product of rings: a disjoint union of affine schemes.
struct ComponentedAlgebra {
  std::vector<std::string> labels;
  std::vector<AlgPtr> comps;
  bool allow_zero = false;

  std::size_t size() const { return comps.size(); }
  void add(std::string label, AlgPtr a) {
    labels.push_back(std::move(label));
    comps.push_back(std::move(a));
  }
  void validate() const {
    if (labels.size() != comps.size()) throw ValidationError("componented algebra: one label per component");
    for (std::size_t c = 0; c < comps.size(); ++c)
      if (!allow_zero && comps[c]->is_zero_ring())
        throw ValidationError("componented algebra: component '" + labels[c] + "' is the zero ring");
  }
};

/**
 * A map of disjoint unions X -> Y: comp[c] is the component of Y receiving
 * component c of X, pullback[c] : O(Y[comp[c]]) -> O(X[c]).
 */
struct SchemeMap {
  std::vector<std::size_t> comp;
  std::vector<AlgebraMap> pullback;

  std::size_t size() const { return comp.size(); }
  friend bool same(const SchemeMap& a, const SchemeMap& b) {
    if (a.comp != b.comp) return false;
    for (std::size_t c = 0; c < a.comp.size(); ++c)
      if (!a.pullback[c].same_as(b.pullback[c])) return false;
    return true;
  }
};

/// g o f for f : X -> Y, g : Y -> Z.
inline SchemeMap compose(const SchemeMap& g, const SchemeMap& f) {
  SchemeMap h;
  for (std::size_t c = 0; c < f.size(); ++c) {
    std::size_t y = f.comp[c];
    h.comp.push_back(g.comp.at(y));
    h.pullback.push_back(qalg::compose(f.pullback[c], g.pullback[y]));
  }
  return h;
}

inline SchemeMap identity_map(const ComponentedAlgebra& X) {
  SchemeMap m;
  for (std::size_t c = 0; c < X.size(); ++c) {
    m.comp.push_back(c);
    m.pullback.push_back(AlgebraMap::identity(X.comps[c]));
  }
  return m;
}

/**
 * Witness that a partial matching map is a cover. Entries are indexed by the
 * source components (components of X_m); polynomials are strings in the
 * variables of the algebra they live in.
 */
struct CoverCertificate {
  enum class Kind { zariski, smooth, iso, user_asserted };
  Kind kind = Kind::user_asserted;

  // zariski: the source component is the target localized at this element
  std::vector<std::string> elements;

  // smooth: source = target[coords]/(equations), Jacobian of the equations in
  // the minor variables is invertible with inverse `witness`; `section`
  // (images of the source variables in the target) certifies surjectivity
  struct Smooth {
    std::vector<std::string> coords, equations, minor;
    std::string witness = "1";
    std::vector<std::string> section;
  };
  std::vector<Smooth> smooth;

  // iso: images of the source variables in the target; empty = search for it
  std::vector<std::vector<std::string>> inverse;

  std::string note;

  static CoverCertificate of(Kind k, std::string note = {}) {
    CoverCertificate c;
    c.kind = k;
    c.note = std::move(note);
    return c;
  }

  static std::string kind_name(Kind k) {
    switch (k) {
      case Kind::zariski: return "zariski";
      case Kind::smooth: return "smooth";
      case Kind::iso: return "iso";
      case Kind::user_asserted: return "user_asserted";
    }
    return "?";
  }
};

using CertificateMap = std::map<std::pair<int, int>, CoverCertificate>;

/**
 * Simplicial affine scheme (equivalently the cosimplicial algebra of its
 * coordinate rings) on levels 0..top. face[n][i] : X_n -> X_{n-1},
 * degen[n][i] : X_n -> X_{n+1} for n < top.
 */
struct AffHypergroupoid {
  std::string name;
  std::vector<ComponentedAlgebra> levels;
  std::vector<std::vector<SchemeMap>> face;
  std::vector<std::vector<SchemeMap>> degen;
  std::optional<int> coskeletal_above;
  CertificateMap certificates;  // attached by constructions that know their covers

  // Gluing of the free level-0 cotangent term in degree -q along X_1, as
  // strings in the level-1 variables, for constructions that know it.
  std::map<int, std::vector<std::vector<std::vector<std::string>>>> cotangent_gluing;

  // Relative case over a constant base Spec(base): structure maps into level 0.
  AlgPtr base;
  std::vector<AlgebraMap> base_maps;  // base -> O(X_0[c])

  // When set, windows bound this filtration of the standard monomials of each
  // level instead of a weight grading; level_degree_cap(n, P) bounds the total
  // degree of monomials of filtration <= P.
  std::function<long(int, std::size_t, const Mono&)> filtration;
  std::function<int(int, long)> level_degree_cap;

  int top() const { return int(levels.size()) - 1; }
  const ComponentedAlgebra& level(int n) const {
    if (n < 0 || n > top())
      throw InsufficientData(name + ": level " + std::to_string(n) + " is not stored (top " + std::to_string(top()) + ")");
    return levels[n];
  }

  /// X(theta) : X_n -> X_m for theta : [m] -> [n].
  SchemeMap op(const OrdinalMap& theta) const {
    auto em = epi_mono(theta);
    int n = theta.dst;
    SchemeMap acc = identity_map(level(n));
    auto img = em.mono.image();
    int lvl = n;
    for (int v = n; v >= 0; --v)
      if (!std::binary_search(img.begin(), img.end(), v)) {
        acc = compose(face[lvl][v], acc);
        --lvl;
      }
    auto w = degeneracy_word(em.epi);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      acc = compose(degen[lvl][*it], acc);
      ++lvl;
    }
    return acc;
  }

  /// The simplicial set of components.
  simpset::SSet component_sset() const {
    simpset::SSet C;
    for (const auto& l : levels) C.count.push_back(l.size());
    C.face.resize(levels.size());
    C.degen.resize(levels.size());
    for (int n = 0; n <= top(); ++n) {
      for (const auto& f : face[n]) C.face[n].push_back(f.comp);
      if (n < top())
        for (const auto& s : degen[n]) C.degen[n].push_back(s.comp);
    }
    return C;
  }

  /// Shapes, algebra maps and every simplicial identity (by normal forms).
  void validate() const {
    auto fail = [&](const std::string& w) { throw ValidationError(name + ": " + w); };
    if (levels.empty()) fail("no levels");
    if (int(face.size()) != top() + 1 || int(degen.size()) != top() + 1) fail("operator tables have the wrong length");
    auto check_map = [&](const SchemeMap& f, int from, int to, const std::string& what) {
      if (f.comp.size() != levels[from].size() || f.pullback.size() != levels[from].size())
        fail(what + ": wrong number of components");
      for (std::size_t c = 0; c < f.size(); ++c) {
        if (f.comp[c] >= levels[to].size()) fail(what + ": component index out of range");
        const auto& p = f.pullback[c];
        if (p.src->names() != levels[to].comps[f.comp[c]]->names() || p.dst->names() != levels[from].comps[c]->names())
          fail(what + ": pullback between the wrong algebras at component " + std::to_string(c));
        if (!p.is_valid()) fail(what + ": pullback at component " + std::to_string(c) + " does not respect relations");
      }
    };
    for (int n = 0; n <= top(); ++n) {
      levels[n].validate();
      if (int(face[n].size()) != (n ? n + 1 : 0)) fail("face count at level " + std::to_string(n));
      for (int i = 0; n > 0 && i <= n; ++i)
        check_map(face[n][i], n, n - 1, "d_" + std::to_string(i) + " at level " + std::to_string(n));
      if (int(degen[n].size()) != (n < top() ? n + 1 : 0)) fail("degeneracy count at level " + std::to_string(n));
      for (int i = 0; n < top() && i <= n; ++i)
        check_map(degen[n][i], n, n + 1, "s_" + std::to_string(i) + " at level " + std::to_string(n));
    }
    auto lvl = [](int n) { return " at level " + std::to_string(n); };
    for (int n = 2; n <= top(); ++n)
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (!same(compose(face[n - 1][i], face[n][j]), compose(face[n - 1][j - 1], face[n][i])))
            fail("identity d_i d_j = d_{j-1} d_i fails for i=" + std::to_string(i) + ", j=" + std::to_string(j) + lvl(n));
    for (int n = 0; n < top(); ++n)
      for (int j = 0; j <= n; ++j) {
        const auto& s = degen[n][j];
        for (int i = 0; i <= n + 1; ++i) {
          SchemeMap ds = compose(face[n + 1][i], s);
          if (i == j || i == j + 1) {
            if (!same(ds, identity_map(levels[n])))
              fail("identity d_i s_j = id fails for i=" + std::to_string(i) + ", j=" + std::to_string(j) + lvl(n));
          } else if (n >= 1) {
            SchemeMap rhs = i < j ? compose(degen[n - 1][j - 1], face[n][i]) : compose(degen[n - 1][j], face[n][i - 1]);
            if (!same(ds, rhs))
              fail("identity d_i s_j fails for i=" + std::to_string(i) + ", j=" + std::to_string(j) + lvl(n));
          }
        }
        for (int i = 0; i <= j && n + 1 < top(); ++i)
          if (!same(compose(degen[n + 1][i], degen[n][j]), compose(degen[n + 1][j + 1], degen[n][i])))
            fail("identity s_i s_j = s_{j+1} s_i fails for i=" + std::to_string(i) + ", j=" + std::to_string(j) + lvl(n));
      }
    if (base) {
      if (base_maps.size() != levels[0].size()) fail("one base structure map per level-0 component");
      for (std::size_t c = 0; c < base_maps.size(); ++c) {
        if (base_maps[c].src->names() != base->names() || base_maps[c].dst->names() != levels[0].comps[c]->names())
          fail("base structure map between the wrong algebras");
        if (!base_maps[c].is_valid()) fail("base structure map does not respect relations");
      }
      // X_1 lies over the base compatibly along both faces
      for (std::size_t c = 0; top() >= 1 && c < levels[1].size(); ++c) {
        auto via = [&](int i) {
          const auto& f = face[1][i];
          return qalg::compose(f.pullback[c], base_maps[f.comp[c]]);
        };
        if (!via(0).same_as(via(1))) fail("faces of level 1 disagree over the base");
      }
    }
  }
};

/// Discrete simplicial set as a simplicial scheme: every simplex is a point.
inline AffHypergroupoid discrete(const simpset::SSet& X, std::string name = "discrete") {
  AffHypergroupoid A;
  A.name = std::move(name);
  AlgPtr pt = FPAlgebra::ground();
  A.levels.resize(X.count.size());
  A.face.resize(X.count.size());
  A.degen.resize(X.count.size());
  for (int n = 0; n <= X.top(); ++n)
    for (std::size_t x = 0; x < X.count[n]; ++x) A.levels[n].add(std::to_string(x), pt);
  auto as_map = [&](const std::vector<std::size_t>& f) {
    SchemeMap m;
    m.comp = f;
    m.pullback.assign(f.size(), AlgebraMap::identity(pt));
    return m;
  };
  for (int n = 0; n <= X.top(); ++n) {
    for (int i = 0; n > 0 && i <= n; ++i) A.face[n].push_back(as_map(X.face[n][i]));
    for (int i = 0; n < X.top() && i <= n; ++i) A.degen[n].push_back(as_map(X.degen[n][i]));
  }
  return A;
}

/// Levels all equal to Spec A, every operator the identity.
inline AffHypergroupoid constant_scheme(const AlgPtr& A, int top, std::string name = "affine") {
  AffHypergroupoid X;
  X.name = std::move(name);
  X.coskeletal_above = 0;
  X.levels.resize(top + 1);
  X.face.resize(top + 1);
  X.degen.resize(top + 1);
  SchemeMap id;
  id.comp = {0};
  id.pullback = {AlgebraMap::identity(A)};
  for (int n = 0; n <= top; ++n) {
    X.levels[n].add("X", A);
    X.face[n].assign(n ? n + 1 : 0, id);
    X.degen[n].assign(n < top ? n + 1 : 0, id);
  }
  return X;
}

}  // namespace hypergpd::hypaff
