#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hypergpd/qalg/groebner.hpp"

namespace hypergpd::qalg {

/**
 * Q[x_1..x_n]/I with a cached reduced Groebner basis. Immutable once built;
 * share through AlgPtr. Variable weights (default 0) define a Z-grading when
 * every relation is homogeneous.
 */
class FPAlgebra {
 public:
  FPAlgebra(std::vector<std::string> names, std::vector<Poly> relations, std::vector<int> weights = {},
            MonomialOrder ord = {})
      : names_(std::move(names)), rels_(std::move(relations)), weights_(std::move(weights)), ord_(ord) {
    std::set<std::string> seen;
    for (const auto& n : names_) {
      if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_'))
        throw ValidationError("algebra: bad variable name '" + n + "'");
      if (!seen.insert(n).second) throw ValidationError("algebra: duplicate variable '" + n + "'");
    }
    if (weights_.empty()) weights_.assign(names_.size(), 0);
    if (weights_.size() != names_.size()) throw ValidationError("algebra: one weight per variable");
    for (const auto& r : rels_)
      if (r.nvars() != names_.size()) throw ValidationError("algebra: relation in the wrong ring");
    gb_ = groebner_basis(rels_, names_.size(), ord_);
  }

  static std::shared_ptr<const FPAlgebra> make(std::vector<std::string> names, std::vector<Poly> rels = {},
                                               std::vector<int> weights = {}) {
    return std::make_shared<const FPAlgebra>(std::move(names), std::move(rels), std::move(weights));
  }
  static std::shared_ptr<const FPAlgebra> parse(std::vector<std::string> names, const std::vector<std::string>& rels,
                                                std::vector<int> weights = {}) {
    std::vector<Poly> ps;
    for (const auto& r : rels) ps.push_back(parse_poly(r, names));
    return make(std::move(names), std::move(ps), std::move(weights));
  }
  static std::shared_ptr<const FPAlgebra> ground() { return make({}); }

  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Poly>& relations() const { return rels_; }
  const std::vector<int>& weights() const { return weights_; }
  const MonomialOrder& order() const { return ord_; }
  const GroebnerBasis& gb() const { return gb_; }

  /// The zero ring is a legitimate value, flagged rather than hidden.
  bool is_zero_ring() const { return gb_.unit(); }
  bool is_graded() const {
    for (const auto& r : rels_)
      if (!r.homogeneous_weight(weights_)) return false;
    return true;
  }

  Poly nf(const Poly& p) const { return gb_.normal_form(p); }
  bool equal(const Poly& a, const Poly& b) const { return nf(a - b).is_zero(); }
  Poly var(std::size_t i) const { return Poly::var(nvars(), i); }
  Poly constant(const Rational& c) const { return Poly::constant(nvars(), c); }
  Poly parse_element(const std::string& s) const { return parse_poly(s, names_); }
  std::string str(const Poly& p) const { return p.str(names_, ord_); }

  std::string str() const {
    std::string s = "Q[";
    for (std::size_t i = 0; i < names_.size(); ++i) s += (i ? "," : "") + names_[i];
    s += "]";
    if (!rels_.empty()) {
      s += "/(";
      for (std::size_t i = 0; i < rels_.size(); ++i) s += (i ? ", " : "") + str(rels_[i]);
      s += ")";
    }
    return s;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Poly> rels_;
  std::vector<int> weights_;
  MonomialOrder ord_;
  GroebnerBasis gb_;
};

using AlgPtr = std::shared_ptr<const FPAlgebra>;

/// Algebra map given by the images of the source variables.
struct AlgebraMap {
  AlgPtr src, dst;
  std::vector<Poly> images;

  AlgebraMap() = default;
  AlgebraMap(AlgPtr s, AlgPtr d, std::vector<Poly> imgs) : src(std::move(s)), dst(std::move(d)) {
    if (imgs.size() != src->nvars()) throw ValidationError("algebra map: need one image per source variable");
    for (auto& p : imgs) {
      if (p.nvars() != dst->nvars()) throw ValidationError("algebra map: image in the wrong ring");
      images.push_back(dst->nf(p));
    }
  }
  static AlgebraMap parse(AlgPtr s, AlgPtr d, const std::vector<std::string>& imgs) {
    std::vector<Poly> ps;
    for (const auto& i : imgs) ps.push_back(d->parse_element(i));
    return AlgebraMap(std::move(s), std::move(d), std::move(ps));
  }
  static AlgebraMap identity(const AlgPtr& a) {
    std::vector<Poly> imgs;
    for (std::size_t i = 0; i < a->nvars(); ++i) imgs.push_back(a->var(i));
    return AlgebraMap(a, a, imgs);
  }
  /// The unique map out of Q.
  static AlgebraMap from_ground(const AlgPtr& a) { return AlgebraMap(FPAlgebra::ground(), a, {}); }

  Poly apply(const Poly& p) const { return dst->nf(p.substitute(images, dst->nvars())); }

  /// Index of the first source relation not sent to zero.
  std::optional<std::size_t> first_violation() const {
    for (std::size_t i = 0; i < src->relations().size(); ++i)
      if (!apply(src->relations()[i]).is_zero()) return i;
    return std::nullopt;
  }
  bool is_valid() const { return !first_violation(); }
  void validate() const {
    if (auto i = first_violation())
      throw ValidationError("algebra map does not respect relation " + src->str(src->relations()[*i]));
  }

  /// Images agree in normal form.
  bool same_as(const AlgebraMap& o) const { return images == o.images; }

  bool preserves_weights() const {
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i].is_zero()) continue;
      auto w = images[i].homogeneous_weight(dst->weights());
      if (!w || *w != src->weights()[i]) return false;
    }
    return true;
  }
};

/// g o f
inline AlgebraMap compose(const AlgebraMap& g, const AlgebraMap& f) {
  if (f.dst.get() != g.src.get() && (f.dst->names() != g.src->names() || f.dst->relations() != g.src->relations()))
    throw ArgumentError("compose: maps are not composable");
  std::vector<Poly> imgs;
  for (const auto& p : f.images) imgs.push_back(g.apply(p));
  return AlgebraMap(f.src, g.dst, imgs);
}

inline bool mutually_inverse(const AlgebraMap& f, const AlgebraMap& g) {
  return compose(g, f).same_as(AlgebraMap::identity(f.src)) && compose(f, g).same_as(AlgebraMap::identity(g.src));
}

namespace detail {

inline std::string fresh_name(const std::string& base, const std::vector<std::string>& taken) {
  std::set<std::string> t(taken.begin(), taken.end());
  if (!t.count(base)) return base;
  for (int k = 2;; ++k) {
    std::string c = base + "_" + std::to_string(k);
    if (!t.count(c)) return c;
  }
}

/// Polynomial over the variables `keep` (indices into p's ring), re-indexed.
inline Poly compress(const Poly& p, const std::vector<std::size_t>& keep) {
  Poly r(keep.size());
  for (const auto& [m, c] : p.terms()) {
    Mono mm(keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) mm[j] = m[keep[j]];
    r.add_term(mm, c);
  }
  return r;
}

}  // namespace detail

struct Pushout {
  AlgPtr alg;
  AlgebraMap left, right;  // A -> P, B -> P
};

/// A (x)_R B on the disjoint union of variables; clashing names from B get a suffix.
inline Pushout pushout(const AlgebraMap& f, const AlgebraMap& g) {
  if (f.src->names() != g.src->names()) throw ArgumentError("pushout: maps need a common source");
  const auto& A = *f.dst;
  const auto& B = *g.dst;
  std::size_t na = A.nvars(), n = na + B.nvars();
  std::vector<std::string> names = A.names();
  for (const auto& b : B.names()) names.push_back(detail::fresh_name(b, names));
  std::vector<int> w = A.weights();
  w.insert(w.end(), B.weights().begin(), B.weights().end());
  std::vector<Poly> rels;
  for (const auto& r : A.relations()) rels.push_back(r.embedded(n, 0));
  for (const auto& r : B.relations()) rels.push_back(r.embedded(n, na));
  for (std::size_t i = 0; i < f.images.size(); ++i) {
    Poly d = f.images[i].embedded(n, 0) - g.images[i].embedded(n, na);
    if (!d.is_zero()) rels.push_back(d);
  }
  Pushout out;
  out.alg = FPAlgebra::make(names, rels, w);
  std::vector<Poly> li, ri;
  for (std::size_t i = 0; i < na; ++i) li.push_back(out.alg->var(i));
  for (std::size_t i = na; i < n; ++i) ri.push_back(out.alg->var(i));
  out.left = AlgebraMap(f.dst, out.alg, li);
  out.right = AlgebraMap(g.dst, out.alg, ri);
  return out;
}

inline Pushout tensor(const AlgPtr& a, const AlgPtr& b) {
  return pushout(AlgebraMap::from_ground(a), AlgebraMap::from_ground(b));
}

struct Localization {
  AlgPtr alg;
  AlgebraMap map;  // A -> A_f
};

/// A[y]/(y f - 1); y is appended last and carries weight -wt(f).
inline Localization localize(const AlgPtr& A, const Poly& f, const std::string& inverse_name = "y") {
  Poly fn = A->nf(f);
  if (fn.is_zero()) throw DegenerateInput("localize: element is zero in " + A->str());
  int wf = 0;
  if (auto w = fn.homogeneous_weight(A->weights()))
    wf = int(*w);
  else if (A->is_graded())
    throw ValidationError("localize: inhomogeneous element " + A->str(fn) + " in a graded algebra");
  std::size_t n = A->nvars() + 1;
  std::vector<std::string> names = A->names();
  names.push_back(detail::fresh_name(inverse_name, names));
  std::vector<int> w = A->weights();
  w.push_back(-wf);
  std::vector<Poly> rels;
  for (const auto& r : A->relations()) rels.push_back(r.embedded(n));
  rels.push_back(Poly::var(n, n - 1) * fn.embedded(n) - Poly::constant(n, 1));
  Localization out;
  out.alg = FPAlgebra::make(names, rels, w);
  std::vector<Poly> imgs;
  for (std::size_t i = 0; i + 1 < n; ++i) imgs.push_back(out.alg->var(i));
  out.map = AlgebraMap(A, out.alg, imgs);
  return out;
}

/// The inverse of g in A, if g is a unit (elimination of y in A[y]/(yg-1)).
inline std::optional<Poly> unit_inverse(const AlgPtr& A, const Poly& g) {
  if (A->is_zero_ring()) return Poly(A->nvars());
  std::size_t n = A->nvars() + 1;
  std::vector<Poly> gens;
  for (const auto& r : A->relations()) gens.push_back(r.embedded(n, 1));
  gens.push_back(Poly::var(n, 0) * g.embedded(n, 1) - Poly::constant(n, 1));
  auto gb = groebner_basis(gens, n, MonomialOrder::elimination(1));
  Poly y = gb.normal_form(Poly::var(n, 0));
  if (y.uses_variable(0)) return std::nullopt;
  std::vector<std::size_t> keep;
  for (std::size_t i = 1; i < n; ++i) keep.push_back(i);
  return A->nf(detail::compress(y, keep));
}

/**
 * Candidate inverse of f : A -> B, found by eliminating the B-variables from
 * the graph ideal. Returned only when both composites are identities.
 */
inline std::optional<AlgebraMap> inverse_map(const AlgebraMap& f) {
  const auto& A = f.src;
  const auto& B = f.dst;
  std::size_t nb = B->nvars(), n = nb + A->nvars();
  std::vector<Poly> gens;
  for (const auto& r : B->relations()) gens.push_back(r.embedded(n, 0));
  for (const auto& r : A->relations()) gens.push_back(r.embedded(n, nb));
  for (std::size_t i = 0; i < A->nvars(); ++i) gens.push_back(f.images[i].embedded(n, 0) - Poly::var(n, nb + i));
  auto gb = groebner_basis(gens, n, MonomialOrder::elimination(int(nb)));
  std::vector<std::size_t> keep;
  for (std::size_t i = nb; i < n; ++i) keep.push_back(i);
  std::vector<Poly> imgs;
  for (std::size_t j = 0; j < nb; ++j) {
    Poly p = gb.normal_form(Poly::var(n, j));
    for (std::size_t k = 0; k < nb; ++k)
      if (p.uses_variable(k)) return std::nullopt;
    imgs.push_back(detail::compress(p, keep));
  }
  AlgebraMap g(B, A, imgs);
  if (!g.is_valid() || !mutually_inverse(f, g)) return std::nullopt;
  return g;
}

struct Simplified {
  AlgPtr alg;
  AlgebraMap to, from;  // mutually inverse
};

/**
 * Removes variables that a relation expresses linearly in terms of the
 * others (relation = c*x + h with x not in h). Later variables go first, so
 * the earliest names survive.
 */
inline Simplified simplify(const AlgPtr& A) {
  std::size_t n = A->nvars();
  std::vector<Poly> rels = A->relations();
  std::vector<Poly> expr;
  for (std::size_t i = 0; i < n; ++i) expr.push_back(A->var(i));
  std::vector<bool> gone(n, false);
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t r = 0; r < rels.size() && !progress; ++r) {
      for (std::size_t v = n; v-- > 0;) {
        if (gone[v]) continue;
        Mono ev(n, 0);
        ev[v] = 1;
        Rational c = rels[r].coeff(ev);
        if (is_zero(c)) continue;
        Poly h = rels[r] - Poly::monomial(ev, c);
        if (h.uses_variable(v)) continue;
        std::vector<Poly> sub;
        for (std::size_t i = 0; i < n; ++i) sub.push_back(i == v ? h.scaled(-1 / c) : A->var(i));
        rels.erase(rels.begin() + long(r));
        for (auto& q : rels) q = q.substitute(sub, n);
        for (auto& e : expr) e = e.substitute(sub, n);
        gone[v] = true;
        progress = true;
        break;
      }
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (!gone[i]) keep.push_back(i);
  std::vector<std::string> names;
  std::vector<int> w;
  for (auto i : keep) {
    names.push_back(A->names()[i]);
    w.push_back(A->weights()[i]);
  }
  std::vector<Poly> nr;
  for (const auto& q : rels)
    if (!q.is_zero()) nr.push_back(detail::compress(q, keep));
  Simplified out;
  out.alg = FPAlgebra::make(names, nr, w);
  std::vector<Poly> to, from;
  for (const auto& e : expr) to.push_back(detail::compress(e, keep));
  for (auto i : keep) from.push_back(A->var(i));
  out.to = AlgebraMap(A, out.alg, to);
  out.from = AlgebraMap(out.alg, A, from);
  return out;
}

}  // namespace hypergpd::qalg
