#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hypergpd/hypaff/certificate.hpp"
#include "hypergpd/simpset/sset.hpp"

namespace hypergpd::hypaff {

using Tuple = std::vector<std::size_t>;

/// All (n+1)-tuples over r charts in lexicographic order.
inline std::vector<Tuple> chart_tuples(std::size_t r, int n) {
  std::vector<Tuple> out;
  Tuple t(std::size_t(n + 1), 0);
  for (;;) {
    out.push_back(t);
    int p = n;
    while (p >= 0 && t[p] + 1 == r) t[p--] = 0;
    if (p < 0) break;
    ++t[p];
  }
  return out;
}

inline std::size_t tuple_index(const Tuple& t, std::size_t r) {
  std::size_t i = 0;
  for (auto a : t) i = i * r + a;
  return i;
}

/**
 * The 0-coskeleton of a family of r charts: level n has one component per
 * (n+1)-tuple. `algebra(tau)` presents the iterated overlap and
 * `restrict(sigma, tau, theta)` is the pullback O(sigma) -> O(tau) for
 * sigma = tau o theta.
 */
inline AffHypergroupoid tuple_nerve(std::string name, const std::vector<std::string>& chart_labels, int top,
                                    const std::function<AlgPtr(const Tuple&)>& algebra,
                                    const std::function<AlgebraMap(const Tuple&, const Tuple&, const OrdinalMap&)>& restrict) {
  std::size_t r = chart_labels.size();
  if (r == 0) throw ArgumentError(name + ": no charts");
  if (top < 0) throw ArgumentError(name + ": negative top level");
  AffHypergroupoid X;
  X.name = std::move(name);
  X.coskeletal_above = 0;
  X.levels.resize(top + 1);
  X.face.resize(top + 1);
  X.degen.resize(top + 1);
  std::vector<std::vector<Tuple>> tuples;
  for (int n = 0; n <= top; ++n) {
    tuples.push_back(chart_tuples(r, n));
    for (const auto& t : tuples[n]) {
      std::string label;
      for (std::size_t i = 0; i < t.size(); ++i) label += (i ? "|" : "") + chart_labels[t[i]];
      auto A = algebra(t);
      if (A->is_zero_ring()) X.levels[n].allow_zero = true;
      X.levels[n].add(label, A);
    }
  }
  auto op = [&](int from, const OrdinalMap& theta) {
    SchemeMap m;
    for (const auto& tau : tuples[from]) {
      Tuple sigma;
      for (int i = 0; i <= theta.src; ++i) sigma.push_back(tau[theta.values[i]]);
      m.comp.push_back(tuple_index(sigma, r));
      m.pullback.push_back(restrict(sigma, tau, theta));
    }
    return m;
  };
  for (int n = 0; n <= top; ++n) {
    for (int i = 0; n > 0 && i <= n; ++i) X.face[n].push_back(op(n, OrdinalMap::coface(n, i)));
    for (int i = 0; n < top && i <= n; ++i) X.degen[n].push_back(op(n, OrdinalMap::codegeneracy(n, i)));
  }
  return X;
}

/**
 * Cech nerve of a Zariski cover of Spec A: level n components are
 * A[1/(f_{i_0}...f_{i_n})]. Zariski certificates are attached.
 */
inline AffHypergroupoid cech_nerve(const AlgPtr& A, const std::vector<Poly>& cover, int top = 3) {
  if (cover.empty()) throw CoverInvalid("cech_nerve: empty cover");
  std::vector<Poly> gens;
  for (const auto& f : cover) {
    if (f.nvars() != A->nvars()) throw ArgumentError("cech_nerve: cover element in the wrong ring");
    gens.push_back(f);
  }
  for (const auto& r : A->relations()) gens.push_back(r);
  if (!qalg::is_unit_ideal(gens, A->nvars())) throw CoverInvalid("cech_nerve: cover elements do not generate the unit ideal");

  auto product = [&](const Tuple& t) {
    Poly p = A->constant(1);
    for (auto i : t) p = p * cover[i];
    return A->nf(p);
  };
  // O(tau) with the inverse of the product: A itself when the product is a
  // constant, the zero ring when it vanishes
  struct Chart {
    AlgPtr alg;
    AlgebraMap from_A;
    Poly inv;
  };
  std::map<Tuple, Chart> memo;
  auto chart = [&](const Tuple& t) -> const Chart& {
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    Poly p = product(t);
    Chart c;
    if (p.is_zero()) {
      auto names = A->names();
      names.push_back(qalg::detail::fresh_name("y", names));
      std::vector<Poly> rels{Poly::constant(names.size(), 1)};
      c.alg = FPAlgebra::make(names, rels);
      std::vector<Poly> imgs;
      for (std::size_t i = 0; i < A->nvars(); ++i) imgs.push_back(c.alg->var(i));
      c.from_A = AlgebraMap(A, c.alg, imgs);
      c.inv = c.alg->var(A->nvars());
    } else if (p.is_constant()) {
      c.alg = A;
      c.from_A = AlgebraMap::identity(A);
      c.inv = A->constant(1 / p.constant_term());
    } else {
      auto L = qalg::localize(A, p);
      c.alg = L.alg;
      c.from_A = L.map;
      c.inv = L.alg->var(A->nvars());
    }
    return memo.emplace(t, std::move(c)).first->second;
  };
  auto restrict = [&](const Tuple& sigma, const Tuple& tau, const OrdinalMap& theta) {
    const auto& cs = chart(sigma);
    const auto& ct = chart(tau);
    // 1/prod(sigma) = inv(tau)^M * prod_p f_{tau_p}^(M - mult_p)
    std::vector<int> mult(tau.size(), 0);
    for (int i = 0; i <= theta.src; ++i) ++mult[theta.values[i]];
    int M = *std::max_element(mult.begin(), mult.end());
    Poly inv = ct.inv.pow(unsigned(M));
    for (std::size_t p = 0; p < tau.size(); ++p) inv = inv * ct.from_A.apply(cover[tau[p]]).pow(unsigned(M - mult[p]));
    std::vector<Poly> imgs = ct.from_A.images;
    if (cs.alg->nvars() > A->nvars()) imgs.push_back(inv);
    return AlgebraMap(cs.alg, ct.alg, imgs);
  };
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < cover.size(); ++i) labels.push_back("U" + std::to_string(i));
  auto X = tuple_nerve("cech", labels, top, [&](const Tuple& t) { return chart(t).alg; }, restrict);
  X.base = A;
  for (std::size_t i = 0; i < cover.size(); ++i) X.base_maps.push_back(chart({i}).from_A);

  using Kind = CoverCertificate::Kind;
  auto c0 = CoverCertificate::of(Kind::zariski);
  for (const auto& f : cover) c0.elements.push_back(A->str(f));
  c0.note = "localizations at the cover elements";
  X.certificates[{0, 0}] = c0;
  // Lambda^1_k is the vertex k; the edge (a,b) localizes the other vertex's element
  for (int k = 0; k <= 1; ++k) {
    auto c = CoverCertificate::of(Kind::zariski);
    for (const auto& t : chart_tuples(cover.size(), 1)) c.elements.push_back(A->str(cover[t[1 - k]]));
    X.certificates[{1, k}] = c;
  }
  return X;
}

/**
 * Two charts glued along U = (A0)_{f0}; `transition` : (A1)_{f1} -> U must be
 * an isomorphism. Tuples mixing both charts live on U.
 */
inline AffHypergroupoid glued_two_charts(const AlgPtr& A0, const Poly& f0, const AlgPtr& A1, const Poly& f1,
                                         const std::vector<std::string>& transition, int top = 3,
                                         std::vector<std::string> labels = {"U0", "U1"},
                                         const std::string& inverse_name = "y", std::string name = "glued") {
  auto U = qalg::localize(A0, f0, inverse_name);
  auto L1 = qalg::localize(A1, f1);
  auto tr = AlgebraMap::parse(L1.alg, U.alg, transition);
  if (!tr.is_valid()) throw ValidationError(name + ": transition does not respect relations");
  if (!qalg::inverse_map(tr)) throw ValidationError(name + ": transition is not an isomorphism");
  AlgebraMap from1 = qalg::compose(tr, L1.map);
  auto type = [](const Tuple& t) {
    bool has0 = false, has1 = false;
    for (auto a : t) (a ? has1 : has0) = true;
    return has0 && has1 ? 2 : (has1 ? 1 : 0);
  };
  auto algebra = [&](const Tuple& t) -> AlgPtr {
    int k = type(t);
    return k == 0 ? A0 : (k == 1 ? A1 : U.alg);
  };
  auto restrict = [&](const Tuple& sigma, const Tuple& tau, const OrdinalMap&) {
    int a = type(sigma), b = type(tau);
    if (a == b) return AlgebraMap::identity(algebra(tau));
    if (b != 2) throw ValidationError("glued: restriction between unrelated charts");  // unreachable
    return a == 0 ? U.map : from1;
  };
  auto X = tuple_nerve(std::move(name), labels, top, algebra, restrict);
  using Kind = CoverCertificate::Kind;
  for (int k = 0; k <= 1; ++k) {
    auto c = CoverCertificate::of(Kind::zariski);
    for (const auto& t : chart_tuples(2, 1)) {
      if (t[0] == t[1])
        c.elements.push_back("1");
      else
        c.elements.push_back(t[k] == 0 ? A0->str(f0) : A1->str(f1));
    }
    X.certificates[{1, k}] = c;
  }
  return X;
}

/// The projective line from the charts Q[s] and Q[t], st = 1 on the overlap; s has weight 1.
inline AffHypergroupoid P1(int top = 3, bool swap = false) {
  auto S = FPAlgebra::make({"s"}, {}, {1});
  auto T = FPAlgebra::make({"t"}, {}, {-1});
  AffHypergroupoid X = swap ? glued_two_charts(T, T->var(0), S, S->var(0), {"s", "t"}, top, {"t", "s"}, "s", "P1")
                            : glued_two_charts(S, S->var(0), T, T->var(0), {"t", "s"}, top, {"s", "t"}, "t", "P1");
  using Kind = CoverCertificate::Kind;
  auto c0 = CoverCertificate::of(Kind::smooth);
  for (std::size_t c = 0; c < 2; ++c) {
    CoverCertificate::Smooth sm;
    sm.coords = {X.levels[0].comps[c]->names()[0]};
    sm.section = {"0"};
    c0.smooth.push_back(sm);
  }
  c0.note = "each chart is an affine line over the point";
  X.certificates[{0, 0}] = c0;
  return X;
}

namespace detail {

/// Half the total variation of (0, e_1, ..., e_n, 0) with e_i = a_i - b_i.
inline long bgm_filtration(const Mono& m) {
  long prev = 0, tv = 0;
  for (std::size_t i = 0; i + 1 < m.size(); i += 2) {
    long e = long(m[i]) - long(m[i + 1]);
    tv += std::labs(e - prev);
    prev = e;
  }
  tv += std::labs(prev);
  return tv / 2;
}

}  // namespace detail

/**
 * Nerve of the multiplicative group: level n is Q[u_i, v_i]/(u_i v_i - 1)
 * for i = 1..n, with weight 0 everywhere. Windows bound the filtration by
 * word length instead of a grading.
 */
inline AffHypergroupoid BGm(int top = 3) {
  if (top < 0) throw ArgumentError("BGm: negative top level");
  AffHypergroupoid X;
  X.name = "BGm";
  X.coskeletal_above = 2;
  X.levels.resize(top + 1);
  X.face.resize(top + 1);
  X.degen.resize(top + 1);
  std::vector<AlgPtr> lv;
  for (int n = 0; n <= top; ++n) {
    std::vector<std::string> names;
    std::vector<std::string> rels;
    for (int i = 1; i <= n; ++i) {
      names.push_back("u" + std::to_string(i));
      names.push_back("v" + std::to_string(i));
      rels.push_back("u" + std::to_string(i) + "*v" + std::to_string(i) + " - 1");
    }
    lv.push_back(FPAlgebra::parse(names, rels));
    X.levels[n].add("*", lv.back());
  }
  // pullback along an operator, given where each coordinate g_j of the target goes
  auto make = [&](int from, int to, const std::function<std::vector<int>(int)>& span) {
    const auto& src = lv[to];
    const auto& dst = lv[from];
    std::vector<Poly> imgs;
    for (int j = 1; j <= to; ++j) {
      Poly u = dst->constant(1), v = dst->constant(1);
      for (int p : span(j)) {
        u = u * dst->var(2 * (p - 1));
        v = v * dst->var(2 * (p - 1) + 1);
      }
      imgs.push_back(u);
      imgs.push_back(v);
    }
    SchemeMap m;
    m.comp = {0};
    m.pullback = {AlgebraMap(src, dst, imgs)};
    return m;
  };
  for (int n = 1; n <= top; ++n)
    for (int i = 0; i <= n; ++i)
      X.face[n].push_back(make(n, n - 1, [&](int j) -> std::vector<int> {
        if (i == 0) return {j + 1};
        if (i == n || j < i) return {j};
        if (j == i) return {i, i + 1};
        return {j + 1};
      }));
  for (int n = 0; n < top; ++n)
    for (int i = 0; i <= n; ++i)
      X.degen[n].push_back(make(n, n + 1, [&](int j) -> std::vector<int> {
        if (j <= i) return {j};
        if (j == i + 1) return {};
        return {j - 1};
      }));
  X.filtration = [](int, std::size_t, const Mono& m) { return detail::bgm_filtration(m); };
  X.level_degree_cap = [](int n, long P) { return int(n * P); };

  using Kind = CoverCertificate::Kind;
  X.certificates[{0, 0}] = CoverCertificate::of(Kind::iso);
  for (int k = 0; k <= 1; ++k) {
    auto c = CoverCertificate::of(Kind::smooth);
    CoverCertificate::Smooth sm;
    sm.coords = {"u1", "v1"};
    sm.equations = {"u1*v1 - 1"};
    sm.minor = {"v1"};
    sm.witness = "v1";
    sm.section = {"1", "1"};
    c.smooth.push_back(sm);
    c.note = "the group is smooth over the point with the identity as a section";
    X.certificates[{1, k}] = c;
  }
  // a commutative group acts trivially on its Lie algebra
  X.cotangent_gluing[1] = {{{"1"}}};
  return X;
}

/// Spec A as a constant simplicial scheme. No certificate is attached:
/// whether Spec A covers the point is for the caller to witness.
inline AffHypergroupoid affine(const AlgPtr& A, int top = 3) { return constant_scheme(A, top, "affine"); }

}  // namespace hypergpd::hypaff
