#pragma once

#include <map>
#include <string>
#include <vector>

#include "hypergpd/core/matrix.hpp"
#include "hypergpd/qalg/algebra.hpp"

namespace hypergpd::qalg {

using Vec = std::vector<Poly>;  // element of A^r

/**
 * Cokernel of a relation list in A^r. Membership and normal forms run through
 * the square-zero extension A[e_1..e_r]/(e_i e_j): the ideal generated there
 * by the relations is exactly their A-span inside A^r.
 */
struct FPModule {
  AlgPtr ring;
  std::size_t ngens = 0;
  std::vector<Vec> relations;
  std::vector<int> gen_weights;
  std::vector<std::string> gen_names;

  FPModule() = default;
  FPModule(AlgPtr a, std::size_t r, std::vector<Vec> rels = {}, std::vector<int> w = {},
           std::vector<std::string> names = {})
      : ring(std::move(a)), ngens(r), relations(std::move(rels)), gen_weights(std::move(w)),
        gen_names(std::move(names)) {
    if (gen_weights.empty()) gen_weights.assign(ngens, 0);
    if (gen_names.empty())
      for (std::size_t j = 0; j < ngens; ++j) gen_names.push_back("e" + std::to_string(j + 1));
    if (gen_weights.size() != ngens || gen_names.size() != ngens)
      throw ValidationError("module: one weight and name per generator");
    for (auto& rel : relations) {
      if (rel.size() != ngens) throw ValidationError("module: relation of the wrong length");
      for (auto& p : rel) {
        if (p.nvars() != ring->nvars()) throw ValidationError("module: relation entry in the wrong ring");
        p = ring->nf(p);
      }
    }
  }

  Vec zero() const { return Vec(ngens, Poly(ring->nvars())); }
  Vec basis(std::size_t j) const {
    Vec v = zero();
    v[j] = ring->constant(1);
    return v;
  }

  /// Canonical representative of the class of v.
  Vec nf(const Vec& v) const {
    const auto& gb = ext_gb();
    std::size_t n = ring->nvars();
    Poly p = embed(v);
    Poly r = gb.normal_form(p);
    Vec out = zero();
    for (const auto& [m, c] : r.terms()) {
      std::size_t j = 0;
      while (j < ngens && m[n + j] == 0) ++j;
      if (j == ngens) throw ValidationError("module normal form left the module");  // unreachable for valid input
      Mono mm(m.begin(), m.begin() + long(n));
      out[j].add_term(mm, c);
    }
    return out;
  }
  bool is_zero_element(const Vec& v) const {
    for (const auto& p : nf(v))
      if (!p.is_zero()) return false;
    return true;
  }
  bool is_zero() const {
    for (std::size_t j = 0; j < ngens; ++j)
      if (!is_zero_element(basis(j))) return false;
    return true;
  }

  /// Weight of a homogeneous element (nullopt for zero), ValidationError otherwise.
  std::optional<long> element_weight(const Vec& v) const {
    std::optional<long> w;
    for (std::size_t j = 0; j < ngens; ++j) {
      if (v[j].is_zero()) continue;
      auto wj = v[j].homogeneous_weight(ring->weights());
      if (!wj || (w && *w != *wj + gen_weights[j])) return std::nullopt;
      w = *wj + gen_weights[j];
    }
    return w;
  }

 private:
  Poly embed(const Vec& v) const {
    std::size_t n = ring->nvars(), N = n + ngens;
    Poly p(N);
    for (std::size_t j = 0; j < ngens; ++j) p = p + v[j].embedded(N) * Poly::var(N, n + j);
    return p;
  }
  const GroebnerBasis& ext_gb() const {
    if (!gb_) {
      std::size_t n = ring->nvars(), N = n + ngens;
      std::vector<Poly> gens;
      for (const auto& r : ring->relations()) gens.push_back(r.embedded(N));
      for (std::size_t i = 0; i < ngens; ++i)
        for (std::size_t j = i; j < ngens; ++j) gens.push_back(Poly::var(N, n + i) * Poly::var(N, n + j));
      for (const auto& rel : relations) gens.push_back(embed(rel));
      gb_ = std::make_shared<GroebnerBasis>(groebner_basis(gens, N));
    }
    return *gb_;
  }
  mutable std::shared_ptr<GroebnerBasis> gb_;
};

inline FPModule free_module(const AlgPtr& a, std::size_t r, std::vector<int> weights = {}) {
  return FPModule(a, r, {}, std::move(weights));
}

/// Omega_{A/R} for phi : R -> A, on generators dx_i with the Jacobian relations.
inline FPModule kaehler(const AlgebraMap& phi) {
  const auto& A = phi.dst;
  std::size_t n = A->nvars();
  std::vector<Vec> rels;
  auto jac = [&](const Poly& f) {
    Vec v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(A->nf(f.derivative(i)));
    return v;
  };
  for (const auto& r : A->relations()) rels.push_back(jac(r));
  for (const auto& img : phi.images) rels.push_back(jac(img));
  std::vector<std::string> names;
  for (const auto& x : A->names()) names.push_back("d" + x);
  return FPModule(A, n, rels, A->weights(), names);
}

inline FPModule kaehler(const AlgPtr& A) { return kaehler(AlgebraMap::from_ground(A)); }

/// Exponent vectors of total degree <= max_degree not divisible by any leading monomial.
inline std::vector<Mono> standard_monomials_upto(const AlgPtr& A, int max_degree) {
  std::vector<Mono> out;
  std::size_t n = A->nvars();
  if (A->is_zero_ring()) return out;
  const auto& leads = A->gb().lead;
  Mono m(n, 0);
  auto reducible = [&]() {
    for (const auto& l : leads)
      if (divides(l, m)) return true;
    return false;
  };
  auto rec = [&](auto&& self, std::size_t i, int budget) -> void {
    if (i == n) {
      out.push_back(m);
      return;
    }
    for (int e = 0; e <= budget; ++e) {
      m[i] = e;
      if (reducible()) break;
      self(self, i + 1, budget - e);
    }
    m[i] = 0;
  };
  rec(rec, 0, max_degree);
  return out;
}

/**
 * Standard monomials of the given weight. Finiteness is detected, not
 * assumed: a hit at total degree max_degree raises WindowOverflow.
 */
inline std::vector<Mono> standard_monomials(const AlgPtr& A, long weight, int max_degree = 32) {
  std::vector<Mono> out;
  for (const auto& m : standard_monomials_upto(A, max_degree)) {
    long w = 0;
    for (std::size_t i = 0; i < m.size(); ++i) w += long(m[i]) * A->weights()[i];
    if (w != weight) continue;
    if (total_degree(m) == max_degree)
      throw WindowOverflow("weight " + std::to_string(weight) + " of " + A->str() +
                           " is not finite-dimensional up to degree " + std::to_string(max_degree));
    out.push_back(m);
  }
  return out;
}

/// One weight of a graded module: basis of the ambient free slice and the relation span.
struct WeightSlice {
  long weight = 0;
  std::vector<std::pair<std::size_t, Mono>> ambient;  // (generator, standard monomial)
  Matrix<Rational> relations;                          // ambient x (spanning relations)
  std::size_t dim = 0;

  /// Coordinates of a homogeneous element already in normal form for the ring.
  Matrix<Rational> coordinates(const Vec& v) const {
    std::map<std::pair<std::size_t, Mono>, std::size_t> idx;
    for (std::size_t i = 0; i < ambient.size(); ++i) idx[ambient[i]] = i;
    Matrix<Rational> c(ambient.size(), 1);
    for (std::size_t j = 0; j < v.size(); ++j)
      for (const auto& [m, a] : v[j].terms()) {
        auto it = idx.find({j, m});
        if (it == idx.end())
          throw WindowOverflow("element leaves weight " + std::to_string(weight) + " of the window");
        c(it->second, 0) = a;
      }
    return c;
  }
};

struct GradedWindow {
  long lo = 0, hi = 0;
  std::vector<WeightSlice> slices;
  std::size_t total_dim() const {
    std::size_t s = 0;
    for (const auto& w : slices) s += w.dim;
    return s;
  }
};

inline WeightSlice weight_slice(const FPModule& M, long w, int max_degree = 32) {
  const auto& A = M.ring;
  WeightSlice s;
  s.weight = w;
  for (std::size_t j = 0; j < M.ngens; ++j)
    for (auto& m : standard_monomials(A, w - M.gen_weights[j], max_degree)) s.ambient.emplace_back(j, m);
  s.relations = Matrix<Rational>(s.ambient.size(), 0);
  for (std::size_t k = 0; k < M.relations.size(); ++k) {
    const auto& rel = M.relations[k];
    auto wr = M.element_weight(rel);
    bool nonzero = false;
    for (const auto& p : rel) nonzero = nonzero || !p.is_zero();
    if (!nonzero) continue;
    if (!wr) throw ValidationError("graded_window: relation " + std::to_string(k) + " is not homogeneous");
    for (const auto& u : standard_monomials(A, w - *wr, max_degree)) {
      Vec v;
      for (const auto& p : rel) v.push_back(A->nf(p.times_mono(u, 1)));
      s.relations = hstack(s.relations, s.coordinates(v));
    }
  }
  s.dim = s.ambient.size() - (s.relations.cols() ? rank_of(s.relations) : 0);
  return s;
}

/// Finite slices of a graded module for every weight in [lo, hi].
inline GradedWindow graded_window(const FPModule& M, long lo, long hi, int max_degree = 32) {
  if (hi < lo) throw ArgumentError("graded_window: empty window");
  for (const auto& r : M.ring->relations())
    if (!r.homogeneous_weight(M.ring->weights()))
      throw ValidationError("graded_window: ring relation " + M.ring->str(r) + " is not homogeneous");
  GradedWindow g;
  g.lo = lo;
  g.hi = hi;
  for (long w = lo; w <= hi; ++w) g.slices.push_back(weight_slice(M, w, max_degree));
  return g;
}

inline GradedWindow graded_window(const AlgPtr& A, long lo, long hi, int max_degree = 32) {
  return graded_window(free_module(A, 1), lo, hi, max_degree);
}

}  // namespace hypergpd::qalg
