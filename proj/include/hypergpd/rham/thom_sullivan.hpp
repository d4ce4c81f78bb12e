#pragma once

#include <string>
#include <vector>

#include "hypergpd/dkab/dga.hpp"
#include "hypergpd/dkab/simplicial_module.hpp"
#include "hypergpd/rham/forms.hpp"

namespace hypergpd::rham {

/// x = sum over i and a of e_{i,a} (x) part[i][a], with e_{i,a} a basis of B_i and part[i][a] in Omega_n^i.
struct TSElement {
  int n = 0;
  std::vector<std::vector<PolyForm>> part;
};

/**
 * The weight <= W slice of T(B)_n: the x in the sum of B_i (x) F_W Omega_n^i
 * with (1 (x) d)x_i = (d (x) 1)x_{i+1}. Ambient coordinate of (i, a, f) is
 * offset[i] + a * |omega_basis[i]| + f.
 */
struct TSLevel {
  int n = 0, W = 0;
  std::vector<std::size_t> brank;                 // rank of B_i, i = 0..n
  std::vector<std::vector<PolyForm>> omega_basis;  // per i
  std::vector<std::size_t> offset;
  std::size_t ambient = 0;
  Matrix<Rational> kernel;  // ambient x dim
  std::vector<TSElement> basis;

  std::size_t dim() const { return kernel.cols(); }

  TSElement element(const Matrix<Rational>& col) const {
    TSElement x{n, {}};
    for (int i = 0; i <= n; ++i) {
      x.part.emplace_back(brank[i], PolyForm(n));
      std::size_t nb = omega_basis[i].size();
      for (std::size_t a = 0; a < brank[i]; ++a)
        for (std::size_t f = 0; f < nb; ++f) {
          const Rational& c = col(offset[i] + a * nb + f, 0);
          if (!hypergpd::is_zero(c)) x.part[i][a] = x.part[i][a] + omega_basis[i][f].scaled(c);
        }
    }
    return x;
  }

  Matrix<Rational> ambient_coords(const TSElement& x) const {
    if (x.n != n) throw ArgumentError("thom-sullivan: element lives on another level");
    Matrix<Rational> col(ambient, 1);
    for (std::size_t i = 0; i < x.part.size(); ++i) {
      if (int(i) > n) break;
      if (x.part[i].size() != brank[i]) throw ArgumentError("thom-sullivan: element has the wrong shape");
      std::size_t nb = omega_basis[i].size();
      for (std::size_t a = 0; a < brank[i]; ++a) {
        auto c = coordinates(omega_basis[i], x.part[i][a]);
        for (std::size_t f = 0; f < nb; ++f) col(offset[i] + a * nb + f, 0) = c(f, 0);
      }
    }
    return col;
  }

  /// Coordinates in `basis`; ValidationError if x violates the matching condition.
  Matrix<Rational> coords(const TSElement& x) const { return solve_exact(kernel, ambient_coords(x)); }
};

namespace detail {

inline std::size_t chain_rank(const dkab::ChainComplex<Rational>& B, int i) { return B.rank_at(i); }

inline void check_chain_input(const dkab::ChainComplex<Rational>& B, int n) {
  if (B.lo < 0) throw ArgumentError("thom-sullivan: B has negative degrees");
  if (B.open_above && n > B.hi())
    throw ArgumentError("thom-sullivan: B is only known up to degree " + std::to_string(B.hi()) + ", level " +
                        std::to_string(n) + " needs degree " + std::to_string(n));
}

}  // namespace detail

inline TSLevel thom_sullivan_level(const dkab::ChainComplex<Rational>& B, int n, int W) {
  if (n < 0 || W < 0) throw ArgumentError("thom-sullivan: negative level or weight bound");
  detail::check_chain_input(B, n);
  TSLevel L;
  L.n = n;
  L.W = W;
  for (int i = 0; i <= n; ++i) {
    L.brank.push_back(detail::chain_rank(B, i));
    L.omega_basis.push_back(filtered_basis(n, i, W));
    L.offset.push_back(L.ambient);
    L.ambient += L.brank[i] * L.omega_basis[i].size();
  }
  // one block of conditions per i < n, valued in B_i (x) F_W Omega^{i+1}
  std::size_t rows = 0;
  std::vector<std::size_t> roff;
  for (int i = 0; i < n; ++i) {
    roff.push_back(rows);
    rows += L.brank[i] * L.omega_basis[i + 1].size();
  }
  Matrix<Rational> cond(rows, L.ambient);
  for (int i = 0; i < n; ++i) {
    std::size_t nb = L.omega_basis[i].size(), nb1 = L.omega_basis[i + 1].size();
    std::vector<Matrix<Rational>> dcol;
    for (const auto& f : L.omega_basis[i]) dcol.push_back(coordinates(L.omega_basis[i + 1], f.d()));
    for (std::size_t a = 0; a < L.brank[i]; ++a)
      for (std::size_t f = 0; f < nb; ++f)
        for (std::size_t g = 0; g < nb1; ++g)
          if (!hypergpd::is_zero(dcol[f](g, 0))) cond(roff[i] + a * nb1 + g, L.offset[i] + a * nb + f) += dcol[f](g, 0);
    Matrix<Rational> dB = B.diff(i + 1);  // B_{i+1} -> B_i
    for (std::size_t a = 0; a < L.brank[i]; ++a)
      for (std::size_t b = 0; b < L.brank[i + 1]; ++b) {
        if (hypergpd::is_zero(dB(a, b))) continue;
        for (std::size_t g = 0; g < nb1; ++g) cond(roff[i] + a * nb1 + g, L.offset[i + 1] + b * nb1 + g) -= dB(a, b);
      }
  }
  L.kernel = rows ? kernel_basis(cond) : Matrix<Rational>::identity(L.ambient);
  for (std::size_t c = 0; c < L.kernel.cols(); ++c) {
    Matrix<Rational> col(L.ambient, 1);
    for (std::size_t r = 0; r < L.ambient; ++r) col(r, 0) = L.kernel(r, c);
    L.basis.push_back(L.element(col));
  }
  return L;
}

/// theta^* acting on the Omega factor.
inline TSElement ts_pullback(const TSElement& x, const OrdinalMap& theta) {
  if (theta.dst != x.n) throw ArgumentError("thom-sullivan: operator does not start at this level");
  TSElement y{theta.src, {}};
  for (std::size_t i = 0; i < x.part.size() && int(i) <= theta.src; ++i) {
    y.part.emplace_back();
    for (const auto& f : x.part[i]) y.part.back().push_back(f.pullback(theta));
  }
  return y;
}

/// Matrix of theta^* : T(B)_n -> T(B)_m in the level bases.
inline Matrix<Rational> ts_operator(const TSLevel& from, const TSLevel& to, const OrdinalMap& theta) {
  Matrix<Rational> m(to.dim(), from.dim());
  for (std::size_t c = 0; c < from.dim(); ++c) {
    auto col = to.coords(ts_pullback(from.basis[c], theta));
    for (std::size_t r = 0; r < to.dim(); ++r) m(r, c) = col(r, 0);
  }
  return m;
}

/// Levels 0..N of the weight <= W slice of T(B) as a simplicial vector space.
inline dkab::SimplicialModule<Rational> thom_sullivan(const dkab::ChainComplex<Rational>& B, int N, int W) {
  std::vector<TSLevel> L;
  for (int n = 0; n <= N; ++n) L.push_back(thom_sullivan_level(B, n, W));
  dkab::SimplicialModule<Rational> A;
  for (int n = 0; n <= N; ++n) {
    A.ranks.push_back(L[n].dim());
    A.face.emplace_back();
    A.degen.emplace_back();
    for (int i = 0; n > 0 && i <= n; ++i) A.face[n].push_back(ts_operator(L[n], L[n - 1], OrdinalMap::coface(n, i)));
  }
  for (int n = 0; n < N; ++n)
    for (int i = 0; i <= n; ++i) A.degen[n].push_back(ts_operator(L[n], L[n + 1], OrdinalMap::codegeneracy(n, i)));
  return A;
}

/// The underlying chain complex of a chain dg algebra.
inline dkab::ChainComplex<Rational> underlying_complex(const dkab::DGAlgebra<Rational>& B) {
  if (B.direction != -1) throw ArgumentError("thom-sullivan: expects a chain dg algebra (differential of degree -1)");
  auto C = dkab::make_complex<Rational>(0, B.ranks);
  for (int k = 1; k <= B.top(); ++k) C.d[k] = B.diff(k);
  return C;
}

inline TSLevel thom_sullivan_level(const dkab::DGAlgebra<Rational>& B, int n, int W) {
  return thom_sullivan_level(underlying_complex(B), n, W);
}

/**
 * Componentwise product (b (x) w)(b' (x) w') = bb' (x) w w'. With the matching
 * condition written without Koszul signs this is the product that preserves it.
 */
inline TSElement ts_product(const dkab::DGAlgebra<Rational>& B, const TSElement& x, const TSElement& y) {
  if (x.n != y.n) throw ArgumentError("thom-sullivan: product of elements on different levels");
  int n = x.n;
  TSElement z{n, {}};
  for (int k = 0; k <= n; ++k) z.part.emplace_back(B.rank_at(k), PolyForm(n));
  for (std::size_t i = 0; i < x.part.size(); ++i)
    for (std::size_t j = 0; j < y.part.size(); ++j) {
      int k = int(i + j);
      if (k > n || k > B.top()) continue;
      for (std::size_t a = 0; a < x.part[i].size(); ++a) {
        if (x.part[i][a].is_zero()) continue;
        for (std::size_t b = 0; b < y.part[j].size(); ++b) {
          if (y.part[j][b].is_zero()) continue;
          PolyForm w = x.part[i][a] * y.part[j][b];
          if (w.is_zero()) continue;
          auto bb = B.product(int(i), dkab::DGAlgebra<Rational>::basis_vector(B.ranks[i], a), int(j),
                              dkab::DGAlgebra<Rational>::basis_vector(B.ranks[j], b));
          for (std::size_t c = 0; c < bb.rows(); ++c)
            if (!hypergpd::is_zero(bb(c, 0))) z.part[k][c] = z.part[k][c] + w.scaled(bb(c, 0));
        }
      }
    }
  return z;
}

struct DequivRow {
  long weight = 0;
  std::vector<std::size_t> pi_A, pi_T;  // degrees 0..levels-1
  bool equal = false;
};

struct DequivReport {
  int omega_bound = 0;
  std::vector<DequivRow> rows;
  bool ok() const {
    for (const auto& r : rows)
      if (!r.equal) return false;
    return true;
  }
};

/**
 * pi_* of each weight slice of A against pi_* of T(N A) with Omega cut at
 * the given weight. Slices must share one top level; degrees below it are
 * compared.
 */
inline DequivReport dequiv_check(const std::vector<dkab::SimplicialModule<Rational>>& slices, int omega_bound,
                                 long first_weight = 0) {
  DequivReport r;
  r.omega_bound = omega_bound;
  for (std::size_t s = 0; s < slices.size(); ++s) {
    const auto& A = slices[s];
    A.validate();
    int N = A.top();
    if (N < 1) throw InsufficientData("dequiv: homotopy groups need at least two levels");
    DequivRow row;
    row.weight = first_weight + long(s);
    row.pi_A = dkab::homotopy_groups(A).ranks();
    auto NA = dkab::normalize(A).complex;
    row.pi_T = dkab::homotopy_groups(thom_sullivan(NA, N, omega_bound)).ranks();
    row.pi_A.resize(std::size_t(N), 0);
    row.pi_T.resize(std::size_t(N), 0);
    row.equal = row.pi_A == row.pi_T;
    r.rows.push_back(std::move(row));
  }
  return r;
}

}  // namespace hypergpd::rham
