#include <gtest/gtest.h>

#include <random>

#include "hypergpd/dkab/simplicial_module.hpp"
#include "hypergpd/qalg/poly.hpp"
#include "hypergpd/rham/integration.hpp"
#include "hypergpd/rham/thom_sullivan.hpp"
#include "hypergpd/simpset/sset.hpp"

using namespace hypergpd;
using namespace hypergpd::rham;

namespace {

PolyForm F(int n, const std::string& s) { return PolyForm::parse(n, s); }

/*
 * Iterated integration over {t_i >= 0, t_1 + ... + t_n <= 1}: integrate t_n
 * from 0 to 1 - (t_1 + ... + t_{n-1}), then t_{n-1}, and so on, by
 * antidifferentiating and substituting the upper limit.
 */
Rational iterated_integral(const PolyForm& w) {
  int n = w.dim();
  std::size_t nv = std::size_t(n);
  qalg::Poly p(nv);
  unsigned full = n ? (1u << n) - 1 : 0;
  for (const auto& [k, c] : w.terms()) {
    EXPECT_EQ(k.second, full);
    p = p + qalg::Poly::monomial(k.first, c);
  }
  for (int v = n - 1; v >= 0; --v) {
    qalg::Poly anti(nv);
    for (const auto& [m, c] : p.terms()) {
      auto e = m;
      ++e[v];
      anti = anti + qalg::Poly::monomial(e, c / Rational(e[v]));
    }
    std::vector<qalg::Poly> img;
    for (int j = 0; j < n; ++j) img.push_back(qalg::Poly::var(nv, j));
    qalg::Poly upper = qalg::Poly::constant(nv, 1);
    for (int j = 0; j < v; ++j) upper = upper - qalg::Poly::var(nv, j);
    img[v] = upper;
    p = anti.substitute(img, nv);  // the lower limit t_v = 0 contributes nothing
  }
  Rational r = 0;
  for (const auto& [m, c] : p.terms()) r += c;
  return r;
}

int element_weight(const TSElement& x) {
  int w = 0;
  for (const auto& row : x.part)
    for (const auto& f : row) w = std::max(w, f.weight());
  return w;
}

/// Q[x, e]/(x^3) with |x| = 0, |e| = 1, de = x, truncated above degree 1.
dkab::DGAlgebra<Rational> koszul_like() {
  dkab::DGAlgebra<Rational> B;
  B.direction = -1;
  B.ranks = {3, 2};  // 1, x, x^2 | e, xe
  B.d.resize(2);
  B.d[0] = Matrix<Rational>(0, 3);
  B.d[1] = Matrix<Rational>(3, 2);
  B.d[1](1, 0) = 1;  // e -> x
  B.d[1](2, 1) = 1;  // xe -> x^2
  Matrix<Rational> m00(3, 9);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; a + b < 3; ++b) m00(a + b, a * 3 + b) = 1;
  Matrix<Rational> m01(2, 6), m10(2, 6);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; a + b < 2; ++b) {
      m01(a + b, a * 2 + b) = 1;  // x^a * x^b e
      m10(a + b, b * 3 + a) = 1;  // x^b e * x^a
    }
  B.mult[{0, 0}] = m00;
  B.mult[{0, 1}] = m01;
  B.mult[{1, 0}] = m10;
  B.unit = Matrix<Rational>(3, 1);
  B.unit(0, 0) = 1;
  return B;
}

dkab::DGAlgebra<Rational> truncated_polynomial(int k) {
  dkab::DGAlgebra<Rational> B;
  B.direction = -1;
  B.ranks = {std::size_t(k)};
  B.d = {Matrix<Rational>(0, std::size_t(k))};
  Matrix<Rational> m(std::size_t(k), std::size_t(k * k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; a + b < k; ++b) m(a + b, a * k + b) = 1;
  B.mult[{0, 0}] = m;
  B.unit = Matrix<Rational>(std::size_t(k), 1);
  B.unit(0, 0) = 1;
  return B;
}

std::size_t binom(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * std::size_t(n - k + i) / std::size_t(i);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// forms

TEST(Forms, LeibnizOnProduct) {
  EXPECT_EQ(F(2, "t1*t2").d(), F(2, "t2*dt1 + t1*dt2"));
  EXPECT_EQ((F(2, "t1") * F(2, "t2")).d(), F(2, "t1").d() * F(2, "t2") + F(2, "t1") * F(2, "t2").d());
}

TEST(Forms, WedgeIsAlternating) {
  EXPECT_EQ(F(2, "dt1^dt2"), F(2, "dt2^dt1").scaled(-1));
  EXPECT_TRUE((F(2, "dt1") * F(2, "dt1")).is_zero());
  EXPECT_EQ(F(2, "dt0"), F(2, "-dt1 - dt2"));
  EXPECT_EQ(F(2, "t0"), F(2, "1 - t1 - t2"));
}

TEST(Forms, DimensionMismatchIsAnArgumentError) {
  EXPECT_THROW(F(1, "t1") + F(2, "t1"), ArgumentError);
  EXPECT_THROW(F(1, "t1") * F(2, "t1"), ArgumentError);
}

TEST(Forms, ParseAndPrintRoundTrip) {
  auto f = F(2, "1/2*t1^2*dt1^dt2 - 3*t2*dt1^dt2");
  EXPECT_EQ(f.str(), "-3*t2*dt1^dt2 + 1/2*t1^2*dt1^dt2");
  EXPECT_EQ(F(2, f.str()), f);
  try {
    F(2, "t1 + t3");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 7u);
  }
  EXPECT_THROW(F(1, "t1 t1"), ParseError);
}

// Coordinate definition: on Delta^1 with vertices 1,2 of Delta^2, t_1 |-> t'_0 = 1 - t'_1.
TEST(Forms, FaceRestrictionBySubstitution) {
  EXPECT_EQ(F(2, "t1").face(0), F(1, "1 - t1"));
  EXPECT_EQ(F(2, "t1").face(1), PolyForm(1));
  EXPECT_EQ(F(2, "t1").face(2), F(1, "t1"));
  EXPECT_EQ(F(2, "t2").face(0), F(1, "t1"));
  EXPECT_EQ(F(2, "dt1^dt2").face(0), PolyForm(1));
  EXPECT_EQ(F(1, "t1").degeneracy(0), F(2, "t2"));
  EXPECT_EQ(F(1, "t1").degeneracy(1), F(2, "t1 + t2"));
}

TEST(Forms, SimplicialIdentitiesOnBasis) {
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= n; ++k)
      for (const auto& f : filtered_basis(n, k, 3)) {
        for (int j = 1; n >= 2 && j <= n; ++j)
          for (int i = 0; i < j; ++i) EXPECT_EQ(f.face(j).face(i), f.face(i).face(j - 1));
        for (int i = 0; i <= n; ++i) {
          EXPECT_EQ(f.degeneracy(i).face(i), f);
          EXPECT_EQ(f.degeneracy(i).face(i + 1), f);
        }
      }
}

TEST(Forms, DSquaredIsZeroAndFiltrationPreserved) {
  for (int n = 0; n <= 3; ++n)
    for (int k = 0; k <= n; ++k)
      for (const auto& f : filtered_basis(n, k, 5)) {
        EXPECT_TRUE(f.d().d().is_zero()) << f.str();
        EXPECT_LE(f.d().weight(), f.weight());
        for (int i = 0; n > 0 && i <= n; ++i) EXPECT_LE(f.face(i).weight(), f.weight());
        for (int i = 0; i <= n; ++i) EXPECT_LE(f.degeneracy(i).weight(), f.weight());
      }
}

TEST(Forms, ProductIsGradedCommutativeAndAssociative) {
  for (int n = 1; n <= 3; ++n) {
    std::vector<PolyForm> all;
    for (int k = 0; k <= n; ++k)
      for (auto& f : filtered_basis(n, k, 2)) all.push_back(f);
    for (const auto& a : all)
      for (const auto& b : all) {
        int s = a.degree() * b.degree() % 2 ? -1 : 1;
        EXPECT_EQ(a * b, (b * a).scaled(s));
        if (a.weight() + b.weight() > 4) continue;
        for (const auto& c : all)
          if (a.weight() + b.weight() + c.weight() <= 4) {
            EXPECT_EQ((a * b) * c, a * (b * c));
          }
      }
  }
}

TEST(Forms, WeightwiseCohomologyIsTheConstants) {
  for (int n = 0; n <= 3; ++n)
    for (int W = 0; W <= 4; ++W) {
      auto h = dkab::cohomology_dims(omega_complex(n, W));
      std::vector<std::size_t> want(std::size_t(n + 1), 0);
      want[0] = 1;
      EXPECT_EQ(h, want) << "n=" << n << " W=" << W;
    }
}

// ---------------------------------------------------------------------------
// integration

TEST(Integration, KnownValues) {
  EXPECT_EQ(simplex_integral(F(1, "t1*dt1")), Rational(1, 2));
  EXPECT_EQ(simplex_integral(F(2, "dt1^dt2")), Rational(1, 2));
  EXPECT_EQ(simplex_integral(F(2, "t1*t2*dt1^dt2")), Rational(1, 24));
  EXPECT_EQ(simplex_integral(F(2, "dt2^dt1")), Rational(-1, 2));
  EXPECT_EQ(simplex_integral(F(0, "3")), Rational(3));
  EXPECT_THROW(simplex_integral(F(2, "dt1")), ArgumentError);
}

TEST(Integration, ClosedFormMatchesIteratedIntegration) {
  for (int n = 1; n <= 3; ++n)
    for (int w = n; w <= n + 4; ++w)
      for (const auto& f : monomial_forms(n, n, w)) EXPECT_EQ(simplex_integral(f), iterated_integral(f)) << f.str();
  EXPECT_EQ(iterated_integral(F(2, "t1*t2*dt1^dt2")), Rational(1, 24));
}

TEST(Integration, StokesForAllMonomialsUpToWeightFive) {
  for (int n = 1; n <= 3; ++n)
    for (int w = 0; w <= 5; ++w)
      for (const auto& f : monomial_forms(n, n - 1, w)) EXPECT_TRUE(stokes_holds(f)) << n << ": " << f.str();
}

TEST(Integration, EdgeOfTheLine) {
  auto r = integration_map_check(1, {F(1, "t1")});
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.samples[0].cochain.size(), 2u);
  EXPECT_EQ(r.samples[0].cochain[0], 0);  // vertex 0
  EXPECT_EQ(r.samples[0].cochain[1], 1);  // vertex 1
  EXPECT_EQ(simplex_integral(F(1, "t1").d()), r.samples[0].cochain[1] - r.samples[0].cochain[0]);
}

TEST(Integration, ConstantsTakeOneValueOnAllVertices) {
  auto r = integration_map_check(3, {F(3, "5")});
  ASSERT_TRUE(r.ok());
  for (const auto& v : r.samples[0].cochain) EXPECT_EQ(v, 5);
}

TEST(Integration, RandomMonomialSamplesPass) {
  std::mt19937 rng(7);
  for (int m = 2; m <= 3; ++m) {
    std::vector<PolyForm> samples;
    for (int s = 0; s < 20; ++s) {
      int k = int(rng() % unsigned(m + 1));
      auto pool = filtered_basis(m, k, 4);
      samples.push_back(pool[rng() % pool.size()].scaled(Rational(int(rng() % 7) - 3, 1 + int(rng() % 3))));
    }
    auto r = integration_map_check(m, samples);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.samples.size(), 20u);
  }
}

// ---------------------------------------------------------------------------
// Thom-Sullivan

TEST(ThomSullivan, GroundFieldGivesTheConstants) {
  auto B = truncated_polynomial(1);
  for (int n = 0; n <= 3; ++n)
    for (int W = 0; W <= 3; ++W) EXPECT_EQ(thom_sullivan_level(B, n, W).dim(), 1u);
}

// Only degree-0 parts and closed 0-forms survive; a monomial t^e has nonzero
// and pairwise independent differentials unless e = 0.
TEST(ThomSullivan, DegreeZeroAlgebraMatchesEnumeration) {
  auto B = truncated_polynomial(3);
  for (int n = 0; n <= 2; ++n) {
    std::size_t closed = 0;
    for (const auto& f : filtered_basis(n, 0, 2)) closed += f.d().is_zero();
    EXPECT_EQ(thom_sullivan_level(B, n, 2).dim(), 3 * closed);
  }
  EXPECT_EQ(thom_sullivan_level(B, 1, 2).dim(), 3u);
}

// x (x) f + e (x) df for f of weight <= W, plus the x^2 and 1 parts.
TEST(ThomSullivan, KoszulLikeLevelDimensions) {
  auto B = koszul_like();
  B.validate();
  for (int n = 0; n <= 2; ++n)
    for (int W = 0; W <= 3; ++W) {
      std::size_t polys = binom(n + W, W);
      EXPECT_EQ(thom_sullivan_level(B, n, W).dim(), 1 + 2 * polys) << n << "," << W;
    }
}

TEST(ThomSullivan, SimplicialIdentitiesHold) {
  auto A = thom_sullivan(underlying_complex(koszul_like()), 2, 2);
  EXPECT_NO_THROW(A.validate());
}

TEST(ThomSullivan, ProductPreservesTheMatchingCondition) {
  auto B = koszul_like();
  for (int n = 1; n <= 2; ++n) {
    auto L = thom_sullivan_level(B, n, 4);
    std::vector<TSElement> small;
    for (const auto& x : L.basis)
      if (element_weight(x) <= 2) small.push_back(x);
    ASSERT_FALSE(small.empty());
    for (const auto& x : small)
      for (const auto& y : small) {
        auto xy = ts_product(B, x, y);
        EXPECT_NO_THROW(L.coords(xy));
        EXPECT_EQ(L.ambient_coords(xy), L.ambient_coords(ts_product(B, y, x)));
      }
    for (std::size_t i = 0; i < small.size() && i < 6; ++i)
      for (std::size_t j = 0; j < small.size() && j < 6; ++j)
        for (std::size_t k = 0; k < small.size() && k < 6; ++k) {
          if (element_weight(small[i]) + element_weight(small[j]) + element_weight(small[k]) > 4) continue;
          auto l = ts_product(B, ts_product(B, small[i], small[j]), small[k]);
          auto r = ts_product(B, small[i], ts_product(B, small[j], small[k]));
          EXPECT_EQ(L.ambient_coords(l), L.ambient_coords(r));
        }
  }
}

TEST(ThomSullivan, OpenComplexBeyondItsRangeIsRejected) {
  auto C = dkab::normalize(dkab::constant_module<Rational>(1, 1)).complex;
  EXPECT_THROW(thom_sullivan_level(C, 2, 1), ArgumentError);
  dkab::DGAlgebra<Rational> cochain = truncated_polynomial(1);
  cochain.direction = 1;
  EXPECT_THROW(thom_sullivan_level(cochain, 0, 1), ArgumentError);
}

TEST(ThomSullivan, AcyclicInputHasNoHomotopy) {
  auto A = thom_sullivan(underlying_complex(koszul_like()), 3, 2);
  auto pi = dkab::homotopy_groups(A).ranks();
  EXPECT_EQ(pi, (std::vector<std::size_t>{1, 0, 0}));  // the unit survives
}

// ---------------------------------------------------------------------------
// normalization comparison

TEST(Dequiv, DiscretePolynomialRing) {
  std::vector<dkab::SimplicialModule<Rational>> slices(4, dkab::constant_module<Rational>(1, 3));
  auto r = dequiv_check(slices, 3);
  ASSERT_TRUE(r.ok());
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.pi_A, (std::vector<std::size_t>{1, 0, 0}));
    EXPECT_EQ(row.pi_T, row.pi_A);
  }
}

TEST(Dequiv, GroundField) {
  auto r = dequiv_check({dkab::constant_module<Rational>(1, 2)}, 2);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].pi_T, (std::vector<std::size_t>{1, 0}));
  EXPECT_TRUE(r.ok());
}

TEST(Dequiv, CircleRecoversItsFundamentalClass) {
  using namespace hypergpd::simpset;
  auto S = generate(standard_complex(StandardKind::Boundary(2)), 3);
  auto A = dkab::linearize<Rational>(S);
  auto r = dequiv_check({A}, 2);
  EXPECT_EQ(r.rows[0].pi_A, (std::vector<std::size_t>{1, 1, 0}));
  EXPECT_TRUE(r.ok()) << r.rows[0].pi_T[0] << r.rows[0].pi_T[1] << r.rows[0].pi_T[2];
}

TEST(Dequiv, NeedsTwoLevels) {
  EXPECT_THROW(dequiv_check({dkab::constant_module<Rational>(1, 0)}, 1), InsufficientData);
}
