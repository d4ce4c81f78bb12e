#include <gtest/gtest.h>

#include <random>

#include "hypergpd/simpset/hypergroupoid.hpp"
#include "hypergpd/simpset/matching.hpp"
#include "test_support.hpp"

using namespace hypergpd;
using namespace hypergpd::simpset;

namespace {

// Oracle: try every assignment of nondegenerate simplices and keep the
// compatible ones. Exponential, only for tiny K.
std::size_t brute_force_map_count(const FinSSet& K, const SSet& X) {
  std::vector<std::pair<int, std::size_t>> cells;
  for (int d = 0; d <= K.top_dim(); ++d)
    for (std::size_t i = 0; i < K.count(d); ++i) cells.emplace_back(d, i);
  std::vector<std::size_t> choice(cells.size(), 0);
  std::size_t total = 0;
  for (;;) {
    std::vector<std::vector<std::size_t>> img(K.top_dim() + 1);
    for (int d = 0; d <= K.top_dim(); ++d) img[d].resize(K.count(d));
    for (std::size_t c = 0; c < cells.size(); ++c) img[cells[c].first][cells[c].second] = choice[c];
    bool ok = true;
    for (std::size_t c = 0; c < cells.size() && ok; ++c) {
      auto [d, i] = cells[c];
      const auto& fs = K.simplex(d, i).faces;
      for (std::size_t j = 0; j < fs.size() && ok; ++j) {
        int dd = d - 1 - int(fs[j].deg.size());
        std::size_t z = img[dd][fs[j].target];
        int lvl = dd;
        for (auto it = fs[j].deg.rbegin(); it != fs[j].deg.rend(); ++it) z = X.s(lvl++, *it, z);
        if (X.d(d, int(j), img[d][i]) != z) ok = false;
      }
    }
    if (ok) ++total;
    std::size_t c = 0;
    while (c < cells.size()) {
      if (++choice[c] < X.count[cells[c].first]) break;
      choice[c++] = 0;
    }
    if (c == cells.size()) break;
  }
  return total;
}

TruncatedSSet nerve_t(const Groupoid& G, int N) { return TruncatedSSet::coskeletal(nerve(G, N), 2); }

}  // namespace

TEST(StandardComplex, BoundaryOfTriangle) {
  auto b = standard_complex(StandardKind::Boundary(2));
  EXPECT_EQ(b.count(0), 3u);
  EXPECT_EQ(b.count(1), 3u);
  EXPECT_EQ(b.count(2), 0u);
}

TEST(StandardComplex, HornKeepsFacesZeroAndTwo) {
  auto h = standard_complex(StandardKind::Horn(2, 1));
  EXPECT_EQ(h.count(0), 3u);
  ASSERT_EQ(h.count(1), 2u);
  EXPECT_TRUE(h.find(1, "{1,2}").has_value());  // d_0
  EXPECT_TRUE(h.find(1, "{0,1}").has_value());  // d_2
  EXPECT_FALSE(h.find(1, "{0,2}").has_value());
}

TEST(StandardComplex, SmallHornsAndEmptyCases) {
  auto h = standard_complex(StandardKind::Horn(1, 0));
  EXPECT_EQ(h.top_dim(), 0);
  ASSERT_EQ(h.count(0), 1u);
  EXPECT_EQ(h.simplex(0, 0).id, "{0}");
  EXPECT_TRUE(standard_complex(StandardKind::Horn(0, 0)).empty());
  EXPECT_TRUE(standard_complex(StandardKind::Boundary(0)).empty());
  EXPECT_THROW(standard_complex(StandardKind::Horn(2, 3)), ArgumentError);
  EXPECT_THROW(standard_complex(StandardKind::Delta(-1)), ArgumentError);
}

TEST(StandardComplex, GeneratedLevelsSatisfyIdentities) {
  for (int n = 0; n <= 3; ++n) {
    auto X = generate(standard_complex(StandardKind::Delta(n)), 4);
    EXPECT_NO_THROW(X.validate());
    // Delta^n has C(k+n+1, n) k-simplices (monotone maps [k] -> [n])
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(X.count[k], std::size_t(binomial(k + n + 1, n)));
  }
  auto H = generate(standard_complex(StandardKind::Horn(3, 1)), 4);
  EXPECT_NO_THROW(H.validate());
}

TEST(FinSSet, RejectsBrokenFaceRecords) {
  std::vector<std::vector<NondegSimplex>> lv(2);
  lv[0].push_back({"a", {}, std::nullopt});
  lv[1].push_back({"e", {{{}, 0}, {{}, 5}}, std::nullopt});
  EXPECT_THROW(FinSSet{lv}, ValidationError);
  lv[1][0].faces = {{{0}, 0}, {{}, 0}};  // degenerate target from a vertex is impossible
  EXPECT_THROW(FinSSet{lv}, ValidationError);
}

TEST(FinSSet, RoundTripThroughExplicitLevels) {
  auto G = connected_groupoid(2, FiniteGroup::cyclic(2));
  SSet X = nerve(G, 4);
  FinSSet F = to_finsset(X, 3);
  SSet Y = generate(F, 4);
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(Y.count[n], X.count[n]) << n;
  // the nerve has nondegenerate 4-simplices, which were cut off
  EXPECT_LT(Y.count[4], X.count[4]);
  EXPECT_NO_THROW(Y.validate());
}

TEST(SimplicialMaps, FromPointCountsVertices) {
  auto G = connected_groupoid(3, FiniteGroup::cyclic(2));
  auto X = nerve_t(G, 3);
  EXPECT_EQ(simplicial_maps(standard_complex(StandardKind::Delta(0)), X).size(), 3u);
}

TEST(SimplicialMaps, NerveOfZ2) {
  auto X = nerve_t(connected_groupoid(1, FiniteGroup::cyclic(2)), 3);
  EXPECT_EQ(simplicial_maps(standard_complex(StandardKind::Delta(1)), X).size(), 2u);
  auto horn = standard_complex(StandardKind::Horn(2, 1));
  EXPECT_EQ(simplicial_maps(horn, X).size(), 4u);
  EXPECT_EQ(brute_force_map_count(horn, X.data()), 4u);
}

TEST(SimplicialMaps, AgreeWithBruteForceOnSmallShapes) {
  auto X = nerve_t(connected_groupoid(2, FiniteGroup::cyclic(2)), 3);
  for (auto kind : {StandardKind::Boundary(2), StandardKind::Horn(2, 0), StandardKind::Horn(2, 2),
                    StandardKind::Delta(1), StandardKind::Boundary(1)}) {
    auto K = standard_complex(kind);
    EXPECT_EQ(simplicial_maps(K, X).size(), brute_force_map_count(K, X.data()));
  }
}

TEST(SimplicialMaps, RepresentableCountsMatchLevels) {
  auto X = nerve_t(connected_groupoid(2, FiniteGroup::symmetric3()), 4);
  for (int n = 0; n <= 4; ++n)
    EXPECT_EQ(simplicial_maps(standard_complex(StandardKind::Delta(n)), X).size(), X.data().count[n]);
  auto D1 = TruncatedSSet::from_finsset(standard_complex(StandardKind::Delta(1)), 1);
  for (int n = 0; n <= 4; ++n)
    EXPECT_EQ(simplicial_maps(standard_complex(StandardKind::Delta(n)), D1).size(), std::size_t(n + 2));
}

TEST(SimplicialMaps, TruncatedWithoutFlagFailsLoudly) {
  auto X = TruncatedSSet::stored(nerve(connected_groupoid(1, FiniteGroup::cyclic(2)), 1));
  EXPECT_THROW(simplicial_maps(standard_complex(StandardKind::Delta(2)), X), InsufficientData);
}

TEST(Hypergroupoid, ConstantSetIsZeroDimensional) {
  auto X = TruncatedSSet::coskeletal(constant(3, 3), 0);
  auto r = is_hypergroupoid(X, 0);
  EXPECT_TRUE(r.verdict);
  EXPECT_TRUE(r.failures.empty());
}

TEST(Hypergroupoid, GroupoidNerveIsOneDimensional) {
  auto G = disjoint_union(connected_groupoid(2, FiniteGroup::symmetric3()), connected_groupoid(1, FiniteGroup::cyclic(3)));
  auto X = nerve_t(G, 4);
  EXPECT_TRUE(is_hypergroupoid(X, 1).verdict);
  auto r0 = is_hypergroupoid(X, 0);
  EXPECT_FALSE(r0.verdict);
  EXPECT_TRUE(r0.has_failure(1, 0));
}

TEST(Hypergroupoid, IntervalFailsAtHornTwoZero) {
  auto D1 = TruncatedSSet::from_finsset(standard_complex(StandardKind::Delta(1)), 1);
  for (int n = 0; n <= 3; ++n) {
    auto r = is_hypergroupoid(D1, n);
    EXPECT_FALSE(r.verdict);
    EXPECT_TRUE(r.has_failure(2, 0)) << "n=" << n;
  }
}

TEST(Hypergroupoid, MonotoneInDimension) {
  auto X = nerve_t(connected_groupoid(3, FiniteGroup::cyclic(2)), 5);
  for (int n = 1; n <= 3; ++n) EXPECT_TRUE(is_hypergroupoid(X, n).verdict) << n;
}

TEST(Hypergroupoid, FillersAreUniqueAboveN) {
  auto X = nerve_t(connected_groupoid(2, FiniteGroup::cyclic(3)), 4);
  const SSet& S = X.data();
  SSet P = point(4);
  auto f = to_point(S);
  for (int m = 2; m <= 3; ++m)
    for (int k = 0; k <= m; ++k) {
      auto fc = simpset::detail::partial_matching_fibres(S, P, f, m, k);
      EXPECT_TRUE(fc.surjective && fc.injective) << m << "," << k;
      EXPECT_EQ(fc.pairs, S.count[m]);  // one filler per horn
    }
}

TEST(Hypergroupoid, InsufficientLevels) {
  auto X = TruncatedSSet::stored(nerve(connected_groupoid(1, FiniteGroup::cyclic(2)), 2));
  EXPECT_THROW(is_hypergroupoid(X, 1), InsufficientData);
}

TEST(Coskeleton, ZeroCoskeletonOfTwoPoints) {
  auto X = TruncatedSSet::stored(constant(2, 0));
  auto C = coskeleton(X, 0, 4);
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(C.data().count[n], std::size_t(1) << (n + 1));
  EXPECT_NO_THROW(C.data().validate());
  EXPECT_THROW(coskeleton(X, 2, 1), ArgumentError);
}

TEST(Coskeleton, IdempotentAndPoint) {
  auto N = nerve_t(connected_groupoid(2, FiniteGroup::cyclic(2)), 4);
  auto C = coskeleton(N, 2, 4);
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(C.data().count[n], N.data().count[n]);
  auto CC = coskeleton(C, 2, 4);
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(CC.data().count[n], C.data().count[n]);
  auto P = coskeleton(TruncatedSSet::stored(point(0)), 0, 5);
  for (int n = 0; n <= 5; ++n) EXPECT_EQ(P.data().count[n], 1u);
}

TEST(Coskeleton, NerveIsTwoCoskeletal) {
  auto G = connected_groupoid(2, FiniteGroup::symmetric3());
  auto C = coskeleton(TruncatedSSet::stored(nerve(G, 2)), 2, 4);
  SSet N4 = nerve(G, 4);
  EXPECT_EQ(C.data().count[3], N4.count[3]);
  EXPECT_EQ(C.data().count[4], N4.count[4]);
}

TEST(Dec, LevelsOfGroupNerve) {
  auto G = FiniteGroup::cyclic(3);
  auto X = nerve_t(connected_groupoid(1, G), 4);
  auto d = dec_plus(X);
  for (int n = 0; n <= 3; ++n) {
    std::size_t expect = 1;
    for (int i = 0; i <= n; ++i) expect *= 3;
    EXPECT_EQ(d.dec.data().count[n], expect);
  }
  EXPECT_NO_THROW(d.dec.data().validate());
  EXPECT_NO_THROW(d.counit.validate(d.dec.data(), X.data().truncated(3)));
  for (std::size_t x = 0; x < X.data().count[0]; ++x) EXPECT_EQ(d.retraction[d.section[x]], x);
}

TEST(Dec, PathHomotopyComplexIsDiscrete) {
  auto G = FiniteGroup::symmetric3();
  auto X = nerve_t(connected_groupoid(1, G), 5);
  auto d = dec_plus(X);
  SSet P = point(4);
  SSetMorphism base;
  for (int n = 0; n <= 4; ++n) base.map.push_back({X.data().apply(OrdinalMap(0, std::vector<int>(n + 1, 0)), 0)});
  auto fp = fiber_product(d.dec.data(), d.counit, P, base);
  EXPECT_EQ(fp.P.count[0], 6u);
  auto r = is_hypergroupoid(TruncatedSSet::stored(fp.P), 0);
  EXPECT_TRUE(r.verdict);
}

TEST(Dec, RelativeAndTrivialChecks) {
  auto G = disjoint_union(connected_groupoid(2, FiniteGroup::cyclic(2)), connected_groupoid(1, FiniteGroup::cyclic(3)));
  auto X = nerve_t(G, 5);
  auto d = dec_plus(X);
  auto rel = is_hypergroupoid(d.dec, X, d.counit, 0, HypMode::relative);
  EXPECT_TRUE(rel.verdict);
  auto X0 = TruncatedSSet::coskeletal(constant(X.data().count[0], d.dec.top()), 0);
  auto triv = is_hypergroupoid(d.dec, X0, d.to_vertex, 1, HypMode::trivial_relative);
  EXPECT_TRUE(triv.verdict);
  // not trivial at 0: the fibres over a vertex are not points
  EXPECT_FALSE(is_hypergroupoid(d.dec, X0, d.to_vertex, 0, HypMode::trivial_relative).verdict);
}

TEST(TruncateReconstruct, Cases) {
  auto X = nerve_t(connected_groupoid(2, FiniteGroup::cyclic(2)), 4);
  EXPECT_TRUE(truncate_reconstruct_check(X, X, identity_morphism(X.data()), 1).ok);
  auto P = TruncatedSSet::coskeletal(point(4), 0);
  EXPECT_TRUE(truncate_reconstruct_check(X, P, to_point(X.data()), 1).ok);
  // the hollow triangle is not 1-coskeletal: its missing 2-simplex shows up at level 2
  auto B = TruncatedSSet::from_finsset(standard_complex(StandardKind::Boundary(2)), 4);
  auto P4 = TruncatedSSet::coskeletal(point(4), 0);
  auto res = truncate_reconstruct_check(B, P4, to_point(B.data()), 0);
  EXPECT_FALSE(res.ok);
  EXPECT_EQ(res.failing_level, 2);
}

TEST(Property, RandomGroupoidNerves) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    auto G = testsupport::random_groupoid(rng);
    auto X = nerve_t(G, 4);
    EXPECT_NO_THROW(X.data().validate());
    EXPECT_TRUE(is_hypergroupoid(X, 1).verdict);
    EXPECT_EQ(is_hypergroupoid(X, 0).verdict, G.discrete());
    for (int n = 0; n <= 3; ++n)
      EXPECT_EQ(simplicial_maps(standard_complex(StandardKind::Delta(n)), X).size(), X.data().count[n]);
  }
}
