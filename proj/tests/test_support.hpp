#pragma once

#include <random>

#include "hypergpd/dkab/complex.hpp"
#include "hypergpd/simpset/sset.hpp"

namespace testsupport {

/// Disjoint union of one to three connected groupoids with small groups.
inline hypergpd::simpset::Groupoid random_groupoid(std::mt19937& rng) {
  using namespace hypergpd::simpset;
  auto pick_group = [&]() {
    switch (rng() % 4) {
      case 0: return FiniteGroup::cyclic(1);
      case 1: return FiniteGroup::cyclic(2);
      case 2: return FiniteGroup::cyclic(3);
      default: return FiniteGroup::symmetric3();
    }
  };
  int parts = 1 + int(rng() % 3);
  Groupoid G = connected_groupoid(1 + rng() % 2, pick_group());
  for (int p = 1; p < parts; ++p) G = disjoint_union(G, connected_groupoid(1 + rng() % 2, pick_group()));
  return G;
}

/**
 * Random Z-complex in degrees 0..n: ranks 0..3, each differential a random
 * integer combination of kernel vectors of the previous one (so d.d = 0).
 * The top term is nonzero.
 */
inline hypergpd::dkab::ChainComplex<hypergpd::Integer> random_complex(std::mt19937& rng, int n) {
  using hypergpd::Integer;
  using hypergpd::Matrix;
  std::vector<std::size_t> ranks;
  for (int k = 0; k <= n; ++k) ranks.push_back(k == n ? 1 + rng() % 2 : rng() % 4);
  auto c = hypergpd::dkab::make_complex<Integer>(0, ranks);
  auto small = [&]() { return Integer(int(rng() % 5) - 2); };
  for (int k = 1; k <= n; ++k) {
    Matrix<Integer> basis = k == 1 ? Matrix<Integer>::identity(ranks[0]) : hypergpd::kernel_basis(c.d[k - 1]);
    Matrix<Integer> coeff(basis.cols(), ranks[k]);
    for (std::size_t i = 0; i < coeff.rows(); ++i)
      for (std::size_t j = 0; j < coeff.cols(); ++j) coeff(i, j) = small();
    c.d[k] = basis * coeff;
  }
  return c;
}

}  // namespace testsupport
