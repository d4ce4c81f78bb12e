#pragma once

#include <vector>

#include "hypergpd/core/error.hpp"
#include "hypergpd/core/scalar.hpp"

namespace hypergpd::hypaff {

/// Step counts f(0..r) of an iterated resolution: each step resolves the
/// previous two halves and adds one, f(0) = 0, f(k+1) = 2 f(k) + 1.
inline std::vector<Integer> resolution_steps(int r) {
  if (r < 0) throw ArgumentError("resolution_steps: negative depth");
  std::vector<Integer> f{Integer(0)};
  for (int k = 0; k < r; ++k) f.push_back(2 * f.back() + 1);
  return f;
}

}  // namespace hypergpd::hypaff
