#pragma once

#include <string>
#include <vector>

namespace hypergpd {

struct Failure {
  int m = 0;
  int k = -1;  // -1: the full boundary (trivial-relative or reconstruction checks)
  std::string reason;  // "not-surjective" | "not-injective"
  std::string detail;

  std::string witness() const {
    return "(" + std::to_string(m) + "," + (k < 0 ? std::string("bd") : std::to_string(k)) + ")";
  }
};

struct HypReport {
  int dimension_tested = 0;
  std::vector<Failure> failures;
  bool verdict = true;
  bool tainted = false;  // some step was accepted on an unchecked assertion
  std::vector<std::string> notes;

  void fail(int m, int k, std::string reason, std::string detail = {}) {
    failures.push_back({m, k, std::move(reason), std::move(detail)});
    verdict = false;
  }
  bool has_failure(int m, int k) const {
    for (const auto& f : failures)
      if (f.m == m && f.k == k) return true;
    return false;
  }
};

}  // namespace hypergpd
