#pragma once

#include <string>
#include <vector>

#include "hypergpd/rham/forms.hpp"

namespace hypergpd::rham {

/// Increasing (k+1)-subsets of {0..m}, in lexicographic order.
inline std::vector<std::vector<int>> simplex_faces(int m, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > m) return out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int next) -> void {
    if (int(cur.size()) == k + 1) {
      out.push_back(cur);
      return;
    }
    for (int v = next; v <= m; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Integral of a k-form on Delta^m over the face spanned by the given vertices.
inline Rational integrate_over(const PolyForm& w, const std::vector<int>& vertices) {
  return simplex_integral(w.pullback(OrdinalMap(w.dim(), vertices)));
}

/// int dw over Delta^n against the alternating sum of int w over the faces.
inline bool stokes_holds(const PolyForm& w) {
  int n = w.dim();
  if (n == 0) return true;
  Rational rhs = 0;
  for (int i = 0; i <= n; ++i) {
    Rational f = simplex_integral(w.face(i));
    rhs += i % 2 ? -f : f;
  }
  return simplex_integral(w.d()) == rhs;
}

struct IntegrationSample {
  std::string form;
  int degree = 0;
  std::vector<std::vector<int>> faces;  // the k-faces of Delta^m
  std::vector<Rational> cochain;        // int over each face
  bool ok = true;
  std::string failure;
};

struct IntegrationReport {
  int m = 0;
  std::vector<IntegrationSample> samples;
  std::size_t failures = 0;
  bool ok() const { return failures == 0; }
};

/**
 * For each sample k-form w on Delta^m: the cochain f |-> int f^* w on k-faces,
 * and the cochain identity int_g dw = sum_i (-1)^i int_{g d^i} w on every
 * (k+1)-face g.
 */
inline IntegrationReport integration_map_check(int m, const std::vector<PolyForm>& samples) {
  IntegrationReport r;
  r.m = m;
  for (const auto& w : samples) {
    if (w.dim() != m) throw ArgumentError("integration: sample on a " + std::to_string(w.dim()) + "-simplex, expected " + std::to_string(m));
    IntegrationSample s;
    s.form = w.str();
    int k = std::max(w.degree(), 0);
    s.degree = k;
    s.faces = simplex_faces(m, k);
    for (const auto& f : s.faces) s.cochain.push_back(integrate_over(w, f));
    PolyForm dw = w.d();
    for (const auto& g : simplex_faces(m, k + 1)) {
      Rational lhs = integrate_over(dw, g), rhs = 0;
      for (int i = 0; i <= k + 1; ++i) {
        std::vector<int> f = g;
        f.erase(f.begin() + i);
        Rational v = integrate_over(w, f);
        rhs += i % 2 ? -v : v;
      }
      if (lhs != rhs && s.ok) {
        s.ok = false;
        std::string at;
        for (int v : g) at += (at.empty() ? "" : ",") + std::to_string(v);
        s.failure = "face {" + at + "}: " + lhs.get_str() + " != " + rhs.get_str();
      }
    }
    if (!s.ok) ++r.failures;
    r.samples.push_back(std::move(s));
  }
  return r;
}

}  // namespace hypergpd::rham
