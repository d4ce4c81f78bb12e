#pragma once

#include <bit>
#include <cctype>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hypergpd/core/error.hpp"
#include "hypergpd/core/matrix.hpp"
#include "hypergpd/core/ordinal.hpp"
#include "hypergpd/core/scalar.hpp"
#include "hypergpd/dkab/complex.hpp"

namespace hypergpd::rham {

/**
 * Polynomial differential form on the n-simplex in the coordinates
 * t_1..t_n, dt_1..dt_n (t_0 and dt_0 eliminated). A term is keyed by its
 * exponent vector and the bitmask of its dt factors, taken in increasing order.
 */
class PolyForm {
 public:
  using Key = std::pair<std::vector<int>, unsigned>;

  PolyForm() = default;
  explicit PolyForm(int n) : n_(n) {
    if (n < 0) throw ArgumentError("forms: negative simplex dimension");
  }

  static PolyForm constant(int n, const Rational& c) {
    PolyForm f(n);
    f.add(std::vector<int>(std::size_t(n), 0), 0, c);
    return f;
  }
  /// Barycentric coordinate t_i, i = 0..n.
  static PolyForm t(int n, int i) {
    if (i < 0 || i > n) throw ArgumentError("forms: coordinate t" + std::to_string(i) + " on a " + std::to_string(n) + "-simplex");
    if (i == 0) {
      PolyForm f = constant(n, 1);
      for (int j = 1; j <= n; ++j) f = f - t(n, j);
      return f;
    }
    PolyForm f(n);
    std::vector<int> e(std::size_t(n), 0);
    e[i - 1] = 1;
    f.add(e, 0, 1);
    return f;
  }
  static PolyForm dt(int n, int i) { return t(n, i).d(); }

  int dim() const { return n_; }
  const std::map<Key, Rational>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add(const std::vector<int>& e, unsigned mask, const Rational& c) {
    if (hypergpd::is_zero(c)) return;
    auto [it, fresh] = t_.try_emplace({e, mask}, c);
    if (!fresh) {
      it->second += c;
      if (hypergpd::is_zero(it->second)) t_.erase(it);
    }
  }

  /// Form degree if homogeneous, -1 for zero, ArgumentError otherwise.
  int degree() const {
    int deg = -1;
    for (const auto& [k, c] : t_) {
      int d = std::popcount(k.second);
      if (deg >= 0 && d != deg) throw ArgumentError("forms: mixed form degrees");
      deg = d;
    }
    return deg;
  }
  /// Largest polynomial-plus-form degree of a term.
  int weight() const {
    int w = 0;
    for (const auto& [k, c] : t_) {
      int s = std::popcount(k.second);
      for (int e : k.first) s += e;
      w = std::max(w, s);
    }
    return w;
  }

  friend PolyForm operator+(const PolyForm& a, const PolyForm& b) {
    check_dims(a, b);
    PolyForm r = a;
    for (const auto& [k, c] : b.t_) r.add(k.first, k.second, c);
    return r;
  }
  friend PolyForm operator-(const PolyForm& a, const PolyForm& b) { return a + b.scaled(-1); }
  PolyForm scaled(const Rational& c) const {
    PolyForm r(n_);
    for (const auto& [k, v] : t_) r.add(k.first, k.second, v * c);
    return r;
  }
  friend bool operator==(const PolyForm& a, const PolyForm& b) { return a.n_ == b.n_ && a.t_ == b.t_; }

  /// Wedge product with Koszul signs.
  friend PolyForm operator*(const PolyForm& a, const PolyForm& b) {
    check_dims(a, b);
    PolyForm r(a.n_);
    for (const auto& [ka, ca] : a.t_)
      for (const auto& [kb, cb] : b.t_) {
        if (ka.second & kb.second) continue;
        std::vector<int> e = ka.first;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += kb.first[i];
        r.add(e, ka.second | kb.second, merge_sign(ka.second, kb.second) * ca * cb);
      }
    return r;
  }

  PolyForm d() const {
    PolyForm r(n_);
    for (const auto& [k, c] : t_)
      for (int i = 0; i < n_; ++i) {
        if (k.first[i] == 0 || (k.second >> i & 1u)) continue;
        std::vector<int> e = k.first;
        --e[i];
        r.add(e, k.second | (1u << i), merge_sign(1u << i, k.second) * c * k.first[i]);
      }
    return r;
  }

  /// theta^* : Omega_n -> Omega_m for theta : [m] -> [n], t_j |-> sum of t'_k over theta(k) = j.
  PolyForm pullback(const OrdinalMap& theta) const {
    if (theta.dst != n_) throw ArgumentError("forms: operator does not start at this simplex");
    int m = theta.src;
    std::vector<PolyForm> img, dimg;
    for (int j = 1; j <= n_; ++j) {
      PolyForm s(m);
      for (int k = 0; k <= m; ++k)
        if (theta(k) == j) s = s + t(m, k);
      img.push_back(s);
      dimg.push_back(s.d());
    }
    PolyForm r(m);
    for (const auto& [k, c] : t_) {
      PolyForm term = constant(m, c);
      for (int j = 0; j < n_; ++j)
        for (int p = 0; p < k.first[j]; ++p) term = term * img[j];
      for (int j = 0; j < n_; ++j)
        if (k.second >> j & 1u) term = term * dimg[j];
      r = r + term;
    }
    return r;
  }
  /// Restriction to the face opposite vertex i.
  PolyForm face(int i) const { return pullback(OrdinalMap::coface(n_, i)); }
  /// Pullback along the degeneracy Delta^{n+1} -> Delta^n hitting i twice.
  PolyForm degeneracy(int i) const { return pullback(OrdinalMap::codegeneracy(n_, i)); }

  std::string str() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [k, c] : t_) {
      std::string body;
      for (int i = 0; i < n_; ++i)
        if (k.first[i]) body += (body.empty() ? "" : "*") + ("t" + std::to_string(i + 1)) + (k.first[i] > 1 ? "^" + std::to_string(k.first[i]) : "");
      std::string wedge;
      for (int i = 0; i < n_; ++i)
        if (k.second >> i & 1u) wedge += (wedge.empty() ? "" : "^") + ("dt" + std::to_string(i + 1));
      if (!wedge.empty()) body += (body.empty() ? "" : "*") + wedge;
      Rational a = abs(c);
      std::string coef = a == 1 && !body.empty() ? "" : a.get_str() + (body.empty() ? "" : "*");
      s += (first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ")) + coef + body;
      first = false;
    }
    return s;
  }

  /// Grammar: sum of products of rationals, t<i>[^k] and dt<i>^dt<j>^...; t0, dt0 allowed.
  static PolyForm parse(int n, const std::string& text);

 private:
  static void check_dims(const PolyForm& a, const PolyForm& b) {
    if (a.n_ != b.n_) throw ArgumentError("forms: simplex dimensions differ (" + std::to_string(a.n_) + " vs " + std::to_string(b.n_) + ")");
  }
  /// Sign of dt_A ^ dt_B rearranged into increasing order.
  static int merge_sign(unsigned a, unsigned b) {
    int inv = 0;
    for (unsigned x = a; x; x &= x - 1) {
      unsigned bit = x & -x;
      inv += std::popcount(b & (bit - 1));
    }
    return inv % 2 ? -1 : 1;
  }

  int n_ = 0;
  std::map<Key, Rational> t_;
};

inline PolyForm PolyForm::parse(int n, const std::string& text) {
  std::size_t i = 0;
  auto fail = [&](const std::string& what) { throw ParseError("form: " + what, 1, i + 1); };
  auto skip = [&]() {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto number = [&]() {
    std::size_t b = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (b == i) fail("expected a number");
    return std::stoi(text.substr(b, i - b));
  };
  auto factor = [&]() -> PolyForm {
    skip();
    if (i >= text.size()) fail("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::size_t b = i;
      while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) ++i;
      try {
        return constant(n, parse_rational(text.substr(b, i - b)));
      } catch (const Error&) {
        i = b;
        fail("bad rational");
      }
    }
    if (text.compare(i, 2, "dt") == 0) {
      PolyForm w = constant(n, 1);
      for (;;) {
        i += 2;
        std::size_t at = i;
        int k = number();
        if (k > n) {
          i = at;
          fail("dt" + std::to_string(k) + " on a " + std::to_string(n) + "-simplex");
        }
        w = w * dt(n, k);
        if (i + 2 < text.size() && text[i] == '^' && text.compare(i + 1, 2, "dt") == 0)
          ++i;
        else
          break;
      }
      return w;
    }
    if (text[i] == 't') {
      ++i;
      std::size_t at = i;
      int k = number();
      if (k > n) {
        i = at;
        fail("t" + std::to_string(k) + " on a " + std::to_string(n) + "-simplex");
      }
      PolyForm b = t(n, k), r = constant(n, 1);
      int e = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        e = number();
      }
      for (int p = 0; p < e; ++p) r = r * b;
      return r;
    }
    fail(std::string("unexpected '") + text[i] + "'");
    return PolyForm(n);
  };
  PolyForm total(n);
  skip();
  if (i >= text.size()) fail("empty form");
  bool first = true;
  while (true) {
    skip();
    if (i >= text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    PolyForm term = factor();
    skip();
    while (i < text.size() && text[i] == '*') {
      ++i;
      term = term * factor();
      skip();
    }
    total = total + term.scaled(sign);
    first = false;
  }
  return total;
}

/// Closed form: integral of t^a dt_1...dt_n over the simplex is prod a_i! / (n + sum a_i)!.
inline Rational simplex_integral(const PolyForm& w) {
  int n = w.dim();
  unsigned full = n ? (1u << n) - 1 : 0;
  Rational total = 0;
  for (const auto& [k, c] : w.terms()) {
    if (k.second != full) throw ArgumentError("simplex_integral: form is not of top degree " + std::to_string(n));
    Integer num = 1;
    unsigned s = unsigned(n);
    for (int e : k.first) {
      num *= factorial(unsigned(e));
      s += unsigned(e);
    }
    total += c * Rational(num, factorial(s));
  }
  total.canonicalize();
  return total;
}

/// Monomial forms of degree k and weight exactly w on the n-simplex.
inline std::vector<PolyForm> monomial_forms(int n, int k, int w) {
  std::vector<PolyForm> out;
  if (k < 0 || k > n || w < k) return out;
  std::vector<unsigned> masks;
  for (unsigned m = 0; m < (1u << n); ++m)
    if (std::popcount(m) == k) masks.push_back(m);
  std::vector<int> e(std::size_t(n), 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n) {
      if (left) return;
      for (auto m : masks) {
        PolyForm f(n);
        f.add(e, m, 1);
        out.push_back(f);
      }
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[i] = a;
      self(self, i + 1, left - a);
    }
    e[i] = 0;
  };
  if (n == 0) {
    if (w == 0) out.push_back(PolyForm::constant(0, 1));
    return out;
  }
  rec(rec, 0, w - k);
  return out;
}

/// Basis of the weight <= W part of Omega_n^k (by increasing weight).
inline std::vector<PolyForm> filtered_basis(int n, int k, int W) {
  std::vector<PolyForm> out;
  for (int w = 0; w <= W; ++w)
    for (auto& f : monomial_forms(n, k, w)) out.push_back(std::move(f));
  return out;
}

/// Coordinates of a form in a monomial basis; ArgumentError if it leaves the span.
inline Matrix<Rational> coordinates(const std::vector<PolyForm>& basis, const PolyForm& f) {
  std::map<PolyForm::Key, std::size_t> idx;
  for (std::size_t i = 0; i < basis.size(); ++i) idx[basis[i].terms().begin()->first] = i;
  Matrix<Rational> c(basis.size(), 1);
  for (const auto& [k, v] : f.terms()) {
    auto it = idx.find(k);
    if (it == idx.end()) throw ArgumentError("forms: element leaves the weight window");
    c(it->second, 0) = v;
  }
  return c;
}

/// The weight <= W subcomplex of Omega_n as a cochain complex over Q.
inline dkab::CochainComplex<Rational> omega_complex(int n, int W) {
  dkab::CochainComplex<Rational> c;
  std::vector<std::vector<PolyForm>> B;
  for (int k = 0; k <= n; ++k) {
    B.push_back(filtered_basis(n, k, W));
    c.ranks.push_back(B.back().size());
  }
  c.d.resize(n + 1);
  for (int k = 0; k < n; ++k) {
    Matrix<Rational> m(B[k + 1].size(), B[k].size());
    for (std::size_t j = 0; j < B[k].size(); ++j) {
      auto col = coordinates(B[k + 1], B[k][j].d());
      for (std::size_t i = 0; i < col.rows(); ++i) m(i, j) = col(i, 0);
    }
    c.d[k] = m;
  }
  return c;
}

}  // namespace hypergpd::rham
