#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hypergpd/core/error.hpp"
#include "hypergpd/core/scalar.hpp"

namespace hypergpd::qalg {

using Mono = std::vector<int>;

inline int total_degree(const Mono& m) { return std::accumulate(m.begin(), m.end(), 0); }

inline bool divides(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Mono mono_div(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

/// Monomial order; variable 0 is the largest. Block orders compare the first
/// `block` variables by grevlex and break ties by grevlex on the rest.
struct MonomialOrder {
  enum class Kind { grevlex, lex, block };
  Kind kind = Kind::grevlex;
  int block = 0;

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder lex() { return {Kind::lex, 0}; }
  static MonomialOrder elimination(int k) { return {Kind::block, k}; }

  /// a > b
  bool greater(const Mono& a, const Mono& b) const {
    switch (kind) {
      case Kind::lex:
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i] != b[i]) return a[i] > b[i];
        return false;
      case Kind::grevlex:
        return grevlex_greater(a, b, 0, a.size());
      case Kind::block: {
        std::size_t k = std::min<std::size_t>(std::size_t(block), a.size());
        for (std::size_t i = 0; i < k; ++i)
          if (a[i] != b[i]) return grevlex_greater(a, b, 0, k);
        return grevlex_greater(a, b, k, a.size());
      }
    }
    return false;
  }

  std::string name() const {
    return kind == Kind::lex ? "lex" : kind == Kind::grevlex ? "grevlex" : "block" + std::to_string(block);
  }

 private:
  static bool grevlex_greater(const Mono& a, const Mono& b, std::size_t from, std::size_t to) {
    int da = 0, db = 0;
    for (std::size_t i = from; i < to; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da > db;
    for (std::size_t i = to; i-- > from;)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

/// Polynomial over Q in a fixed number of variables; no zero coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::size_t nvars) : n_(nvars) {}
  static Poly constant(std::size_t nvars, const Rational& c) {
    Poly p(nvars);
    if (!hypergpd::is_zero(c)) p.t_[Mono(nvars, 0)] = c;
    return p;
  }
  static Poly monomial(const Mono& m, const Rational& c = 1) {
    Poly p(m.size());
    if (!hypergpd::is_zero(c)) p.t_[m] = c;
    return p;
  }
  static Poly var(std::size_t nvars, std::size_t i) {
    Mono m(nvars, 0);
    m[i] = 1;
    return monomial(m);
  }

  std::size_t nvars() const { return n_; }
  const std::map<Mono, Rational>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && total_degree(t_.begin()->first) == 0); }
  Rational constant_term() const {
    auto it = t_.find(Mono(n_, 0));
    return it == t_.end() ? Rational(0) : it->second;
  }
  Rational coeff(const Mono& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Rational(0) : it->second;
  }

  void add_term(const Mono& m, const Rational& c) {
    if (hypergpd::is_zero(c)) return;
    auto [it, fresh] = t_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (hypergpd::is_zero(it->second)) t_.erase(it);
    }
  }

  friend Poly operator+(Poly a, const Poly& b) {
    a.check(b);
    for (const auto& [m, c] : b.t_) a.add_term(m, c);
    return a;
  }
  friend Poly operator-(Poly a, const Poly& b) {
    a.check(b);
    for (const auto& [m, c] : b.t_) a.add_term(m, -c);
    return a;
  }
  Poly operator-() const { return scaled(-1); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check(b);
    Poly r(a.n_);
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
  }
  Poly scaled(const Rational& c) const {
    Poly r(n_);
    if (hypergpd::is_zero(c)) return r;
    for (const auto& [m, k] : t_) r.t_[m] = k * c;
    return r;
  }
  Poly times_mono(const Mono& m, const Rational& c) const {
    Poly r(n_);
    if (hypergpd::is_zero(c)) return r;
    for (const auto& [mm, k] : t_) r.t_[mono_mul(mm, m)] = k * c;
    return r;
  }
  Poly pow(unsigned e) const {
    Poly r = constant(n_, 1), b = *this;
    while (e) {
      if (e & 1u) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.n_ == b.n_ && a.t_ == b.t_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Substitute images[i] (polynomials in a common ring) for variable i.
  Poly substitute(const std::vector<Poly>& images, std::size_t target_nvars) const {
    if (images.size() != n_) throw ArgumentError("substitute: need one image per variable");
    Poly r(target_nvars);
    std::vector<std::vector<Poly>> powers(n_);
    auto power = [&](std::size_t i, int e) -> const Poly& {
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(target_nvars, 1));
      while (int(pw.size()) <= e) pw.push_back(pw.back() * images[i]);
      return pw[std::size_t(e)];
    };
    for (const auto& [m, c] : t_) {
      Poly term = constant(target_nvars, c);
      for (std::size_t i = 0; i < n_; ++i)
        if (m[i]) term = term * power(i, m[i]);
      r = r + term;
    }
    return r;
  }

  Poly derivative(std::size_t i) const {
    Poly r(n_);
    for (const auto& [m, c] : t_)
      if (m[i] > 0) {
        Mono mm = m;
        --mm[i];
        r.add_term(mm, c * m[i]);
      }
    return r;
  }

  /// Same polynomial in a ring with extra variables appended (or a shifted slot).
  Poly embedded(std::size_t new_nvars, std::size_t offset = 0) const {
    Poly r(new_nvars);
    for (const auto& [m, c] : t_) {
      Mono mm(new_nvars, 0);
      for (std::size_t i = 0; i < n_; ++i) mm[offset + i] = m[i];
      r.t_[mm] = c;
    }
    return r;
  }

  /// Leading monomial under the order (requires nonzero).
  const Mono& leading(const MonomialOrder& ord) const {
    if (t_.empty()) throw ArgumentError("leading term of zero polynomial");
    auto best = t_.begin();
    for (auto it = std::next(t_.begin()); it != t_.end(); ++it)
      if (ord.greater(it->first, best->first)) best = it;
    return best->first;
  }

  bool uses_variable(std::size_t i) const {
    for (const auto& [m, c] : t_)
      if (m[i]) return true;
    return false;
  }

  /// Weighted degrees of the terms; homogeneous iff all equal.
  std::optional<long> homogeneous_weight(const std::vector<int>& w) const {
    std::optional<long> out;
    for (const auto& [m, c] : t_) {
      long s = 0;
      for (std::size_t i = 0; i < n_; ++i) s += long(m[i]) * w[i];
      if (out && *out != s) return std::nullopt;
      out = s;
    }
    return out;
  }

  /// Deterministic rendering, terms in decreasing order under ord.
  std::string str(const std::vector<std::string>& names, const MonomialOrder& ord = {}) const {
    if (t_.empty()) return "0";
    std::vector<std::pair<Mono, Rational>> ts(t_.begin(), t_.end());
    std::stable_sort(ts.begin(), ts.end(), [&](const auto& a, const auto& b) { return ord.greater(a.first, b.first); });
    std::string s;
    bool first = true;
    for (const auto& [m, c] : ts) {
      Rational a = abs(c);
      bool neg = sgn(c) < 0;
      s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
      first = false;
      std::string mon;
      for (std::size_t i = 0; i < n_; ++i) {
        if (!m[i]) continue;
        if (!mon.empty()) mon += "*";
        mon += names.at(i);
        if (m[i] > 1) mon += "^" + std::to_string(m[i]);
      }
      if (mon.empty())
        s += a.get_str();
      else if (a == 1)
        s += mon;
      else
        s += a.get_str() + "*" + mon;
    }
    return s;
  }

 private:
  void check(const Poly& b) const {
    if (n_ != b.n_) throw ArgumentError("polynomials live in different rings");
  }
  std::size_t n_ = 0;
  std::map<Mono, Rational> t_;
};

/**
 * Parser for the polynomial grammar
 *   expr   := ['-'] term (('+'|'-') term)*
 *   term   := factor ('*' factor)*
 *   factor := atom ('^' natural)?
 *   atom   := natural ['/' natural] | identifier | '(' expr ')'
 * e.g. "2/3*x^2*y - 1". Unknown identifiers are errors.
 */
class PolyParser {
 public:
  PolyParser(const std::string& src, const std::vector<std::string>& names, std::size_t line = 1,
             std::size_t col0 = 1)
      : s_(src), names_(names), line_(line), col0_(col0) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (i_ < s_.size()) error("unexpected '" + std::string(1, s_[i_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    throw ParseError("polynomial: " + what, line_, col0_ + i_);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  Poly expr() {
    Poly p(names_.size());
    bool neg = eat('-');
    Poly t = term();
    p = neg ? p - t : p + t;
    for (;;) {
      if (eat('+'))
        p = p + term();
      else if (eat('-'))
        p = p - term();
      else
        return p;
    }
  }
  Poly term() {
    Poly p = factor();
    while (eat('*')) p = p * factor();
    return p;
  }
  Poly factor() {
    Poly a = atom();
    if (eat('^')) {
      skip();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) error("exponent expected");
      a = a.pow(unsigned(std::stoul(s_.substr(st, i_ - st))));
    }
    return a;
  }
  Poly atom() {
    skip();
    if (i_ >= s_.size()) error("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Poly p = expr();
      if (!eat(')')) error("')' expected");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      std::string num = s_.substr(st, i_ - st);
      if (i_ < s_.size() && s_[i_] == '/') {
        ++i_;
        std::size_t st2 = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (st2 == i_) error("denominator expected");
        num += "/" + s_.substr(st2, i_ - st2);
      }
      Rational q = parse_rational(num);
      return Poly::constant(names_.size(), q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      std::string id = s_.substr(st, i_ - st);
      for (std::size_t k = 0; k < names_.size(); ++k)
        if (names_[k] == id) return Poly::var(names_.size(), k);
      i_ = st;
      error("unknown variable '" + id + "'");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  const std::vector<std::string>& names_;
  std::size_t line_, col0_;
  std::size_t i_ = 0;
};

inline Poly parse_poly(const std::string& src, const std::vector<std::string>& names) {
  return PolyParser(src, names).parse();
}

}  // namespace hypergpd::qalg
