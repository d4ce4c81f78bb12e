#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

#include "hypergpd/core/error.hpp"

namespace hypergpd {

using Integer = mpz_class;
using Rational = mpq_class;

/// Prime field element; only small primes are needed (mod-2 cross-checks).
template <std::uint32_t P>
class Fp {
 public:
  Fp() = default;
  Fp(long v) : v_(static_cast<std::uint32_t>(((v % static_cast<long>(P)) + P) % P)) {}
  std::uint32_t value() const { return v_; }

  friend Fp operator+(Fp a, Fp b) { return Fp::raw((a.v_ + b.v_) % P); }
  friend Fp operator-(Fp a, Fp b) { return Fp::raw((a.v_ + P - b.v_) % P); }
  friend Fp operator*(Fp a, Fp b) {
    return Fp::raw(static_cast<std::uint32_t>((std::uint64_t(a.v_) * b.v_) % P));
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const { return Fp::raw((P - v_) % P); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
  friend bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }
  friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.v_; }

  Fp inverse() const {
    if (v_ == 0) throw ArgumentError("inverse of zero in F_p");
    std::uint64_t r = 1, b = v_, e = P - 2;
    while (e) {
      if (e & 1) r = r * b % P;
      b = b * b % P;
      e >>= 1;
    }
    return Fp::raw(static_cast<std::uint32_t>(r));
  }

 private:
  static Fp raw(std::uint32_t v) {
    Fp f;
    f.v_ = v;
    return f;
  }
  std::uint32_t v_ = 0;
};

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const Integer& z) { return sgn(z) == 0; }
template <std::uint32_t P>
bool is_zero(const Fp<P>& x) {
  return x.value() == 0;
}

/// "p/q" or "p"; throws ParseError with the column inside the token.
inline Rational parse_rational(const std::string& s) {
  std::size_t i = 0;
  auto digits = [&](bool allow_sign) {
    std::size_t start = i;
    if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    std::size_t d = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == d) throw ParseError("expected digits in rational '" + s + "'", 1, i + 1);
    return s.substr(start, i - start);
  };
  std::string num = digits(true);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  std::string den = "1";
  if (i < s.size() && s[i] == '/') {
    ++i;
    den = digits(false);
  }
  if (i != s.size()) throw ParseError("trailing characters in rational '" + s + "'", 1, i + 1);
  Integer d(den);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'", 1, i);
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

}  // namespace hypergpd
