#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "qsk/errors.hpp"

namespace qsk {

using Integer = boost::multiprecision::cpp_int;

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer x = abs(a), y = abs(b);
  while (y != 0) {
    Integer r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

// Least nonnegative residue; m > 0.
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

// Floor division; m > 0.
inline Integer div_floor(const Integer& a, const Integer& m) {
  return (a - mod_floor(a, m)) / m;
}

inline bool divides(const Integer& d, const Integer& a) {
  if (d == 0) return a == 0;
  return a % d == 0;
}

struct ExtGcd {
  Integer g;  // >= 0
  Integer x;
  Integer y;  // a*x + b*y == g
};

inline ExtGcd ext_gcd(const Integer& a, const Integer& b) {
  Integer r0 = a, r1 = b, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer t = r0 - q * r1;
    r0 = std::move(r1);
    r1 = std::move(t);
    t = x0 - q * x1;
    x0 = std::move(x1);
    x1 = std::move(t);
    t = y0 - q * y1;
    y0 = std::move(y1);
    y1 = std::move(t);
  }
  if (r0 < 0) {
    r0 = -r0;
    x0 = -x0;
    y0 = -y0;
  }
  return {r0, x0, y0};
}

// The coset residue + modulus*Z, modulus > 0, residue reduced.
struct Congruence {
  Integer residue;
  Integer modulus;

  friend bool operator==(const Congruence&, const Congruence&) = default;
};

// Intersection of two cosets of Z; nullopt when empty.
inline std::optional<Congruence> crt(const Congruence& a, const Congruence& b) {
  const ExtGcd e = ext_gcd(a.modulus, b.modulus);
  const Integer diff = b.residue - a.residue;
  if (diff % e.g != 0) return std::nullopt;
  const Integer l = a.modulus / e.g * b.modulus;
  // a.residue + a.modulus * t with a.modulus * t == diff (mod b.modulus)
  const Integer t = mod_floor(diff / e.g * e.x, b.modulus / e.g);
  return Congruence{mod_floor(a.residue + a.modulus * t, l), l};
}

inline Integer parse_integer(std::string_view text) {
  std::string s(text);
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  require(i < s.size(), "expected an integer, got '" + s + "'");
  for (std::size_t j = i; j < s.size(); ++j)
    require(s[j] >= '0' && s[j] <= '9', "expected an integer, got '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s);
}

inline std::int64_t to_int64(const Integer& a) {
  ensure(a >= std::numeric_limits<std::int64_t>::min() &&
             a <= std::numeric_limits<std::int64_t>::max(),
         "integer does not fit in 64 bits: " + a.str());
  return a.convert_to<std::int64_t>();
}

inline Integer ipow(Integer base, std::uint64_t exp) {
  Integer r = 1;
  while (exp) {
    if (exp & 1) r *= base;
    base *= base;
    exp >>= 1;
  }
  return r;
}

}  // namespace qsk
