#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsk/bigint.hpp"
#include "qsk/errors.hpp"
#include "qsk/family.hpp"

// Arithmetic in the right LCM semigroups Z x| H+, N x| H+ and
// U = {(m, h) in N x| H+ : 0 <= m <= h - 1}, with (m,h)(n,k) = (m + hn, hk).
namespace qsk::lcmsemi {

enum class Ambient { ZxH, NxH, U };

inline const char* to_string(Ambient a) {
  switch (a) {
    case Ambient::ZxH: return "ZxH";
    case Ambient::NxH: return "NxH";
    case Ambient::U: return "U";
  }
  return "?";
}

struct SgElem {
  Integer m;
  Integer h;
  Ambient ambient = Ambient::U;

  friend bool operator==(const SgElem&, const SgElem&) = default;
  friend auto operator<=>(const SgElem& a, const SgElem& b) {
    if (a.h != b.h) return a.h < b.h ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.m != b.m) return a.m < b.m ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.ambient <=> b.ambient;
  }

  std::string to_string() const { return "(" + m.str() + "," + h.str() + ")"; }
};

// Exponent vector (a_p) over the elements of S with prod p^{a_p} == h, or
// nullopt when h is not in H+. Unique since S is pairwise coprime.
inline std::optional<std::vector<std::int64_t>> h_plus_membership(Integer h,
                                                                  const PrimeFamily& fam) {
  require(h >= 1, "h must be positive");
  std::vector<std::int64_t> exps;
  for (auto p : fam.elements()) {
    std::int64_t a = 0;
    while (h % p == 0) {
      h /= p;
      ++a;
    }
    exps.push_back(a);
  }
  if (h != 1) return std::nullopt;
  return exps;
}

inline bool in_h_plus(const Integer& h, const PrimeFamily& fam) {
  return h >= 1 && h_plus_membership(h, fam).has_value();
}

// Validated constructor.
inline SgElem make_elem(const PrimeFamily& fam, Integer m, Integer h, Ambient ambient) {
  require(h >= 1 && in_h_plus(h, fam), "h=" + h.str() + " is not in H+");
  if (ambient == Ambient::NxH) require(m >= 0, "NxH elements need m >= 0");
  if (ambient == Ambient::U)
    require(m >= 0 && m <= h - 1, "U elements need 0 <= m <= h-1, got " + m.str());
  return SgElem{std::move(m), std::move(h), ambient};
}

inline SgElem compose(const SgElem& x, const SgElem& y) {
  require(x.ambient == y.ambient, "compose: ambient mismatch");
  SgElem r{x.m + x.h * y.m, x.h * y.h, x.ambient};
  ensure(r.ambient != Ambient::U || (r.m >= 0 && r.m <= r.h - 1), "U not closed");
  return r;
}

inline SgElem unit(Ambient a) { return SgElem{0, 1, a}; }

// xT = yT-membership: does z lie in the principal right ideal xT?
inline bool in_ideal(const SgElem& x, const SgElem& z) {
  if (x.ambient != z.ambient || z.h % x.h != 0) return false;
  if (mod_floor(z.m - x.m, x.h) != 0) return false;
  const Integer n = (z.m - x.m) / x.h, k = z.h / x.h;
  switch (x.ambient) {
    case Ambient::ZxH: return true;
    case Ambient::NxH: return n >= 0;
    case Ambient::U: return n >= 0 && n <= k - 1;
  }
  return false;
}

// Generator of xT intersect yT, or nullopt when it is empty. The residue is
// fixed by CRT modulo lcm(h, h'); for ZxH (where every residue gives the same
// ideal) and for U it is the least nonnegative one, for NxH the least one
// >= max(m, m').
inline std::optional<SgElem> right_lcm(const SgElem& x, const SgElem& y) {
  require(x.ambient == y.ambient, "right_lcm: ambient mismatch");
  auto c = crt({mod_floor(x.m, x.h), x.h}, {mod_floor(y.m, y.h), y.h});
  if (!c) return std::nullopt;
  SgElem r{c->residue, c->modulus, x.ambient};
  if (x.ambient == Ambient::NxH) {
    const Integer lo = std::max(x.m, y.m);
    r.m = lo + mod_floor(c->residue - lo, c->modulus);
  }
  return r;
}

// Action and restriction of the additive generator 1 on (m, h) in U
// (odometer): 1.(m,h) = (m+1,h) with restriction 0 unless m = h-1, in which
// case it wraps to (0,h) with restriction 1.
inline std::pair<SgElem, int> zappa_szep(const SgElem& x) {
  require(x.ambient == Ambient::U, "zappa_szep needs an element of U");
  if (x.m < x.h - 1) return {SgElem{x.m + 1, x.h, Ambient::U}, 0};
  return {SgElem{0, x.h, Ambient::U}, 1};
}

inline Integer lcm_of_heights(const std::vector<SgElem>& f) {
  Integer l = 1;
  for (const auto& e : f) l = lcm(l, e.h);
  return l;
}

// F in U is a foundation set iff every (r, L), L = lcm of the heights in F and
// 0 <= r < L, meets some fU. Sufficiency: tU meets fU iff m_t = m_f mod
// gcd(h_t, h_f); for arbitrary t choose r = m_t mod gcd(h_t, L), then a hit
// r = m_f mod h_f gives m_t = m_f mod gcd(h_t, h_f) because that gcd divides
// gcd(h_t, L).
inline bool is_foundation_set(const std::vector<SgElem>& f) {
  require(!f.empty(), "foundation set candidates must be non-empty");
  for (const auto& e : f) require(e.ambient == Ambient::U, "foundation sets are taken in U");
  const Integer l = lcm_of_heights(f);
  for (Integer r = 0; r < l; ++r) {
    const SgElem t{r, l, Ambient::U};
    bool hit = false;
    for (const auto& e : f)
      if (right_lcm(t, e)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

// {(m, L) : 0 <= m < L} for L the lcm of the heights: accurate, and each of
// its elements lies in some fU.
inline std::vector<SgElem> accurate_refinement(const std::vector<SgElem>& f) {
  require(is_foundation_set(f), "accurate_refinement: input is not a foundation set");
  const Integer l = lcm_of_heights(f);
  std::vector<SgElem> out;
  for (Integer m = 0; m < l; ++m) out.push_back(SgElem{m, l, Ambient::U});
  return out;
}

}  // namespace qsk::lcmsemi
