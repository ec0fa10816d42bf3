#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qsk/bigint.hpp"
#include "qsk/errors.hpp"

namespace qsk {

// Finitely generated abelian group Z^r + Z/t_1 + ... + Z/t_n in invariant
// factor form: every t_i >= 2 and t_i | t_{i+1}. The representation is
// canonical, so equality is structural.
class FgAbGroup {
 public:
  FgAbGroup() = default;

  // Accepts any list of cyclic orders: 0 contributes a free summand, 1 and -1
  // are dropped, signs are ignored.
  static FgAbGroup from_cyclic_orders(std::int64_t free_rank, std::vector<Integer> orders) {
    require(free_rank >= 0, "negative free rank");
    FgAbGroup g;
    g.free_rank_ = free_rank;
    for (auto& o : orders) {
      if (o == 0)
        ++g.free_rank_;
      else if (abs(o) != 1)
        g.torsion_.push_back(abs(o));
    }
    // (a, b) -> (gcd, lcm) pairwise sweep leaves a divisibility chain.
    auto& t = g.torsion_;
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = i + 1; j < t.size(); ++j) {
        if (t[j] % t[i] == 0) continue;
        Integer d = gcd(t[i], t[j]);
        Integer l = t[i] / d * t[j];
        t[i] = std::move(d);
        t[j] = std::move(l);
      }
    std::erase_if(t, [](const Integer& x) { return x == 1; });
    return g;
  }

  static FgAbGroup free(std::int64_t rank) { return from_cyclic_orders(rank, {}); }
  static FgAbGroup cyclic(const Integer& order) { return from_cyclic_orders(0, {order}); }

  std::int64_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }

  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
  bool is_torsion() const { return free_rank_ == 0; }

  FgAbGroup torsion_part() const {
    FgAbGroup g = *this;
    g.free_rank_ = 0;
    return g;
  }

  // Order of the torsion subgroup.
  Integer torsion_order() const {
    Integer p = 1;
    for (const auto& t : torsion_) p *= t;
    return p;
  }

  // Largest invariant factor (1 when torsion-free).
  Integer exponent() const { return torsion_.empty() ? Integer(1) : torsion_.back(); }

  friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;

  // "0", "Z", "Z^2 + Z/2", "(Z/2)^3 + Z/4" ...
  std::string to_string() const {
    if (is_trivial()) return "0";
    std::string out;
    auto sep = [&out] {
      if (!out.empty()) out += " + ";
    };
    if (free_rank_ == 1) out = "Z";
    if (free_rank_ > 1) out = "Z^" + std::to_string(free_rank_);
    for (std::size_t i = 0; i < torsion_.size();) {
      std::size_t j = i;
      while (j < torsion_.size() && torsion_[j] == torsion_[i]) ++j;
      sep();
      if (j - i == 1)
        out += "Z/" + torsion_[i].str();
      else
        out += "(Z/" + torsion_[i].str() + ")^" + std::to_string(j - i);
      i = j;
    }
    return out;
  }

 private:
  std::int64_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

inline FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
  std::vector<Integer> t = a.torsion();
  t.insert(t.end(), b.torsion().begin(), b.torsion().end());
  return FgAbGroup::from_cyclic_orders(a.free_rank() + b.free_rank(), std::move(t));
}

// n-fold direct sum of g.
inline FgAbGroup power(const FgAbGroup& g, std::int64_t n) {
  require(n >= 0, "negative direct-sum exponent");
  std::vector<Integer> t;
  for (std::int64_t i = 0; i < n; ++i) t.insert(t.end(), g.torsion().begin(), g.torsion().end());
  return FgAbGroup::from_cyclic_orders(g.free_rank() * n, std::move(t));
}

// Z (x) G = G, Z/a (x) Z/b = Z/gcd(a,b), extended additively.
inline FgAbGroup tensor(const FgAbGroup& g, const FgAbGroup& h) {
  std::vector<Integer> t;
  for (std::int64_t i = 0; i < h.free_rank(); ++i)
    t.insert(t.end(), g.torsion().begin(), g.torsion().end());
  for (std::int64_t i = 0; i < g.free_rank(); ++i)
    t.insert(t.end(), h.torsion().begin(), h.torsion().end());
  for (const auto& a : g.torsion())
    for (const auto& b : h.torsion()) t.push_back(gcd(a, b));
  return FgAbGroup::from_cyclic_orders(g.free_rank() * h.free_rank(), std::move(t));
}

// Tor(Z, G) = 0, Tor(Z/a, Z/b) = Z/gcd(a,b).
inline FgAbGroup tor(const FgAbGroup& g, const FgAbGroup& h) {
  std::vector<Integer> t;
  for (const auto& a : g.torsion())
    for (const auto& b : h.torsion()) t.push_back(gcd(a, b));
  return FgAbGroup::from_cyclic_orders(0, std::move(t));
}

}  // namespace qsk
