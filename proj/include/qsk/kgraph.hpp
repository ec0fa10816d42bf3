#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "qsk/abelian_group.hpp"
#include "qsk/bigint.hpp"
#include "qsk/errors.hpp"
#include "qsk/family.hpp"
#include "qsk/lcmsemi.hpp"

// The k-graph on one vertex with p loops of colour p for each p in S. Paths
// are modelled arithmetically: a path of degree (d_p) is a word of edges and
// its value is the product (m, h) in U.
namespace qsk::kgraph {

struct Edge {
  std::int64_t color;
  std::int64_t label;  // 0 <= label < color

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using Path = std::vector<Edge>;

inline void check_edge(const Edge& e) {
  require(e.color >= 2 && e.label >= 0 && e.label < e.color,
          "edge label " + std::to_string(e.label) + " out of range for colour " +
              std::to_string(e.color));
}

// (m, n) -> (n', m') with n' + q m' = m + p n.
inline std::pair<std::int64_t, std::int64_t> theta(std::int64_t p, std::int64_t q,
                                                   std::int64_t m, std::int64_t n) {
  require(p != q, "theta needs distinct colours");
  check_edge({p, m});
  check_edge({q, n});
  const std::int64_t v = m + p * n;
  return {v % q, v / q};
}

// The flip factorization rule (m, n) -> (n, m).
inline std::pair<std::int64_t, std::int64_t> sigma(std::int64_t p, std::int64_t q,
                                                   std::int64_t m, std::int64_t n) {
  require(p != q, "sigma needs distinct colours");
  check_edge({p, m});
  check_edge({q, n});
  return {n, m};
}

using FactorizationRule =
    std::function<std::pair<std::int64_t, std::int64_t>(std::int64_t, std::int64_t, std::int64_t,
                                                        std::int64_t)>;

// Exhaustive check that theta_{p,q} is a bijection of the p*q label pairs.
inline bool verify_bijection(std::int64_t p, std::int64_t q) {
  require(p >= 2 && q >= 2 && p != q && std::gcd(p, q) == 1, "need distinct coprime p, q >= 2");
  std::vector<char> seen(static_cast<std::size_t>(p * q), 0);
  for (std::int64_t m = 0; m < p; ++m)
    for (std::int64_t n = 0; n < q; ++n) {
      auto [n2, m2] = theta(p, q, m, n);
      if (n2 < 0 || n2 >= q || m2 < 0 || m2 >= p) return false;
      if (n2 + q * m2 != m + p * n) return false;
      auto& slot = seen[static_cast<std::size_t>(n2 * p + m2)];
      if (slot) return false;
      slot = 1;
    }
  return true;
}

// Rewrites m_p + p(m_q + q m_r) through the six factorization steps
// pqr -> prq -> rpq -> rqp -> qrp -> qpr -> pqr and returns
// whether the labels come back unchanged.
inline bool verify_hexagon(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t mp,
                           std::int64_t mq, std::int64_t mr) {
  require(p != q && q != r && p != r, "hexagon needs pairwise distinct colours");
  auto [r1, q1] = theta(q, r, mq, mr);  // mq + q mr = r1 + r q1
  auto [r2, p1] = theta(p, r, mp, r1);  // mp + p r1 = r2 + r p1
  auto [q2, p2] = theta(p, q, p1, q1);  // p1 + p q1 = q2 + q p2
  auto [q3, r3] = theta(r, q, r2, q2);  // r2 + r q2 = q3 + q r3
  auto [p3, r4] = theta(r, p, r3, p2);  // r3 + r p2 = p3 + p r4
  auto [p4, q4] = theta(q, p, q3, p3);  // q3 + q p3 = p4 + p q4
  return p4 == mp && q4 == mq && r4 == mr;
}

inline lcmsemi::SgElem value(const Path& path) {
  lcmsemi::SgElem v = lcmsemi::unit(lcmsemi::Ambient::U);
  for (const auto& e : path) v = lcmsemi::compose(v, {e.label, e.color, lcmsemi::Ambient::U});
  return v;
}

// Rewrites the adjacent pair at (i, i+1) with the rule; colours must differ.
inline Path rewrite_at(Path path, std::size_t i, const FactorizationRule& rule = theta) {
  require(i + 1 < path.size() && path[i].color != path[i + 1].color,
          "rewrite_at needs two adjacent edges of distinct colour");
  const Edge a = path[i], b = path[i + 1];
  auto [n2, m2] = rule(a.color, b.color, a.label, b.label);
  path[i] = {b.color, n2};
  path[i + 1] = {a.color, m2};
  return path;
}

inline std::size_t color_rank(const std::vector<std::int64_t>& order, std::int64_t c) {
  auto it = std::find(order.begin(), order.end(), c);
  require(it != order.end(), "colour " + std::to_string(c) + " missing from colour order");
  return static_cast<std::size_t>(it - order.begin());
}

// Repeatedly rewrites the leftmost adjacent pair whose colours are out of
// order until the colours follow color_order. Each rewrite removes exactly one
// colour inversion, so this terminates.
inline Path normalize_path(Path path, const std::vector<std::int64_t>& color_order,
                           const FactorizationRule& rule = theta) {
  for (const auto& e : path) check_edge(e);
  for (;;) {
    std::size_t i = 0;
    while (i + 1 < path.size() &&
           color_rank(color_order, path[i].color) <= color_rank(color_order, path[i + 1].color))
      ++i;
    if (i + 1 >= path.size()) return path;
    path = rewrite_at(std::move(path), i, rule);
  }
}

// Number of paths of the given degree: prod p^{d_p}.
inline Integer path_count(const PrimeFamily& fam, const std::vector<std::int64_t>& degree) {
  require(degree.size() == fam.size(), "degree vector must have one entry per element of S");
  Integer h = 1;
  for (std::size_t i = 0; i < degree.size(); ++i) {
    require(degree[i] >= 0, "negative degree");
    h *= ipow(fam.elements()[i], static_cast<std::uint64_t>(degree[i]));
  }
  return h;
}

namespace detail {

// Every edge word of the given degree, in any colour order.
inline void for_each_word(const PrimeFamily& fam, std::vector<std::int64_t> remaining, Path& cur,
                          const std::function<void(const Path&)>& f) {
  bool done = true;
  for (std::size_t c = 0; c < remaining.size(); ++c) {
    if (remaining[c] == 0) continue;
    done = false;
    const std::int64_t p = fam.elements()[c];
    --remaining[c];
    for (std::int64_t m = 0; m < p; ++m) {
      cur.push_back({p, m});
      for_each_word(fam, remaining, cur, f);
      cur.pop_back();
    }
    ++remaining[c];
  }
  if (done) f(cur);
}

}  // namespace detail

inline void for_each_word(const PrimeFamily& fam, const std::vector<std::int64_t>& degree,
                          const std::function<void(const Path&)>& f) {
  require(degree.size() == fam.size(), "degree vector must have one entry per element of S");
  Path cur;
  detail::for_each_word(fam, degree, cur, f);
}

// Path classes of the given degree counted by enumeration: all words are
// normalized under `rule` and the distinct normal forms counted.
inline std::size_t enumerate_path_classes(const PrimeFamily& fam,
                                          const std::vector<std::int64_t>& degree,
                                          const FactorizationRule& rule = theta) {
  std::set<Path> forms;
  for_each_word(fam, degree,
                [&](const Path& w) { forms.insert(normalize_path(w, fam.elements(), rule)); });
  return forms.size();
}

// Distinct values (m, h) over all words of the given degree; under theta these
// are exactly {(m, h) : 0 <= m < h}.
inline std::set<lcmsemi::SgElem> enumerate_values(const PrimeFamily& fam,
                                                  const std::vector<std::int64_t>& degree) {
  std::set<lcmsemi::SgElem> vals;
  for_each_word(fam, degree, [&](const Path& w) { vals.insert(value(w)); });
  return vals;
}

// K_*(O_p (x) O_q) by Kunneth from K_*(O_n) = (Z/(n-1), 0).
inline std::pair<FgAbGroup, FgAbGroup> kunneth_oracle(std::int64_t p, std::int64_t q) {
  require(p >= 2 && q >= 2 && p != q && std::gcd(p, q) == 1, "need distinct coprime p, q >= 2");
  const FgAbGroup a = FgAbGroup::cyclic(p - 1), b = FgAbGroup::cyclic(q - 1);
  return {tensor(a, b), tor(a, b)};
}

// theta(p,q,.) tables as rows "m n -> n' m'".
inline std::vector<std::array<std::int64_t, 4>> theta_table(std::int64_t p, std::int64_t q) {
  std::vector<std::array<std::int64_t, 4>> rows;
  for (std::int64_t m = 0; m < p; ++m)
    for (std::int64_t n = 0; n < q; ++n) {
      auto [n2, m2] = theta(p, q, m, n);
      rows.push_back({m, n, n2, m2});
    }
  return rows;
}

}  // namespace qsk::kgraph
