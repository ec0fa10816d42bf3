#include <gtest/gtest.h>

#include <set>

#include "qsk/lcmsemi.hpp"

using namespace qsk;
using namespace qsk::lcmsemi;

namespace {

const PrimeFamily& s235() {
  static const PrimeFamily f = PrimeFamily::make({2, 3, 5});
  return f;
}

SgElem u(std::int64_t m, std::int64_t h) { return SgElem{m, h, Ambient::U}; }

std::vector<Integer> heights(const PrimeFamily& fam, std::int64_t bound) {
  std::vector<Integer> out;
  for (std::int64_t h = 1; h <= bound; ++h)
    if (in_h_plus(h, fam)) out.push_back(h);
  return out;
}

// The principal right ideal xU up to height bound, by enumeration of xU.
std::set<SgElem> ideal_upto(const SgElem& x, const PrimeFamily& fam, std::int64_t bound) {
  std::set<SgElem> out;
  for (const auto& k : heights(fam, bound))
    if (x.h * k <= bound)
      for (Integer n = 0; n < k; ++n) out.insert(compose(x, SgElem{n, k, Ambient::U}));
  return out;
}

}  // namespace

TEST(HPlus, Membership) {
  const auto f = PrimeFamily::make({3, 5});
  EXPECT_EQ(h_plus_membership(45, f), (std::vector<std::int64_t>{2, 1}));
  EXPECT_EQ(h_plus_membership(1, f), (std::vector<std::int64_t>{0, 0}));
  EXPECT_FALSE(h_plus_membership(6, f).has_value());
  EXPECT_THROW(h_plus_membership(0, f), InputError);
  // H+ is generated by the elements, not by their prime factors
  const auto g = PrimeFamily::make({4, 9});
  EXPECT_FALSE(h_plus_membership(2, g).has_value());
  EXPECT_EQ(h_plus_membership(16 * 9, g), (std::vector<std::int64_t>{2, 1}));
}

TEST(Compose, Examples) {
  EXPECT_EQ(compose(u(1, 3), u(2, 5)), u(7, 15));
  EXPECT_EQ(compose(unit(Ambient::U), u(2, 5)), u(2, 5));
  EXPECT_EQ(compose(u(2, 3), u(4, 5)), u(14, 15));
  EXPECT_THROW(compose(u(1, 3), SgElem{1, 3, Ambient::ZxH}), InputError);
}

TEST(Compose, AssociativeWithUnitExhaustive) {
  const auto& f = s235();
  const auto hs = heights(f, 30);
  std::vector<SgElem> elems;
  for (const auto& h : hs)
    for (Integer m = 0; m < h; ++m) elems.push_back(SgElem{m, h, Ambient::U});
  for (const auto& x : elems) {
    EXPECT_EQ(compose(unit(Ambient::U), x), x);
    EXPECT_EQ(compose(x, unit(Ambient::U)), x);
  }
  for (std::size_t i = 0; i < elems.size(); i += 3)
    for (std::size_t j = 0; j < elems.size(); j += 2)
      for (std::size_t k = 0; k < elems.size(); k += 5)
        EXPECT_EQ(compose(compose(elems[i], elems[j]), elems[k]),
                  compose(elems[i], compose(elems[j], elems[k])));
  // the group-like ambient ZxH with negative m
  for (std::int64_t m = -30; m <= 30; m += 7)
    for (const auto& h : hs) {
      const SgElem x{m, h, Ambient::ZxH}, y{-m + 1, 3, Ambient::ZxH}, z{2, h, Ambient::ZxH};
      EXPECT_EQ(compose(compose(x, y), z), compose(x, compose(y, z)));
    }
}

TEST(MakeElem, Validation) {
  const auto& f = s235();
  EXPECT_NO_THROW(make_elem(f, 5, 6, Ambient::U));
  EXPECT_THROW(make_elem(f, 6, 6, Ambient::U), InputError);
  EXPECT_THROW(make_elem(f, 1, 7, Ambient::U), InputError);
  EXPECT_THROW(make_elem(f, -1, 2, Ambient::NxH), InputError);
  EXPECT_NO_THROW(make_elem(f, -100, 2, Ambient::ZxH));
}

TEST(RightLcm, Examples) {
  EXPECT_EQ(right_lcm(u(1, 3), u(2, 5)), u(7, 15));
  EXPECT_FALSE(right_lcm(u(0, 2), u(1, 2)).has_value());
  EXPECT_EQ(right_lcm(u(4, 6), u(4, 6)), u(4, 6));
  EXPECT_EQ(right_lcm(SgElem{-1, 2, Ambient::ZxH}, SgElem{0, 3, Ambient::ZxH}),
            (SgElem{3, 6, Ambient::ZxH}));
  EXPECT_EQ(right_lcm(SgElem{7, 2, Ambient::NxH}, SgElem{0, 3, Ambient::NxH}),
            (SgElem{9, 6, Ambient::NxH}));
}

TEST(RightLcm, LeastUpperBoundBruteForce) {
  const auto& f = s235();
  const std::int64_t bound = 60;
  std::vector<SgElem> elems;
  for (const auto& h : heights(f, 12))
    for (Integer m = 0; m < h; ++m) elems.push_back(u(static_cast<std::int64_t>(m), static_cast<std::int64_t>(h)));
  for (const auto& x : elems)
    for (const auto& y : elems) {
      const auto ix = ideal_upto(x, f, bound), iy = ideal_upto(y, f, bound);
      std::set<SgElem> meet;
      for (const auto& e : ix)
        if (iy.count(e)) meet.insert(e);
      const auto l = right_lcm(x, y);
      if (!l) {
        EXPECT_TRUE(meet.empty()) << x.to_string() << " " << y.to_string();
        continue;
      }
      EXPECT_EQ(ideal_upto(*l, f, bound), meet) << x.to_string() << " " << y.to_string();
      for (const auto& e : meet) {
        EXPECT_TRUE(in_ideal(x, e));
        EXPECT_TRUE(in_ideal(y, e));
      }
    }
}

TEST(RightLcm, NxHAgreesWithEnumeration) {
  for (std::int64_t m1 = 0; m1 < 12; ++m1)
    for (std::int64_t m2 = 0; m2 < 12; ++m2)
      for (std::int64_t h1 : {1, 2, 3, 4, 6})
        for (std::int64_t h2 : {1, 2, 5, 10}) {
          const SgElem x{m1, h1, Ambient::NxH}, y{m2, h2, Ambient::NxH};
          const auto l = right_lcm(x, y);
          // least m >= 0 reachable from both with height lcm
          std::optional<std::int64_t> best;
          const std::int64_t hl = std::lcm(h1, h2);
          for (std::int64_t m = 0; m < 200 && !best; ++m)
            if (in_ideal(x, SgElem{m, hl, Ambient::NxH}) && in_ideal(y, SgElem{m, hl, Ambient::NxH})) best = m;
          ASSERT_EQ(l.has_value(), best.has_value());
          if (l) {
            EXPECT_EQ(*l, (SgElem{*best, hl, Ambient::NxH}));
          }
        }
}

TEST(ZappaSzep, Examples) {
  EXPECT_EQ(zappa_szep(u(0, 3)), std::make_pair(u(1, 3), 0));
  EXPECT_EQ(zappa_szep(u(2, 3)), std::make_pair(u(0, 3), 1));
  EXPECT_EQ(zappa_szep(u(4, 5)), std::make_pair(u(0, 5), 1));
}

TEST(ZappaSzep, Odometer) {
  for (std::int64_t h = 1; h <= 100; ++h)
    for (std::int64_t m = 0; m < h; ++m) {
      SgElem x = u(m, h);
      int total = 0;
      for (std::int64_t i = 0; i < h; ++i) {
        auto [y, r] = zappa_szep(x);
        x = y;
        total += r;
      }
      EXPECT_EQ(x, u(m, h));
      EXPECT_EQ(total, 1);
    }
}

TEST(FoundationSet, Examples) {
  EXPECT_TRUE(is_foundation_set({u(0, 2), u(1, 2)}));
  EXPECT_FALSE(is_foundation_set({u(0, 2)}));
  std::vector<SgElem> all;
  for (std::int64_t m = 0; m < 15; ++m) all.push_back(u(m, 15));
  EXPECT_TRUE(is_foundation_set(all));
  EXPECT_TRUE(is_foundation_set({u(0, 2), u(1, 3), u(2, 3), u(3, 6)}));
  // 5 + 6Z is missed
  EXPECT_FALSE(is_foundation_set({u(0, 2), u(0, 3), u(1, 3)}));
}

TEST(FoundationSet, ResidueTestMatchesBruteForce) {
  // Brute force: every t in U with h_t <= 60 (a multiple of every lcm here)
  // meets some fU.
  const auto& f = s235();
  std::vector<SgElem> pool;
  for (const auto& h : heights(f, 6))
    for (Integer m = 0; m < h; ++m) pool.push_back(u(static_cast<std::int64_t>(m), static_cast<std::int64_t>(h)));
  std::vector<SgElem> tests;
  for (const auto& h : heights(f, 60))
    for (Integer m = 0; m < h; ++m) tests.push_back(u(static_cast<std::int64_t>(m), static_cast<std::int64_t>(h)));
  for (std::size_t mask = 1; mask < (std::size_t{1} << 10); mask = mask * 3 + 1) {
    for (std::size_t shift = 0; shift + 10 <= pool.size(); shift += 4) {
      std::vector<SgElem> cand;
      for (std::size_t b = 0; b < 10; ++b)
        if (mask >> b & 1) cand.push_back(pool[shift + b]);
      if (cand.empty()) continue;
      bool brute = true;
      for (const auto& t : tests) {
        bool hit = false;
        for (const auto& e : cand) hit = hit || right_lcm(t, e).has_value();
        brute = brute && hit;
      }
      EXPECT_EQ(is_foundation_set(cand), brute);
    }
  }
}

TEST(AccurateRefinement, Examples) {
  std::vector<SgElem> six;
  for (std::int64_t m = 0; m < 6; ++m) six.push_back(u(m, 6));
  EXPECT_EQ(accurate_refinement({u(0, 2), u(1, 3), u(2, 3), u(3, 6)}).size(), 6u);
  EXPECT_EQ(accurate_refinement({u(0, 2), u(1, 2), u(0, 3)}), six);
  EXPECT_EQ(accurate_refinement({u(0, 2), u(1, 2)}), (std::vector<SgElem>{u(0, 2), u(1, 2)}));
  EXPECT_EQ(accurate_refinement({u(0, 3), u(1, 3), u(2, 3)}),
            (std::vector<SgElem>{u(0, 3), u(1, 3), u(2, 3)}));
  EXPECT_THROW(accurate_refinement({u(0, 2)}), InputError);
}

TEST(AccurateRefinement, DisjointCoveringRefining) {
  const std::vector<std::vector<SgElem>> inputs = {
      {u(0, 2), u(1, 3), u(2, 3), u(3, 6)}, {u(1, 2), u(0, 4), u(2, 4)}, {u(0, 5), u(1, 5), u(2, 5), u(3, 5), u(4, 10), u(9, 10)}};
  for (const auto& f : inputs) {
    ASSERT_TRUE(is_foundation_set(f));
    const auto r = accurate_refinement(f);
    for (std::size_t i = 0; i < r.size(); ++i) {
      for (std::size_t j = i + 1; j < r.size(); ++j) EXPECT_FALSE(right_lcm(r[i], r[j]).has_value());
      bool inside = false;
      for (const auto& e : f) inside = inside || in_ideal(e, r[i]);
      EXPECT_TRUE(inside);
    }
    EXPECT_TRUE(is_foundation_set(r));
  }
}
