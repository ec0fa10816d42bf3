#include <gtest/gtest.h>

#include "qsk/koszul.hpp"
#include "qsk/selftest.hpp"

using namespace qsk;

namespace {

// Rows of A_p whose basis tuple contains ell, columns whose tuple does not.
IntMatrix extract_minor(const IntMatrix& a, int k, int p, int ell) {
  const auto src = ext_basis(k, p), dst = ext_basis(k, p + 1);
  auto has = [ell](const IndexTuple& t) { return std::find(t.begin(), t.end(), ell) != t.end(); };
  std::vector<std::size_t> rs, cs;
  for (std::size_t i = 0; i < dst.size(); ++i)
    if (has(dst.elements[i])) rs.push_back(i);
  for (std::size_t j = 0; j < src.size(); ++j)
    if (!has(src.elements[j])) cs.push_back(j);
  return a.select(rs, cs);
}

}  // namespace

TEST(ExtBasis, Examples) {
  EXPECT_EQ(ext_basis(3, 2).elements, (std::vector<IndexTuple>{{1, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(ext_basis(5, 0).elements, (std::vector<IndexTuple>{{}}));
  EXPECT_EQ(ext_basis(4, 2).size(), 6u);
  EXPECT_THROW(ext_basis(3, 4), InputError);
  EXPECT_THROW(ext_basis(3, -1), InputError);
}

TEST(ExtBasis, SizesAndOrder) {
  for (int k = 0; k <= 8; ++k)
    for (int p = 0; p <= k; ++p) {
      const auto b = ext_basis(k, p);
      EXPECT_EQ(static_cast<std::int64_t>(b.size()), binomial(k, p));
      EXPECT_TRUE(std::is_sorted(b.elements.begin(), b.elements.end()));
      EXPECT_EQ(std::adjacent_find(b.elements.begin(), b.elements.end()), b.elements.end());
    }
}

TEST(WedgeInsert, Examples) {
  EXPECT_EQ(wedge_insert(2, {1, 3}), (SignedTuple{-1, {1, 2, 3}}));
  EXPECT_EQ(wedge_insert(1, {2, 3}), (SignedTuple{1, {1, 2, 3}}));
  EXPECT_FALSE(wedge_insert(2, {2, 5}).has_value());
  EXPECT_EQ(wedge_insert(4, {1, 2, 3}), (SignedTuple{-1, {1, 2, 3, 4}}));
}

TEST(Differential, Examples) {
  const auto f35 = PrimeFamily::make({3, 5});
  EXPECT_EQ(differential_matrix(f35, 0), IntMatrix::from_rows({{2}, {4}}));
  EXPECT_EQ(differential_matrix(f35, 1), IntMatrix::from_rows({{-4, 2}}));
  const auto top = differential_matrix(f35, 2);
  EXPECT_EQ(top.rows(), 0u);
  EXPECT_EQ(top.cols(), 1u);
  EXPECT_THROW(differential_matrix(f35, 3), InputError);
}

TEST(KoszulComplex, Examples) {
  const auto c35 = koszul_complex(PrimeFamily::make({3, 5}));
  ASSERT_EQ(c35.size(), 3u);
  EXPECT_EQ(c35[1] * c35[0], IntMatrix(1, 1));

  const auto c2 = koszul_complex(PrimeFamily::make({2}));
  ASSERT_EQ(c2.size(), 2u);
  EXPECT_EQ(c2[0], IntMatrix::from_rows({{1}}));

  const auto c357 = koszul_complex(PrimeFamily::make({3, 5, 7}));
  EXPECT_EQ(c357[1] * c357[0], IntMatrix(3, 1));
  EXPECT_TRUE((c357[2] * c357[1]).is_zero());
}

TEST(KoszulComplex, SquareIsZero) {
  checks::Rng rng(1);
  const auto r = checks::check_koszul_dd(rng, 8, 4, 80);
  EXPECT_TRUE(r.ok) << r.first_failure;
}

TEST(KoszulComplex, EntriesDivisibleByG) {
  checks::Rng rng(2);
  for (std::size_t k = 1; k <= 6; ++k)
    for (int c = 0; c < 10; ++c) {
      const auto fam = PrimeFamily::make(checks::random_coprime_tuple(rng, k, 100));
      for (const auto& a : koszul_complex(fam))
        for (const auto& e : a.entries()) EXPECT_TRUE(divides(fam.g(), e));
    }
}

TEST(KoszulComplex, MinorExtractionIsScaledIdentity) {
  checks::Rng rng(4);
  for (std::size_t k = 1; k <= 6; ++k) {
    const auto w = checks::random_coprime_tuple(rng, k, 60);
    const auto cx = koszul_complex(w);
    const int kk = static_cast<int>(k);
    for (int p = 0; p < kk; ++p)
      for (int ell = 1; ell <= kk; ++ell) {
        const auto m = extract_minor(cx[static_cast<std::size_t>(p)], kk, p, ell);
        ASSERT_EQ(static_cast<std::int64_t>(m.rows()), binomial(kk - 1, p));
        ASSERT_EQ(m.rows(), m.cols());
        const Integer scale = w[static_cast<std::size_t>(ell - 1)] - 1;
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j)
            EXPECT_EQ(abs(m(i, j)), i == j ? scale : Integer(0));
      }
  }
}
