#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qsk/abelian_group.hpp"
#include "qsk/errors.hpp"
#include "qsk/family.hpp"
#include "qsk/koszul.hpp"
#include "qsk/smith.hpp"

namespace qsk {

enum class QParity { even = 0, odd = 1 };

inline const char* to_string(QParity q) { return q == QParity::even ? "even" : "odd"; }

// Entries E^{p,q} of one page, q taken mod 2 (Bott periodicity). Missing
// entries are trivial.
struct SpectralPage {
  int page_index = 1;
  int k = 0;
  // E_1 entries are free N-modules N^r; they are stored as Z^r with this
  // flag set. N itself is never represented.
  bool n_coefficients = false;
  std::map<std::pair<int, QParity>, FgAbGroup> entries;

  FgAbGroup at(int p, QParity q) const {
    auto it = entries.find({p, q});
    return it == entries.end() ? FgAbGroup{} : it->second;
  }
};

// g with every prime factor lying in `primes` removed; N / gN = Z / result.
inline Integer n_quotient(Integer g, std::span<const std::int64_t> primes) {
  require(g >= 1, "n_quotient: g must be positive");
  for (auto q : primes)
    while (g % q == 0) g /= q;
  return g;
}

inline SpectralPage e1_page(const PrimeFamily& fam) {
  SpectralPage page;
  page.page_index = 1;
  page.k = static_cast<int>(fam.size());
  page.n_coefficients = true;
  for (int p = 0; p <= page.k; ++p)
    page.entries[{p, QParity::even}] = FgAbGroup::free(binomial(page.k, p));
  return page;
}

namespace detail {

// ker h^p / im h^{p-1} for the Koszul complex of `weights`, all p.
inline std::vector<FgAbGroup> koszul_cohomology(std::span<const std::int64_t> weights) {
  const auto complex = koszul_complex(weights);
  const int k = static_cast<int>(weights.size());
  std::vector<FgAbGroup> out;
  for (int p = 0; p <= k; ++p) {
    const IntMatrix& d_out = complex[static_cast<std::size_t>(p)];
    const IntMatrix d_in = p == 0 ? IntMatrix(1, 0) : complex[static_cast<std::size_t>(p - 1)];
    out.push_back(cohomology(d_out, d_in));
  }
  return out;
}

}  // namespace detail

// E_2 of the action of the subgroup generated by the k smallest elements.
// Computed by the closed form (Z/g_k')^C(k-1,p-1) and independently by SNF
// cohomology of the Koszul complex followed by N (x) -; the two must agree.
inline SpectralPage e2_page(const PrimeFamily& fam, std::size_t k) {
  require(k >= 1 && k <= fam.size(), "e2_page: subset size must be in 1..|S|");
  const std::span<const std::int64_t> weights(fam.elements().data(), k);
  std::int64_t g_k = 0;
  for (auto w : weights) g_k = std::gcd(g_k, w - 1);
  const Integer g_prime = n_quotient(g_k, fam.primes());

  SpectralPage page;
  page.page_index = 2;
  page.k = static_cast<int>(k);
  const auto brute = detail::koszul_cohomology(weights);
  for (int p = 0; p <= page.k; ++p) {
    const FgAbGroup closed =
        p >= 1 ? power(FgAbGroup::cyclic(g_prime), binomial(page.k - 1, p - 1)) : FgAbGroup{};
    const FgAbGroup& integral = brute[static_cast<std::size_t>(p)];
    ensure(integral.is_torsion(), "Koszul cohomology has a free summand");
    std::vector<Integer> factors;
    for (const auto& t : integral.torsion()) factors.push_back(n_quotient(t, fam.primes()));
    const FgAbGroup via_n = FgAbGroup::from_cyclic_orders(0, std::move(factors));
    ensure(via_n == closed, "E2 closed form disagrees with Koszul cohomology at p=" +
                                std::to_string(p) + ": " + closed.to_string() + " vs " +
                                via_n.to_string());
    if (!closed.is_trivial()) page.entries[{p, QParity::even}] = closed;
  }
  return page;
}

enum class KStatus { exact, bounds_with_conjecture };

inline const char* to_string(KStatus s) {
  return s == KStatus::exact ? "exact" : "bounds_with_conjecture";
}

// One K-group Z^free_rank + torsion. When the torsion is not determined,
// `torsion` is empty and `torsion_bound` lists the E_infinity layers it is
// an iterated extension of; each layer is a subquotient of the listed group.
struct KGroup {
  std::int64_t free_rank = 0;
  std::optional<FgAbGroup> torsion;
  std::vector<FgAbGroup> torsion_bound;
};

struct KTheoryResult {
  PrimeFamily fam;
  KGroup k0;
  KGroup k1;
  std::string unit_class;
  KStatus status = KStatus::exact;
  std::optional<FgAbGroup> conjectured_torsion;
  std::optional<Integer> torsion_order_bound;
  SpectralPage e2;
};

// E_inf layers contributing to K_i of the torsion part: entries (p, q) with
// p + q = i + k (mod 2). Only q even carries anything.
inline std::vector<FgAbGroup> layers_for_degree(const SpectralPage& page, int i) {
  std::vector<FgAbGroup> out;
  for (int p = 0; p <= page.k; ++p)
    if ((p - i - page.k) % 2 == 0 && !page.at(p, QParity::even).is_trivial())
      out.push_back(page.at(p, QParity::even));
  return out;
}

inline KTheoryResult assemble_k_theory(const PrimeFamily& fam) {
  const auto k = static_cast<std::int64_t>(fam.size());
  const Integer g = fam.g();
  ensure(n_quotient(g, fam.primes()) == g, "g_S shares a prime with P");

  KTheoryResult r{fam, {}, {}, "0", KStatus::exact, std::nullopt, std::nullopt,
                  e2_page(fam, fam.size())};
  r.k0.free_rank = r.k1.free_rank = std::int64_t{1} << (k - 1);
  r.k0.torsion_bound = layers_for_degree(r.e2, 0);
  r.k1.torsion_bound = layers_for_degree(r.e2, 1);

  for (const auto& layers : {r.k0.torsion_bound, r.k1.torsion_bound})
    for (const auto& layer : layers)
      for (const auto& t : layer.torsion()) ensure(divides(t, g), "torsion factor does not divide g");

  if (g == 1 || k <= 2) {
    // k <= 2: at most one layer per degree, and d_2 (and beyond) lands in the
    // odd row or outside 0..k, so E_2 = E_inf with no extension problem.
    ensure(r.k0.torsion_bound.size() <= 1 && r.k1.torsion_bound.size() <= 1,
           "collapse expected for |S| <= 2");
    auto single = [](const std::vector<FgAbGroup>& v) { return v.empty() ? FgAbGroup{} : v[0]; };
    r.k0.torsion = single(r.k0.torsion_bound);
    r.k1.torsion = single(r.k1.torsion_bound);

    const FgAbGroup zg = FgAbGroup::cyclic(g);
    const FgAbGroup expect0 = zg;
    const FgAbGroup expect1 = k == 1 ? FgAbGroup{} : zg;
    ensure(*r.k0.torsion == expect0 && *r.k1.torsion == expect1,
           "spectral page disagrees with the closed-form K-theory");
    r.unit_class = r.k0.torsion->is_trivial() ? "0" : "(0,1)";
    r.status = KStatus::exact;
  } else {
    r.status = KStatus::bounds_with_conjecture;
    const std::int64_t e = std::int64_t{1} << (k - 2);
    r.conjectured_torsion = power(FgAbGroup::cyclic(g), e);
    r.torsion_order_bound = ipow(g, static_cast<std::uint64_t>(e));
    r.unit_class = "(0,e_1) conjectural";
  }
  return r;
}

// k = 1 torsion from the Pimsner-Voiculescu type sequence:
// K_0 = N/(p-1)N, K_1 = 0.
inline std::pair<FgAbGroup, FgAbGroup> pv_rank_one_oracle(const PrimeFamily& fam, std::int64_t p) {
  require(fam.contains(p), "pv_rank_one_oracle: " + std::to_string(p) + " is not in S");
  return {FgAbGroup::cyclic(n_quotient(p - 1, fam.primes())), FgAbGroup{}};
}

}  // namespace qsk
