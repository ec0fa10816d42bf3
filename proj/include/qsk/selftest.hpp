#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "qsk/abelian_group.hpp"
#include "qsk/errors.hpp"
#include "qsk/family.hpp"
#include "qsk/int_matrix.hpp"
#include "qsk/kgraph.hpp"
#include "qsk/koszul.hpp"
#include "qsk/monocalc.hpp"
#include "qsk/smith.hpp"
#include "qsk/specseq.hpp"

// Randomized and exhaustive invariant checks shared by `qsk selftest` and the
// acceptance runner.
namespace qsk::checks {

using Rng = std::mt19937_64;

struct CheckResult {
  std::string name;
  bool ok = true;
  std::size_t cases = 0;
  std::string first_failure;
  double seconds = 0;

  void record(bool pass, const std::function<std::string()>& what) {
    ++cases;
    if (!pass && ok) {
      ok = false;
      first_failure = what();
    }
  }
};

// Runs body(result) and fills in the elapsed time; exceptions count as a
// failure of the check.
inline CheckResult timed(const std::string& name, const std::function<void(CheckResult&)>& body) {
  CheckResult r;
  r.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.ok = false;
    if (r.first_failure.empty()) r.first_failure = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, std::int64_t bound) {
  IntMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = uniform(rng, -bound, bound);
  return a;
}

// k distinct pairwise coprime integers in [2, max_elem].
inline std::vector<std::int64_t> random_coprime_tuple(Rng& rng, std::size_t k,
                                                      std::int64_t max_elem) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::int64_t> out;
    for (int tries = 0; out.size() < k && tries < 2000; ++tries) {
      const std::int64_t x = uniform(rng, 2, max_elem);
      bool ok = true;
      for (auto y : out) ok = ok && std::gcd(x, y) == 1;
      if (ok) out.push_back(x);
    }
    if (out.size() == k) return out;
  }
  throw InputError("could not draw " + std::to_string(k) + " pairwise coprime integers <= " +
                   std::to_string(max_elem));
}

inline bool is_unimodular(const IntMatrix& m) { return abs(determinant(m)) == 1; }

inline std::string describe(const IntMatrix& a) { return "matrix\n" + format_matrix(a); }

// S A T = D, unimodular S and T, divisibility chain and agreement with the
// determinant divisors d_i = gcd of the i x i minors.
inline bool snf_properties_hold(const IntMatrix& a) {
  const SnfResult r = snf(a);
  if (!(r.s * a * r.t == r.d)) return false;
  if (!is_unimodular(r.s) || !is_unimodular(r.t)) return false;
  for (std::size_t i = 0; i < r.d.rows(); ++i)
    for (std::size_t j = 0; j < r.d.cols(); ++j) {
      if (i != j && r.d(i, j) != 0) return false;
      if (i == j && i < r.rank() && r.d(i, i) != r.divisors[i]) return false;
      if (i == j && i >= r.rank() && r.d(i, i) != 0) return false;
    }
  for (std::size_t i = 0; i < r.rank(); ++i) {
    if (r.divisors[i] <= 0) return false;
    if (i + 1 < r.rank() && r.divisors[i + 1] % r.divisors[i] != 0) return false;
  }
  const std::vector<Integer> dd = determinant_divisors(a);
  Integer prod = 1;
  for (std::size_t i = 0; i < dd.size(); ++i) {
    if (i < r.rank()) {
      prod *= r.divisors[i];
      if (dd[i] != prod) return false;
    } else if (dd[i] != 0) {
      return false;
    }
  }
  return true;
}

inline CheckResult check_snf_random(Rng& rng, std::size_t count, std::size_t max_dim,
                                    std::int64_t bound) {
  return timed("snf properties", [&](CheckResult& r) {
    for (std::size_t c = 0; c < count; ++c) {
      const auto rows = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_dim)));
      const auto cols = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_dim)));
      // Mix in low-rank matrices so the zero tail is exercised.
      IntMatrix a = random_matrix(rng, rows, cols, bound);
      if (c % 5 == 4 && rows > 1) {
        const IntMatrix b = random_matrix(rng, rows, 1, 5), d = random_matrix(rng, 1, cols, 5);
        a = b * d;
      }
      r.record(snf_properties_hold(a), [&] { return describe(a); });
    }
  });
}

inline CheckResult check_koszul_dd(Rng& rng, std::size_t max_k, std::size_t per_k,
                                   std::int64_t max_elem) {
  return timed("koszul d o d = 0", [&](CheckResult& r) {
    for (std::size_t k = 1; k <= max_k; ++k)
      for (std::size_t c = 0; c < per_k; ++c) {
        const auto w = random_coprime_tuple(rng, k, max_elem);
        const auto cx = koszul_complex(w);
        for (std::size_t p = 0; p + 1 < cx.size(); ++p)
          r.record((cx[p + 1] * cx[p]).is_zero(),
                   [&] { return "k=" + std::to_string(k) + " p=" + std::to_string(p); });
      }
  });
}

inline std::string tuple_string(const std::vector<std::int64_t>& w) {
  std::string out;
  for (auto x : w) out += (out.empty() ? "" : ",") + std::to_string(x);
  return "{" + out + "}";
}

// Brute-force SNF cohomology of the Koszul complex against (Z/g_k)^C(k-1,p-1).
inline CheckResult check_koszul_cohomology(Rng& rng, std::size_t max_k, std::size_t per_k,
                                           std::int64_t max_elem) {
  return timed("koszul cohomology oracle", [&](CheckResult& r) {
    for (std::size_t k = 1; k <= max_k; ++k)
      for (std::size_t c = 0; c < per_k; ++c) {
        const auto w = random_coprime_tuple(rng, k, max_elem);
        std::int64_t g = 0;
        for (auto x : w) g = std::gcd(g, x - 1);
        const auto got = detail::koszul_cohomology(w);
        const auto kk = static_cast<std::int64_t>(k);
        for (std::int64_t p = 0; p <= kk; ++p) {
          const FgAbGroup expect =
              p >= 1 ? power(FgAbGroup::cyclic(g), binomial(kk - 1, p - 1)) : FgAbGroup{};
          r.record(got[static_cast<std::size_t>(p)] == expect, [&] {
            return tuple_string(w) + " p=" + std::to_string(p) + ": " +
                   got[static_cast<std::size_t>(p)].to_string() + " != " + expect.to_string();
          });
        }
        // The N-coefficient page goes through the same route internally.
        const auto fam = PrimeFamily::make(w);
        r.record(e2_page(fam, fam.size()).k == static_cast<int>(k), [&] { return tuple_string(w); });
      }
  });
}

inline CheckResult check_binomial_identity(std::int64_t max_k) {
  return timed("parity binomial identity", [&](CheckResult& r) {
    for (std::int64_t k = 2; k <= max_k; ++k) {
      std::int64_t odd = 0, even = 0;
      for (std::int64_t l = 1; l <= k; ++l) (l % 2 ? odd : even) += binomial(k - 1, l - 1);
      const std::int64_t e = std::int64_t{1} << (k - 2);
      r.record(odd == e && even == e, [&] { return "k=" + std::to_string(k); });
    }
  });
}

inline CheckResult check_theta_bijection(std::int64_t max_elem) {
  return timed("theta bijection", [&](CheckResult& r) {
    for (std::int64_t p = 2; p <= max_elem; ++p)
      for (std::int64_t q = 2; q <= max_elem; ++q)
        if (p != q && std::gcd(p, q) == 1)
          r.record(kgraph::verify_bijection(p, q),
                   [&] { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; });
  });
}

inline void hexagons_for(CheckResult& r, std::int64_t p, std::int64_t q, std::int64_t s) {
  for (std::int64_t a = 0; a < p; ++a)
    for (std::int64_t b = 0; b < q; ++b)
      for (std::int64_t c = 0; c < s; ++c)
        r.record(kgraph::verify_hexagon(p, q, s, a, b, c), [&] {
          return "(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(s) +
                 ") labels " + std::to_string(a) + "," + std::to_string(b) + "," +
                 std::to_string(c);
        });
}

// Every ordered pairwise coprime triple of distinct integers >= 2 with
// p q r <= max_product, all labels.
inline CheckResult check_hexagons(std::int64_t max_product) {
  return timed("hexagon", [&](CheckResult& r) {
    for (std::int64_t p = 2; p * 6 <= max_product; ++p)
      for (std::int64_t q = 2; p * q * 2 <= max_product; ++q)
        for (std::int64_t s = 2; p * q * s <= max_product; ++s)
          if (p != q && q != s && p != s && std::gcd(p, q) == 1 && std::gcd(q, s) == 1 &&
              std::gcd(p, s) == 1)
            hexagons_for(r, p, q, s);
  });
}

// All degrees of S with h = prod p^{d_p} <= max_h: the word count equals h, the
// classes under theta number h, and the values are exactly {(m,h) : m < h}.
inline void path_counts_for(CheckResult& r, const PrimeFamily& fam, std::int64_t max_h) {
  std::vector<std::int64_t> degree(fam.size(), 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t h) {
    if (i == fam.size()) {
      const Integer count = kgraph::path_count(fam, degree);
      std::int64_t words = 0;
      kgraph::for_each_word(fam, degree, [&](const kgraph::Path&) { ++words; });
      std::int64_t multinomial = h;  // words = h * (number of colour orderings)
      std::int64_t len = 0;
      for (auto d : degree) len += d;
      std::int64_t orderings = 1, used = 0;
      for (auto d : degree)
        for (std::int64_t j = 1; j <= d; ++j) orderings = orderings * (++used) / j;
      multinomial *= orderings;
      const auto classes = kgraph::enumerate_path_classes(fam, degree);
      const auto values = kgraph::enumerate_values(fam, degree);
      bool values_ok = Integer(values.size()) == count;
      for (const auto& v : values) values_ok = values_ok && v.h == count && v.m >= 0 && v.m < v.h;
      r.record(count == h && words == multinomial && Integer(classes) == count && values_ok, [&] {
        return "S=" + tuple_string(fam.elements()) + " degree " + tuple_string(degree) +
               " length " + std::to_string(len);
      });
      return;
    }
    for (std::int64_t d = 0, hh = h; hh <= max_h; ++d, hh *= fam.elements()[i]) {
      degree[i] = d;
      rec(i + 1, hh);
    }
    degree[i] = 0;
  };
  rec(0, 1);
}

inline CheckResult check_path_counts(const std::vector<PrimeFamily>& fams, std::int64_t max_h) {
  return timed("path counts", [&](CheckResult& r) {
    for (const auto& f : fams) path_counts_for(r, f, max_h);
  });
}

// Rewriting pairs in any order and then normalizing lands on the same normal
// form, and rewrites never change the value of the path.
inline CheckResult check_normalization_confluence(Rng& rng, const PrimeFamily& fam,
                                                  std::size_t count) {
  return timed("normalization confluence", [&](CheckResult& r) {
    for (std::size_t c = 0; c < count; ++c) {
      kgraph::Path w;
      const auto len = uniform(rng, 0, 6);
      for (std::int64_t i = 0; i < len; ++i) {
        const auto p = fam.elements()[static_cast<std::size_t>(
            uniform(rng, 0, static_cast<std::int64_t>(fam.size()) - 1))];
        w.push_back({p, uniform(rng, 0, p - 1)});
      }
      const auto normal = kgraph::normalize_path(w, fam.elements());
      // random out-of-order rewrites first, then normalize
      kgraph::Path v = w;
      for (int step = 0; step < 10 && v.size() > 1; ++step) {
        const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(v.size()) - 2));
        if (v[i].color != v[i + 1].color) v = kgraph::rewrite_at(v, i);
      }
      r.record(kgraph::normalize_path(v, fam.elements()) == normal &&
                   kgraph::value(v) == kgraph::value(w),
               [&] { return "word of length " + std::to_string(w.size()); });
    }
  });
}

inline CheckResult check_kunneth(std::int64_t max_elem) {
  return timed("kunneth consistency", [&](CheckResult& r) {
    for (std::int64_t p = 2; p <= max_elem; ++p)
      for (std::int64_t q = p + 1; q <= max_elem; ++q) {
        if (std::gcd(p, q) != 1) continue;
        const auto [k0, k1] = kgraph::kunneth_oracle(p, q);
        const auto fam = PrimeFamily::make({p, q});
        const auto res = assemble_k_theory(fam);
        r.record(res.status == KStatus::exact && res.k0.torsion && *res.k0.torsion == k0 &&
                     res.k1.torsion && *res.k1.torsion == k1,
                 [&] { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; });
      }
  });
}

inline CheckResult check_relations(const std::vector<PrimeFamily>& fams) {
  return timed("monocalc relations", [&](CheckResult& r) {
    for (const auto& f : fams)
      for (const auto& [rel, name] : monocalc::relation_names()) {
        const auto rep = monocalc::check_relation(rel, f);
        r.record(rep.ok, [&, n = name] {
          return "S=" + tuple_string(f.elements()) + " " + n + ": " + rep.first_failure;
        });
      }
  });
}

// ---------------------------------------------------------------------------
// Random words in the generators.

struct Word {
  std::vector<std::pair<monocalc::Symbol, std::int64_t>> letters;
};

inline Word random_word(Rng& rng, const PrimeFamily& fam, std::size_t max_len) {
  Word w;
  const auto len = uniform(rng, 0, static_cast<std::int64_t>(max_len));
  for (std::int64_t i = 0; i < len; ++i) {
    const auto sym = static_cast<monocalc::Symbol>(uniform(rng, 0, 3));
    const auto p = fam.elements()[static_cast<std::size_t>(
        uniform(rng, 0, static_cast<std::int64_t>(fam.size()) - 1))];
    w.letters.emplace_back(sym, p);
  }
  return w;
}

inline monocalc::MonomialOp evaluate(const Word& w, const PrimeFamily& fam) {
  monocalc::MonomialOp x = monocalc::MonomialOp::identity();
  for (const auto& [sym, p] : w.letters) x = monocalc::compose(x, monocalc::generator(sym, fam, p));
  return x;
}

// Applies the letters right to left to a single basis index.
inline std::optional<Integer> simulate(const Word& w, Integer n) {
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    const auto& [sym, p] = *it;
    switch (sym) {
      case monocalc::Symbol::u: n += 1; break;
      case monocalc::Symbol::u_inverse: n -= 1; break;
      case monocalc::Symbol::s: n *= p; break;
      case monocalc::Symbol::s_star:
        if (n % p != 0) return std::nullopt;
        n /= p;
        break;
    }
  }
  return n;
}

inline Integer window_modulus(const monocalc::MonomialOp& x, const monocalc::MonomialOp& y) {
  return lcm(x.domain().modulus, y.domain().modulus);
}

inline bool equal_on_window(const monocalc::MonomialOp& x, const monocalc::MonomialOp& y) {
  const Integer l = window_modulus(x, y);
  for (Integer n = -4 * l; n <= 4 * l; ++n)
    if (x.apply(n) != y.apply(n)) return false;
  return true;
}

// The word evaluates to one affine map on one coset (the closed form agrees
// with letter-by-letter simulation), adjoint is an involution and
// x x^* x = x.
inline CheckResult check_words(Rng& rng, const PrimeFamily& fam, std::size_t count,
                               std::size_t max_len) {
  return timed("monomial words", [&](CheckResult& r) {
    for (std::size_t c = 0; c < count; ++c) {
      const Word w = random_word(rng, fam, max_len);
      const auto x = evaluate(w, fam);
      const Integer l = x.domain().modulus;
      bool sim_ok = true;
      if (l <= 20000)
        for (Integer n = -4 * l; n <= 4 * l && sim_ok; ++n) sim_ok = simulate(w, n) == x.apply(n);
      const auto xs = monocalc::adjoint(x);
      r.record(sim_ok && monocalc::adjoint(xs) == x &&
                   monocalc::compose(monocalc::compose(x, xs), x) == x &&
                   (x.is_zero() || monocalc::compose(xs, x) == monocalc::MonomialOp::identity_on(x.domain())),
               [&] { return "word " + x.to_string(); });
    }
  });
}

// Structural equality agrees with pointwise equality on [-4L, 4L]. Equal pairs
// are produced by inserting identities u u^{-1}, s_p^* s_p into a word.
inline CheckResult check_window_equality(Rng& rng, const PrimeFamily& fam, std::size_t count,
                                         std::size_t max_len) {
  return timed("window equality", [&](CheckResult& r) {
    for (std::size_t c = 0; c < count; ++c) {
      const Word a = random_word(rng, fam, max_len);
      Word b = c % 2 ? random_word(rng, fam, max_len) : a;
      if (c % 2 == 0) {
        const auto pos = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(b.letters.size())));
        const auto p = fam.elements()[0];
        if (uniform(rng, 0, 1))
          b.letters.insert(b.letters.begin() + static_cast<std::ptrdiff_t>(pos),
                           {{monocalc::Symbol::u, p}, {monocalc::Symbol::u_inverse, p}});
        else
          b.letters.insert(b.letters.begin() + static_cast<std::ptrdiff_t>(pos),
                           {{monocalc::Symbol::s_star, p}, {monocalc::Symbol::s, p}});
      }
      const auto x = evaluate(a, fam), y = evaluate(b, fam);
      if (window_modulus(x, y) > 20000) continue;
      r.record((x == y) == equal_on_window(x, y),
               [&] { return x.to_string() + " vs " + y.to_string(); });
    }
  });
}

inline std::vector<PrimeFamily> relation_corpus() {
  return {PrimeFamily::make({2}), PrimeFamily::make({3, 5}), PrimeFamily::make({2, 3, 5}),
          PrimeFamily::make({3, 5, 7})};
}

// The quick suite behind `qsk selftest`.
inline std::vector<CheckResult> run_selftest(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckResult> out;
  out.push_back(check_snf_random(rng, 200, 6, 30));
  out.push_back(check_koszul_dd(rng, 6, 5, 60));
  out.push_back(check_koszul_cohomology(rng, 5, 10, 60));
  out.push_back(check_binomial_identity(20));
  out.push_back(check_theta_bijection(20));
  out.push_back(check_hexagons(300));
  out.push_back(check_path_counts({PrimeFamily::make({2, 3}), PrimeFamily::make({3, 5, 7})}, 60));
  out.push_back(check_normalization_confluence(rng, PrimeFamily::make({2, 3, 5}), 200));
  out.push_back(check_kunneth(15));
  out.push_back(check_relations({PrimeFamily::make({2}), PrimeFamily::make({3, 5})}));
  out.push_back(check_words(rng, PrimeFamily::make({2, 3}), 200, 8));
  out.push_back(check_window_equality(rng, PrimeFamily::make({2, 3}), 200, 8));
  return out;
}

}  // namespace qsk::checks
