#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "qsk/bigint.hpp"
#include "qsk/errors.hpp"

namespace qsk {

// A finite family S of pairwise relatively prime integers >= 2, with the
// derived data g = gcd{p - 1}, the prime set P and the formal product d of P.
class PrimeFamily {
 public:
  static constexpr std::int64_t kMaxElement = 1'000'000'000'000;

  static PrimeFamily make(std::vector<std::int64_t> elements) {
    require(!elements.empty(), "the family must be non-empty");
    for (auto p : elements) {
      require(p >= 2, "element " + std::to_string(p) + " is < 2");
      require(p <= kMaxElement, "element " + std::to_string(p) + " is too large");
    }
    std::sort(elements.begin(), elements.end());
    for (std::size_t i = 0; i < elements.size(); ++i)
      for (std::size_t j = i + 1; j < elements.size(); ++j) {
        const auto g = std::gcd(elements[i], elements[j]);
        require(g == 1, "elements are not relatively prime: gcd(" + std::to_string(elements[i]) +
                            "," + std::to_string(elements[j]) + ")=" + std::to_string(g));
      }
    PrimeFamily f;
    f.s_ = std::move(elements);
    f.g_ = 0;
    for (auto p : f.s_) f.g_ = std::gcd(f.g_, p - 1);
    for (auto p : f.s_)
      for (auto q : prime_factors(p)) f.primes_.push_back(q);
    std::sort(f.primes_.begin(), f.primes_.end());
    return f;
  }

  const std::vector<std::int64_t>& elements() const { return s_; }
  std::size_t size() const { return s_.size(); }
  std::int64_t g() const { return g_; }
  const std::vector<std::int64_t>& primes() const { return primes_; }

  // "2*3*7"
  std::string d_label() const {
    std::string out;
    for (auto p : primes_) {
      if (!out.empty()) out += '*';
      out += std::to_string(p);
    }
    return out;
  }

  // The k smallest elements as a family in their own right.
  PrimeFamily prefix(std::size_t k) const {
    require(k >= 1 && k <= s_.size(), "subset size out of range");
    return make({s_.begin(), s_.begin() + static_cast<std::ptrdiff_t>(k)});
  }

  bool contains(std::int64_t p) const { return std::binary_search(s_.begin(), s_.end(), p); }

  friend bool operator==(const PrimeFamily&, const PrimeFamily&) = default;

  static std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t q = 2; q * q <= n; ++q) {
      if (n % q) continue;
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
    if (n > 1) out.push_back(n);
    return out;
  }

 private:
  PrimeFamily() = default;

  std::vector<std::int64_t> s_;
  std::int64_t g_ = 0;
  std::vector<std::int64_t> primes_;
};

// "3,5,7" -> validated family. Infinite families ("...", "all primes") are
// rejected: their K-theory is a continuity limit of the finite cases.
inline PrimeFamily parse_family(std::string_view spec) {
  std::string text(spec);
  if (text.find("...") != std::string::npos || text.find("inf") != std::string::npos ||
      text.find("all") != std::string::npos)
    throw InputError(
        "infinite families are not computed: K-theory of an infinite S is the inductive "
        "limit (continuity of K-theory) of its finite subfamilies; pass a finite list");
  std::vector<std::int64_t> elems;
  std::size_t pos = 0;
  require(!text.empty(), "the family must be non-empty");
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string tok = text.substr(pos, comma - pos);
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    require(!tok.empty(), "empty element in family '" + text + "'");
    const Integer v = parse_integer(tok);
    require(v >= 2, "element " + v.str() + " is < 2");
    require(v <= PrimeFamily::kMaxElement, "element " + v.str() + " is too large");
    elems.push_back(v.convert_to<std::int64_t>());
    pos = comma + 1;
  }
  return PrimeFamily::make(std::move(elems));
}

}  // namespace qsk
