#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qsk/errors.hpp"
#include "qsk/family.hpp"
#include "qsk/int_matrix.hpp"

namespace qsk {

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Strictly increasing 1-based indices (i_1 < ... < i_p) naming e_{i_1} ^ ... ^ e_{i_p}.
using IndexTuple = std::vector<int>;

// Basis of Lambda^p(Z^k), lexicographically ordered.
struct ExtBasis {
  int k = 0;
  int p = 0;
  std::vector<IndexTuple> elements;

  std::size_t size() const { return elements.size(); }

  std::size_t index_of(const IndexTuple& t) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), t);
    ensure(it != elements.end() && *it == t, "tuple is not a basis element");
    return static_cast<std::size_t>(it - elements.begin());
  }
};

inline ExtBasis ext_basis(int k, int p) {
  require(k >= 0 && p >= 0 && p <= k, "ext_basis: need 0 <= p <= k");
  ExtBasis b{k, p, {}};
  IndexTuple t(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) t[static_cast<std::size_t>(i)] = i + 1;
  for (;;) {
    b.elements.push_back(t);
    int i = p - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == k - (p - 1 - i)) --i;
    if (i < 0) break;
    ++t[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < p; ++j)
      t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 1)] + 1;
  }
  return b;
}

struct SignedTuple {
  int sign;
  IndexTuple tuple;

  friend bool operator==(const SignedTuple&, const SignedTuple&) = default;
};

// e_ell ^ e_t as a signed basis element; nullopt when ell already occurs.
inline std::optional<SignedTuple> wedge_insert(int ell, const IndexTuple& t) {
  auto it = std::lower_bound(t.begin(), t.end(), ell);
  if (it != t.end() && *it == ell) return std::nullopt;
  const auto smaller = it - t.begin();
  IndexTuple out(t.begin(), it);
  out.push_back(ell);
  out.insert(out.end(), it, t.end());
  return SignedTuple{smaller % 2 == 0 ? 1 : -1, std::move(out)};
}

// Matrix of h^p(e) = sum_ell (w_ell - 1) e_ell ^ e from Lambda^p to
// Lambda^{p+1}, for the weights w_1..w_k.
inline IntMatrix differential_matrix(std::span<const std::int64_t> weights, int p) {
  const int k = static_cast<int>(weights.size());
  require(p >= 0 && p <= k, "differential_matrix: need 0 <= p <= k");
  const ExtBasis src = ext_basis(k, p);
  if (p == k) return IntMatrix(0, src.size());
  const ExtBasis dst = ext_basis(k, p + 1);
  IntMatrix a(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j)
    for (int ell = 1; ell <= k; ++ell) {
      auto w = wedge_insert(ell, src.elements[j]);
      if (!w) continue;
      a(dst.index_of(w->tuple), j) += w->sign * (weights[static_cast<std::size_t>(ell - 1)] - 1);
    }
  return a;
}

inline IntMatrix differential_matrix(const PrimeFamily& fam, int p) {
  return differential_matrix(std::span<const std::int64_t>(fam.elements()), p);
}

// [A_0, ..., A_k].
inline std::vector<IntMatrix> koszul_complex(std::span<const std::int64_t> weights) {
  std::vector<IntMatrix> out;
  for (int p = 0; p <= static_cast<int>(weights.size()); ++p)
    out.push_back(differential_matrix(weights, p));
  return out;
}

inline std::vector<IntMatrix> koszul_complex(const PrimeFamily& fam) {
  return koszul_complex(std::span<const std::int64_t>(fam.elements()));
}

}  // namespace qsk
