#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "qsk/abelian_group.hpp"
#include "qsk/bigint.hpp"
#include "qsk/errors.hpp"
#include "qsk/int_matrix.hpp"

namespace qsk {

// s * a * t == d with s, t unimodular, d diagonal with the divisors on the
// leading diagonal (each divides the next) followed by zeros.
struct SnfResult {
  IntMatrix s;
  IntMatrix t;
  IntMatrix d;
  std::vector<Integer> divisors;

  std::size_t rank() const { return divisors.size(); }
};

namespace detail {

// Elementary row/column reduction of a matrix, recording the row transform s,
// the column transform t and, on request, t^{-1}.
class SmithReducer {
 public:
  SmithReducer(IntMatrix a, bool track_t_inverse)
      : a_(std::move(a)),
        s_(IntMatrix::identity(a_.rows())),
        t_(IntMatrix::identity(a_.cols())),
        track_inv_(track_t_inverse) {
    if (track_inv_) t_inv_ = IntMatrix::identity(a_.cols());
  }

  void run() {
    const std::size_t m = a_.rows(), n = a_.cols();
    for (std::size_t k = 0; k < std::min(m, n); ++k) {
      if (!move_min_to(k, k, m, k, n)) break;
      for (;;) {
        if (clear_cross(k)) {
          // pivot must divide the remaining block
          auto bad = find_nondivisible(k);
          if (!bad) break;
          add_row(k, *bad, 1);
          continue;
        }
        // a nonzero remainder smaller than the pivot is left in row/column k
        move_min_cross(k);
      }
      if (a_(k, k) < 0) negate_row(k);
      divisors_.push_back(a_(k, k));
    }
  }

  SnfResult result() && {
    return SnfResult{std::move(s_), std::move(t_), std::move(a_), std::move(divisors_)};
  }

  const IntMatrix& t_inverse() const { return t_inv_; }
  const IntMatrix& t() const { return t_; }
  std::size_t rank() const { return divisors_.size(); }
  const std::vector<Integer>& divisors() const { return divisors_; }

 private:
  // Moves the smallest nonzero |entry| of rows [r0,r1) x cols [c0,c1) to
  // (k,k). False when that block is zero.
  bool move_min_to(std::size_t k, std::size_t r0, std::size_t r1, std::size_t c0,
                   std::size_t c1) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) {
        const Integer& x = a_(i, j);
        if (x == 0) continue;
        Integer ax = abs(x);
        if (!best || ax < best_abs) {
          best = {i, j};
          best_abs = std::move(ax);
        }
      }
    if (!best) return false;
    if (best->first != k) swap_rows(k, best->first);
    if (best->second != k) swap_cols(k, best->second);
    return true;
  }

  // Pivot on the smallest nonzero entry of row k and column k.
  void move_min_cross(std::size_t k) {
    std::size_t bi = k, bj = k;
    Integer best = abs(a_(k, k));
    for (std::size_t i = k + 1; i < a_.rows(); ++i)
      if (a_(i, k) != 0 && (best == 0 || abs(a_(i, k)) < best)) {
        best = abs(a_(i, k));
        bi = i;
        bj = k;
      }
    for (std::size_t j = k + 1; j < a_.cols(); ++j)
      if (a_(k, j) != 0 && (best == 0 || abs(a_(k, j)) < best)) {
        best = abs(a_(k, j));
        bi = k;
        bj = j;
      }
    if (bi != k) swap_rows(k, bi);
    if (bj != k) swap_cols(k, bj);
  }

  // One division pass over column k and row k. True when both are clear.
  bool clear_cross(std::size_t k) {
    bool clear = true;
    const Integer p = a_(k, k);
    for (std::size_t i = k + 1; i < a_.rows(); ++i) {
      if (a_(i, k) == 0) continue;
      Integer q = a_(i, k) / p;
      if (q != 0) add_row(i, k, -q);
      if (a_(i, k) != 0) clear = false;
    }
    for (std::size_t j = k + 1; j < a_.cols(); ++j) {
      if (a_(k, j) == 0) continue;
      Integer q = a_(k, j) / p;
      if (q != 0) add_col(j, k, -q);
      if (a_(k, j) != 0) clear = false;
    }
    return clear;
  }

  std::optional<std::size_t> find_nondivisible(std::size_t k) const {
    const Integer& p = a_(k, k);
    for (std::size_t i = k + 1; i < a_.rows(); ++i)
      for (std::size_t j = k + 1; j < a_.cols(); ++j)
        if (a_(i, j) % p != 0) return i;
    return std::nullopt;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < a_.cols(); ++c) std::swap(a_(i, c), a_(j, c));
    for (std::size_t c = 0; c < s_.cols(); ++c) std::swap(s_(i, c), s_(j, c));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < a_.rows(); ++r) std::swap(a_(r, i), a_(r, j));
    for (std::size_t r = 0; r < t_.rows(); ++r) std::swap(t_(r, i), t_(r, j));
    if (track_inv_)
      for (std::size_t c = 0; c < t_inv_.cols(); ++c) std::swap(t_inv_(i, c), t_inv_(j, c));
  }

  // row dst += c * row src
  void add_row(std::size_t dst, std::size_t src, const Integer& c) {
    for (std::size_t j = 0; j < a_.cols(); ++j)
      if (a_(src, j) != 0) a_(dst, j) += c * a_(src, j);
    for (std::size_t j = 0; j < s_.cols(); ++j)
      if (s_(src, j) != 0) s_(dst, j) += c * s_(src, j);
  }

  // col dst += c * col src; t^{-1} picks up row src -= c * row dst
  void add_col(std::size_t dst, std::size_t src, const Integer& c) {
    for (std::size_t i = 0; i < a_.rows(); ++i)
      if (a_(i, src) != 0) a_(i, dst) += c * a_(i, src);
    for (std::size_t i = 0; i < t_.rows(); ++i)
      if (t_(i, src) != 0) t_(i, dst) += c * t_(i, src);
    if (track_inv_)
      for (std::size_t j = 0; j < t_inv_.cols(); ++j)
        if (t_inv_(dst, j) != 0) t_inv_(src, j) -= c * t_inv_(dst, j);
  }

  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < a_.cols(); ++j) a_(i, j) = -a_(i, j);
    for (std::size_t j = 0; j < s_.cols(); ++j) s_(i, j) = -s_(i, j);
  }

  IntMatrix a_;
  IntMatrix s_;
  IntMatrix t_;
  IntMatrix t_inv_;
  bool track_inv_;
  std::vector<Integer> divisors_;
};

}  // namespace detail

inline SnfResult snf(const IntMatrix& a) {
  detail::SmithReducer r(a, false);
  r.run();
  return std::move(r).result();
}

namespace detail {

// Bareiss determinant in 128-bit arithmetic. Only called when every minor and
// every intermediate product is known to fit.
inline __int128 determinant_small(std::vector<__int128> m, std::size_t n) {
  if (n == 0) return 1;
  __int128 sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[p * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
      m[i * n + k] = 0;
    }
    prev = m[k * n + k];
  }
  return sign * m[n * n - 1];
}

inline __int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

inline Integer from_int128(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  Integer r = static_cast<std::uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(u);
  return neg ? Integer(-r) : r;
}

// Calls f(rows, cols) for every pair of i-element index subsets.
template <class F>
bool for_each_minor(std::size_t m, std::size_t n, std::size_t i, F&& f) {
  std::vector<std::size_t> rs(i), cs(i);
  auto first = [](std::vector<std::size_t>& v) {
    for (std::size_t x = 0; x < v.size(); ++x) v[x] = x;
  };
  auto next = [](std::vector<std::size_t>& v, std::size_t lim) {
    std::size_t k = v.size();
    while (k > 0) {
      --k;
      if (v[k] < lim - v.size() + k) {
        ++v[k];
        for (std::size_t x = k + 1; x < v.size(); ++x) v[x] = v[x - 1] + 1;
        return true;
      }
    }
    return false;
  };
  first(rs);
  do {
    first(cs);
    do {
      if (!f(rs, cs)) return false;
    } while (next(cs, n));
  } while (next(rs, m));
  return true;
}

}  // namespace detail

// Entry i-1 is the gcd of all i x i minors (0 when they all vanish), for
// i = 1 .. min(rows, cols). Brute-force enumeration, independent of snf().
inline std::vector<Integer> determinant_divisors(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols(), r = std::min(m, n);
  std::vector<Integer> out;
  out.reserve(r);

  Integer max_abs = 0;
  for (const auto& e : a.entries()) max_abs = std::max(max_abs, abs(e));

  for (std::size_t i = 1; i <= r; ++i) {
    // Hadamard: |minor| <= (max_abs * sqrt(i))^i; Bareiss products stay below
    // the square of that bound.
    const Integer bound_sq = ipow(max_abs * max_abs * i, i);
    const bool fits = bound_sq < (Integer(1) << 125);
    Integer g = 0;
    if (fits) {
      std::vector<__int128> sub(i * i);
      __int128 g128 = 0;
      detail::for_each_minor(m, n, i, [&](const auto& rs, const auto& cs) {
        for (std::size_t x = 0; x < i; ++x)
          for (std::size_t y = 0; y < i; ++y)
            sub[x * i + y] = static_cast<__int128>(static_cast<long long>(a(rs[x], cs[y])));
        g128 = detail::gcd128(g128, detail::determinant_small(sub, i));
        return g128 != 1;
      });
      g = detail::from_int128(g128);
    } else {
      detail::for_each_minor(m, n, i, [&](const auto& rs, const auto& cs) {
        g = gcd(g, determinant(a.select(rs, cs)));
        return g != 1;
      });
    }
    out.push_back(g);
  }
  return out;
}

// Columns form a basis of the integer kernel lattice {x : a x = 0}.
inline IntMatrix kernel_basis(const IntMatrix& a) {
  detail::SmithReducer r(a, false);
  r.run();
  return r.t().col_block(r.rank(), a.cols());
}

// ker(d_out) / im(d_in) for a complex Z^l --d_in--> Z^n --d_out--> Z^m.
inline FgAbGroup cohomology(const IntMatrix& d_out, const IntMatrix& d_in) {
  require(d_out.cols() == d_in.rows(), "cohomology: differentials have incompatible shapes");
  require((d_out * d_in).is_zero(), "cohomology: d_out * d_in is not zero");
  const std::size_t n = d_out.cols();

  detail::SmithReducer r(d_out, true);
  r.run();
  // Kernel basis = columns rank..n-1 of t; coordinates of im(d_in) in that
  // basis are the matching rows of t^{-1} d_in.
  const IntMatrix coords = r.t_inverse() * d_in;
  ensure(coords.row_block(0, r.rank()).is_zero(), "cohomology: image escapes the kernel");
  const IntMatrix x = coords.row_block(r.rank(), n);

  const SnfResult sx = snf(x);
  const auto kernel_rank = static_cast<std::int64_t>(n - r.rank());
  return FgAbGroup::from_cyclic_orders(kernel_rank - static_cast<std::int64_t>(sx.rank()),
                                       sx.divisors);
}

}  // namespace qsk
