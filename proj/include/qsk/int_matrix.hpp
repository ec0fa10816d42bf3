#pragma once

#include <cstddef>
#include <initializer_list>
#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qsk/bigint.hpp"
#include "qsk/errors.hpp"

namespace qsk {

// Dense row-major matrix of arbitrary-precision integers. Zero-sized
// dimensions are allowed (e.g. the 0 x 1 matrix of a map into the zero group).
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    require(entries_.size() == rows_ * cols_,
            "matrix entry count does not match its dimensions");
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(std::initializer_list<std::initializer_list<Integer>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    std::vector<Integer> e;
    e.reserve(r * c);
    for (const auto& row : rows) {
      require(row.size() == c, "ragged matrix rows");
      e.insert(e.end(), row.begin(), row.end());
    }
    return IntMatrix(r, c, std::move(e));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Integer>& entries() const { return entries_; }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (e != 0) return false;
    return true;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Rows [first, last) as a new matrix.
  IntMatrix row_block(std::size_t first, std::size_t last) const {
    IntMatrix b(last - first, cols_);
    for (std::size_t i = first; i < last; ++i)
      for (std::size_t j = 0; j < cols_; ++j) b(i - first, j) = (*this)(i, j);
    return b;
  }

  IntMatrix col_block(std::size_t first, std::size_t last) const {
    IntMatrix b(rows_, last - first);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = first; j < last; ++j) b(i, j - first) = (*this)(i, j);
    return b;
  }

  // Submatrix on the given row and column index lists.
  IntMatrix select(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    IntMatrix b(rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) b(i, j) = (*this)(rs[i], cs[j]);
    return b;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    ensure(a.cols_ == b.rows_, "matrix product dimension mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

// Square determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntMatrix m) {
  ensure(m.rows() == m.cols(), "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// Text format: "rows cols" on the first line, then rows of integers.
inline IntMatrix parse_matrix(std::istream& in) {
  std::string tok_r, tok_c;
  require(static_cast<bool>(in >> tok_r >> tok_c), "matrix text: missing 'rows cols' header");
  const Integer r = parse_integer(tok_r), c = parse_integer(tok_c);
  require(r >= 0 && c >= 0 && r <= 100000 && c <= 100000,
          "matrix text: dimensions out of range");
  const auto rows = static_cast<std::size_t>(r), cols = static_cast<std::size_t>(c);
  std::vector<Integer> e;
  e.reserve(rows * cols);
  std::string tok;
  for (std::size_t i = 0; i < rows * cols; ++i) {
    require(static_cast<bool>(in >> tok), "matrix text: expected " +
                                              std::to_string(rows * cols) + " entries, got " +
                                              std::to_string(i));
    e.push_back(parse_integer(tok));
  }
  require(!(in >> tok), "matrix text: trailing data '" + tok + "'");
  return IntMatrix(rows, cols, std::move(e));
}

inline IntMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix(in);
}

inline std::string format_matrix(const IntMatrix& m) {
  std::ostringstream out;
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m(i, j);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace qsk
