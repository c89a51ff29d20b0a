#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homolattice/errors.hpp"

namespace homolattice {

/// Packed bit-vector over GF(2). Bits past size() are kept zero so that
/// word-level comparisons and popcounts need no masking.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(size_t bits) : n_(bits), words_((bits + 63) / 64, 0) {}

  static BitVector unit(size_t bits, size_t index);
  static BitVector from_string(std::string_view s);

  size_t size() const { return n_; }

  bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool v = true) {
    const uint64_t mask = uint64_t(1) << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }
  void flip(size_t i) { words_[i >> 6] ^= uint64_t(1) << (i & 63); }

  bool any() const;
  size_t weight() const;

  /// Parity of the bitwise AND, i.e. the GF(2) inner product.
  bool dot(const BitVector& other) const;

  /// Index of the first set bit at or after `from`, or -1.
  int find_first(size_t from = 0) const;

  std::vector<size_t> support() const;

  BitVector& operator^=(const BitVector& o);
  friend BitVector operator^(BitVector a, const BitVector& b) {
    a ^= b;
    return a;
  }
  bool operator==(const BitVector&) const = default;

  std::span<const uint64_t> words() const { return words_; }
  std::span<uint64_t> words() { return words_; }

  std::string to_string() const;

 private:
  size_t n_ = 0;
  std::vector<uint64_t> words_;
};

/// Dense matrix over GF(2), row-major with each row stored as packed words.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), bits_(rows * wpr_, 0) {}

  static BinaryMatrix identity(size_t n);
  static BinaryMatrix from_rows(const std::vector<BitVector>& rows, size_t cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  bool get(size_t r, size_t c) const {
    return (bits_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1;
  }
  void set(size_t r, size_t c, bool v = true) {
    const uint64_t mask = uint64_t(1) << (c & 63);
    if (v)
      bits_[r * wpr_ + (c >> 6)] |= mask;
    else
      bits_[r * wpr_ + (c >> 6)] &= ~mask;
  }

  BitVector row(size_t r) const;
  BitVector column(size_t c) const;
  void set_row(size_t r, const BitVector& v);

  /// row[dst] ^= row[src]
  void xor_row_into(size_t src, size_t dst);
  /// col[dst] ^= col[src]
  void xor_col_into(size_t src, size_t dst);
  void swap_rows(size_t a, size_t b);

  size_t row_weight(size_t r) const;
  size_t col_weight(size_t c) const;
  bool is_zero() const;

  BinaryMatrix transposed() const;

  std::span<const uint64_t> row_words(size_t r) const {
    return {bits_.data() + r * wpr_, wpr_};
  }
  std::span<uint64_t> row_words(size_t r) {
    return {bits_.data() + r * wpr_, wpr_};
  }

  bool operator==(const BinaryMatrix&) const = default;

 private:
  size_t rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<uint64_t> bits_;
};

BinaryMatrix multiply(const BinaryMatrix& a, const BinaryMatrix& b);
BinaryMatrix add(const BinaryMatrix& a, const BinaryMatrix& b);
inline BinaryMatrix operator*(const BinaryMatrix& a, const BinaryMatrix& b) {
  return multiply(a, b);
}
inline BinaryMatrix operator+(const BinaryMatrix& a, const BinaryMatrix& b) {
  return add(a, b);
}

/// M . v over GF(2); bit r of the result is <row r, v>.
BitVector mat_vec(const BinaryMatrix& m, const BitVector& v);
/// v^T . M over GF(2); bit c of the result is <v, col c>.
BitVector vec_mat(const BitVector& v, const BinaryMatrix& m);

/// Dimension of the row space. Deterministic Gauss-Jordan, pivoting on the
/// lowest row index available for each column.
size_t rank(const BinaryMatrix& m);

/// Basis of the right null space, one vector per free column in ascending
/// column order. Size is cols - rank.
std::vector<BitVector> kernel_basis(const BinaryMatrix& m);

/// Basis of the column space: the original columns at the lexicographically
/// first set of independent column indices. Size is rank.
std::vector<BitVector> image_basis(const BinaryMatrix& m);

/// Kronecker product with the left factor major: entry
/// ((i1,i2),(j1,j2)) = a(i1,j1) * b(i2,j2), composite index i1*b.rows()+i2.
BinaryMatrix tensor(const BinaryMatrix& a, const BinaryMatrix& b);

/// Inverse over GF(2). Throws SingularMatrix.
BinaryMatrix invert(const BinaryMatrix& m);

/// Max nonzero count over all rows and all columns.
size_t sparsity(const BinaryMatrix& m);

/// Row-reduced view of a set of vectors, for repeated span-membership tests.
class RowSpan {
 public:
  RowSpan() = default;
  explicit RowSpan(const std::vector<BitVector>& vectors, size_t width);
  explicit RowSpan(const BinaryMatrix& rows_of);

  size_t dim() const { return basis_.size(); }
  size_t width() const { return width_; }
  bool contains(const BitVector& v) const;
  /// Reduce v against the basis; the remainder is zero iff v is in the span.
  BitVector reduce(BitVector v) const;
  /// Grow the span by v; returns false when v was already contained.
  bool insert(BitVector v);

 private:
  size_t width_ = 0;
  std::vector<BitVector> basis_;   // each with a unique pivot
  std::vector<int> pivots_;        // pivot column per basis row
};

/// Precomputed elimination of A for repeated solves of A x = b.
class Gf2Solver {
 public:
  Gf2Solver() = default;
  explicit Gf2Solver(const BinaryMatrix& a);
  size_t rank() const { return pivot_rows_.size(); }
  /// Any solution of A x = b, or nullopt when inconsistent.
  std::optional<BitVector> solve(const BitVector& rhs) const;

 private:
  BinaryMatrix reduced_;             // T * A in reduced form
  BinaryMatrix transform_;           // T
  std::vector<size_t> pivot_rows_;   // row -> pivot column
  std::vector<int> pivot_cols_;
};

// Text format: first line "rows cols", then one line of '0'/'1' characters
// per row. '|' separators and spaces are ignored on read.
BinaryMatrix parse_matrix(std::string_view text);
BinaryMatrix read_matrix_file(const std::string& path);
std::string format_matrix(const BinaryMatrix& m);
void write_matrix_file(const BinaryMatrix& m, const std::string& path);

}  // namespace homolattice
