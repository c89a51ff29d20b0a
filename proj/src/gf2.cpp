#include "homolattice/gf2.hpp"

#include <bit>
#include <fstream>
#include <sstream>

namespace homolattice {

BitVector BitVector::unit(size_t bits, size_t index) {
  BitVector v(bits);
  v.set(index);
  return v;
}

BitVector BitVector::from_string(std::string_view s) {
  BitVector v(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      v.set(i);
    else if (s[i] != '0')
      throw DimensionMismatch("bit string must contain only '0'/'1'");
  }
  return v;
}

bool BitVector::any() const {
  for (uint64_t w : words_)
    if (w) return true;
  return false;
}

size_t BitVector::weight() const {
  size_t total = 0;
  for (uint64_t w : words_) total += std::popcount(w);
  return total;
}

bool BitVector::dot(const BitVector& other) const {
  if (n_ != other.n_) throw DimensionMismatch("BitVector::dot size mismatch");
  uint64_t acc = 0;
  for (size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
  return std::popcount(acc) & 1;
}

int BitVector::find_first(size_t from) const {
  if (from >= n_) return -1;
  size_t wi = from >> 6;
  uint64_t w = words_[wi] & (~uint64_t(0) << (from & 63));
  while (true) {
    if (w) return int((wi << 6) + std::countr_zero(w));
    if (++wi >= words_.size()) return -1;
    w = words_[wi];
  }
}

std::vector<size_t> BitVector::support() const {
  std::vector<size_t> out;
  for (int i = find_first(); i >= 0; i = find_first(size_t(i) + 1))
    out.push_back(size_t(i));
  return out;
}

BitVector& BitVector::operator^=(const BitVector& o) {
  if (n_ != o.n_) throw DimensionMismatch("BitVector::operator^= size mismatch");
  for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

std::string BitVector::to_string() const {
  std::string s(n_, '0');
  for (size_t i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

BinaryMatrix BinaryMatrix::identity(size_t n) {
  BinaryMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<BitVector>& rows,
                                     size_t cols) {
  BinaryMatrix m(rows.size(), cols);
  for (size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

BitVector BinaryMatrix::row(size_t r) const {
  BitVector v(cols_);
  auto src = row_words(r);
  for (size_t i = 0; i < wpr_; ++i) v.words()[i] = src[i];
  return v;
}

BitVector BinaryMatrix::column(size_t c) const {
  BitVector v(rows_);
  for (size_t r = 0; r < rows_; ++r)
    if (get(r, c)) v.set(r);
  return v;
}

void BinaryMatrix::set_row(size_t r, const BitVector& v) {
  if (v.size() != cols_) throw DimensionMismatch("set_row width mismatch");
  auto dst = row_words(r);
  auto src = v.words();
  for (size_t i = 0; i < wpr_; ++i) dst[i] = src[i];
}

void BinaryMatrix::xor_row_into(size_t src, size_t dst) {
  uint64_t* d = bits_.data() + dst * wpr_;
  const uint64_t* s = bits_.data() + src * wpr_;
  for (size_t i = 0; i < wpr_; ++i) d[i] ^= s[i];
}

void BinaryMatrix::xor_col_into(size_t src, size_t dst) {
  for (size_t r = 0; r < rows_; ++r)
    if (get(r, src)) set(r, dst, !get(r, dst));
}

void BinaryMatrix::swap_rows(size_t a, size_t b) {
  if (a == b) return;
  uint64_t* pa = bits_.data() + a * wpr_;
  uint64_t* pb = bits_.data() + b * wpr_;
  for (size_t i = 0; i < wpr_; ++i) std::swap(pa[i], pb[i]);
}

size_t BinaryMatrix::row_weight(size_t r) const {
  size_t total = 0;
  for (uint64_t w : row_words(r)) total += std::popcount(w);
  return total;
}

size_t BinaryMatrix::col_weight(size_t c) const {
  size_t total = 0;
  for (size_t r = 0; r < rows_; ++r) total += get(r, c);
  return total;
}

bool BinaryMatrix::is_zero() const {
  for (uint64_t w : bits_)
    if (w) return false;
  return true;
}

BinaryMatrix BinaryMatrix::transposed() const {
  BinaryMatrix t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r) {
    auto words = row_words(r);
    for (size_t wi = 0; wi < wpr_; ++wi) {
      uint64_t w = words[wi];
      while (w) {
        size_t c = (wi << 6) + std::countr_zero(w);
        t.set(c, r);
        w &= w - 1;
      }
    }
  }
  return t;
}

BinaryMatrix multiply(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("multiply: inner dimensions disagree");
  BinaryMatrix c(a.rows(), b.cols());
  for (size_t r = 0; r < a.rows(); ++r) {
    auto arow = a.row_words(r);
    auto crow = c.row_words(r);
    for (size_t wi = 0; wi < arow.size(); ++wi) {
      uint64_t w = arow[wi];
      while (w) {
        size_t k = (wi << 6) + std::countr_zero(w);
        auto brow = b.row_words(k);
        for (size_t j = 0; j < crow.size(); ++j) crow[j] ^= brow[j];
        w &= w - 1;
      }
    }
  }
  return c;
}

BinaryMatrix add(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("add: dimensions disagree");
  BinaryMatrix c = a;
  for (size_t r = 0; r < a.rows(); ++r) {
    auto crow = c.row_words(r);
    auto brow = b.row_words(r);
    for (size_t i = 0; i < crow.size(); ++i) crow[i] ^= brow[i];
  }
  return c;
}

BitVector mat_vec(const BinaryMatrix& m, const BitVector& v) {
  if (m.cols() != v.size()) throw DimensionMismatch("mat_vec width mismatch");
  BitVector out(m.rows());
  auto vw = v.words();
  for (size_t r = 0; r < m.rows(); ++r) {
    uint64_t acc = 0;
    auto rw = m.row_words(r);
    for (size_t i = 0; i < rw.size(); ++i) acc ^= rw[i] & vw[i];
    if (std::popcount(acc) & 1) out.set(r);
  }
  return out;
}

BitVector vec_mat(const BitVector& v, const BinaryMatrix& m) {
  if (m.rows() != v.size()) throw DimensionMismatch("vec_mat height mismatch");
  BitVector out(m.cols());
  for (int r = v.find_first(); r >= 0; r = v.find_first(size_t(r) + 1)) {
    auto rw = m.row_words(size_t(r));
    auto ow = out.words();
    for (size_t i = 0; i < rw.size(); ++i) ow[i] ^= rw[i];
  }
  return out;
}

namespace {

// In-place Gauss-Jordan. Returns pivot (row, col) pairs in elimination order.
std::vector<std::pair<size_t, size_t>> gauss_jordan(BinaryMatrix& m) {
  std::vector<std::pair<size_t, size_t>> pivots;
  size_t next_row = 0;
  for (size_t c = 0; c < m.cols() && next_row < m.rows(); ++c) {
    size_t pivot = next_row;
    while (pivot < m.rows() && !m.get(pivot, c)) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(pivot, next_row);
    for (size_t r = 0; r < m.rows(); ++r)
      if (r != next_row && m.get(r, c)) m.xor_row_into(next_row, r);
    pivots.emplace_back(next_row, c);
    ++next_row;
  }
  return pivots;
}

}  // namespace

size_t rank(const BinaryMatrix& m) {
  BinaryMatrix work = m;
  return gauss_jordan(work).size();
}

std::vector<BitVector> kernel_basis(const BinaryMatrix& m) {
  BinaryMatrix work = m;
  auto pivots = gauss_jordan(work);
  std::vector<bool> is_pivot_col(m.cols(), false);
  for (auto [r, c] : pivots) is_pivot_col[c] = true;

  std::vector<BitVector> basis;
  for (size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot_col[f]) continue;
    BitVector v(m.cols());
    v.set(f);
    for (auto [r, c] : pivots)
      if (work.get(r, f)) v.set(c);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<BitVector> image_basis(const BinaryMatrix& m) {
  BinaryMatrix work = m;
  auto pivots = gauss_jordan(work);
  std::vector<BitVector> basis;
  basis.reserve(pivots.size());
  for (auto [r, c] : pivots) basis.push_back(m.column(c));
  return basis;
}

BinaryMatrix tensor(const BinaryMatrix& a, const BinaryMatrix& b) {
  BinaryMatrix t(a.rows() * b.rows(), a.cols() * b.cols());
  for (size_t i1 = 0; i1 < a.rows(); ++i1)
    for (size_t j1 = 0; j1 < a.cols(); ++j1) {
      if (!a.get(i1, j1)) continue;
      for (size_t i2 = 0; i2 < b.rows(); ++i2) {
        auto brow = b.row_words(i2);
        for (size_t wi = 0; wi < brow.size(); ++wi) {
          uint64_t w = brow[wi];
          while (w) {
            size_t j2 = (wi << 6) + std::countr_zero(w);
            t.set(i1 * b.rows() + i2, j1 * b.cols() + j2);
            w &= w - 1;
          }
        }
      }
    }
  return t;
}

BinaryMatrix invert(const BinaryMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("invert: matrix not square");
  const size_t n = m.rows();
  BinaryMatrix work = m;
  BinaryMatrix inv = BinaryMatrix::identity(n);
  for (size_t c = 0; c < n; ++c) {
    size_t pivot = c;
    while (pivot < n && !work.get(pivot, c)) ++pivot;
    if (pivot == n) throw SingularMatrix();
    work.swap_rows(pivot, c);
    inv.swap_rows(pivot, c);
    for (size_t r = 0; r < n; ++r) {
      if (r != c && work.get(r, c)) {
        work.xor_row_into(c, r);
        inv.xor_row_into(c, r);
      }
    }
  }
  return inv;
}

size_t sparsity(const BinaryMatrix& m) {
  size_t best = 0;
  for (size_t r = 0; r < m.rows(); ++r) best = std::max(best, m.row_weight(r));
  std::vector<size_t> colw(m.cols(), 0);
  for (size_t r = 0; r < m.rows(); ++r) {
    auto words = m.row_words(r);
    for (size_t wi = 0; wi < words.size(); ++wi) {
      uint64_t w = words[wi];
      while (w) {
        ++colw[(wi << 6) + std::countr_zero(w)];
        w &= w - 1;
      }
    }
  }
  for (size_t c = 0; c < m.cols(); ++c) best = std::max(best, colw[c]);
  return best;
}

RowSpan::RowSpan(const std::vector<BitVector>& vectors, size_t width)
    : width_(width) {
  for (const auto& v : vectors) insert(v);
}

RowSpan::RowSpan(const BinaryMatrix& rows_of) : width_(rows_of.cols()) {
  for (size_t r = 0; r < rows_of.rows(); ++r) insert(rows_of.row(r));
}

bool RowSpan::insert(BitVector v) {
  v = reduce(std::move(v));
  int p = v.find_first();
  if (p < 0) return false;
  // keep the basis reduced: clear this pivot from existing rows
  for (size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].get(size_t(p))) basis_[i] ^= v;
  basis_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

BitVector RowSpan::reduce(BitVector v) const {
  if (v.size() != width_) throw DimensionMismatch("RowSpan::reduce width");
  for (size_t i = 0; i < basis_.size(); ++i)
    if (v.get(size_t(pivots_[i]))) v ^= basis_[i];
  return v;
}

bool RowSpan::contains(const BitVector& v) const { return !reduce(v).any(); }

Gf2Solver::Gf2Solver(const BinaryMatrix& a)
    : reduced_(a), transform_(BinaryMatrix::identity(a.rows())) {
  size_t next_row = 0;
  pivot_cols_.assign(a.cols(), -1);
  for (size_t c = 0; c < a.cols() && next_row < a.rows(); ++c) {
    size_t pivot = next_row;
    while (pivot < a.rows() && !reduced_.get(pivot, c)) ++pivot;
    if (pivot == a.rows()) continue;
    reduced_.swap_rows(pivot, next_row);
    transform_.swap_rows(pivot, next_row);
    for (size_t r = 0; r < a.rows(); ++r) {
      if (r != next_row && reduced_.get(r, c)) {
        reduced_.xor_row_into(next_row, r);
        transform_.xor_row_into(next_row, r);
      }
    }
    pivot_rows_.push_back(c);
    pivot_cols_[c] = int(next_row);
    ++next_row;
  }
}

std::optional<BitVector> Gf2Solver::solve(const BitVector& rhs) const {
  if (rhs.size() != transform_.rows())
    throw DimensionMismatch("Gf2Solver::solve rhs size");
  BitVector y = mat_vec(transform_, rhs);
  // consistency: zero rows of the reduced system need zero rhs
  for (size_t r = pivot_rows_.size(); r < transform_.rows(); ++r)
    if (y.get(r)) return std::nullopt;
  BitVector x(reduced_.cols());
  for (size_t r = 0; r < pivot_rows_.size(); ++r)
    if (y.get(r)) x.set(pivot_rows_[r]);
  return x;
}

BinaryMatrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  size_t lineno = 0;

  size_t rows = 0, cols = 0;
  if (!std::getline(in, line)) throw ParseError(1, "empty input");
  ++lineno;
  {
    std::istringstream header(line);
    if (!(header >> rows >> cols))
      throw ParseError(lineno, "expected header \"rows cols\"");
    std::string rest;
    if (header >> rest) throw ParseError(lineno, "trailing tokens after header");
  }

  BinaryMatrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (!std::getline(in, line))
      throw ParseError(lineno + 1, "expected " + std::to_string(rows) +
                                       " rows, got " + std::to_string(r));
    ++lineno;
    size_t c = 0;
    for (char ch : line) {
      if (ch == '|' || ch == ' ' || ch == '\t' || ch == '\r') continue;
      if (ch != '0' && ch != '1')
        throw ParseError(lineno, std::string("invalid character '") + ch + "'");
      if (c >= cols) throw ParseError(lineno, "row longer than declared width");
      if (ch == '1') m.set(r, c);
      ++c;
    }
    if (c != cols)
      throw ParseError(lineno, "row has " + std::to_string(c) +
                                   " entries, expected " + std::to_string(cols));
  }
  return m;
}

BinaryMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

std::string format_matrix(const BinaryMatrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (size_t r = 0; r < m.rows(); ++r) {
    out += m.row(r).to_string();
    out += '\n';
  }
  return out;
}

void write_matrix_file(const BinaryMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << format_matrix(m);
}

}  // namespace homolattice
