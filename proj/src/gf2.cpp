#include "eqw/gf2.hpp"

#include <algorithm>
#include <bit>
#include <utility>

#include "eqw/error.hpp"

namespace eqw {

namespace {

constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

void xor_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

// In-place reduced row echelon form.  If `transform` is non-null it receives
// the same row operations (so it should start as the identity).
std::vector<std::size_t> rref_in_place(BitMatrix& m, BitMatrix* transform) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows();
  const std::size_t stride = m.stride();
  const std::size_t tstride = transform ? transform->stride() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < rows; ++c) {
    std::size_t found = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (m.get(i, c)) {
        found = i;
        break;
      }
    }
    if (found == rows) continue;
    if (found != r) {
      std::swap_ranges(m.row_data(found), m.row_data(found) + stride, m.row_data(r));
      if (transform)
        std::swap_ranges(transform->row_data(found), transform->row_data(found) + tstride,
                         transform->row_data(r));
    }
    const std::size_t w = c >> 6;
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || !(m.row_data(i)[w] & bit)) continue;
      xor_words(m.row_data(i) + w, m.row_data(r) + w, stride - w);
      if (transform) xor_words(transform->row_data(i), transform->row_data(r), tstride);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

// ---------------------------------------------------------------- BitVector

BitVector::BitVector(std::size_t n) : size_(n), words_(words_for(n), 0) {}

BitVector BitVector::unit(std::size_t n, std::size_t i) {
  BitVector v(n);
  v.set(i);
  return v;
}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    require(bits[i] == '0' || bits[i] == '1', "bit string must contain only 0 and 1");
    if (bits[i] == '1') v.set(i);
  }
  return v;
}

void BitVector::set(std::size_t i, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (value)
    words_[i >> 6] |= bit;
  else
    words_[i >> 6] &= ~bit;
}

bool BitVector::any() const {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t BitVector::popcount() const {
  std::size_t n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

std::size_t BitVector::first_set() const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i]) return i * 64 + std::countr_zero(words_[i]);
  return size_;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  require(size_ == other.size_, "BitVector size mismatch");
  xor_words(words_.data(), other.words_.data(), words_.size());
  return *this;
}

bool BitVector::dot(const BitVector& other) const {
  require(size_ == other.size_, "BitVector size mismatch in dot");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
  return std::popcount(acc) & 1;
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

// ---------------------------------------------------------------- BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), bits_(rows * words_for(cols), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVector>& rows, std::size_t cols) {
  BitMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows, std::size_t cols) {
  BitMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, "matrix row " + std::to_string(i) + " has wrong length");
    m.set_row(i, BitVector::from_string(rows[i]));
  }
  return m;
}

BitMatrix BitMatrix::random(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  BitMatrix m(rows, cols);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (coin(rng)) m.set(i, j);
  return m;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (c & 63);
  auto& w = bits_[r * stride_ + (c >> 6)];
  if (value)
    w |= bit;
  else
    w &= ~bit;
}

BitVector BitMatrix::row(std::size_t r) const {
  BitVector v(cols_);
  std::copy(row_data(r), row_data(r) + stride_, v.data());
  return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
  require(v.size() == cols_, "row length mismatch");
  std::copy(v.data(), v.data() + stride_, row_data(r));
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) {
  xor_words(row_data(dst), row_data(src), stride_);
}

void BitMatrix::xor_into_row(std::size_t dst, const BitVector& v) {
  require(v.size() == cols_, "row length mismatch");
  xor_words(row_data(dst), v.data(), stride_);
}

bool BitMatrix::row_is_zero(std::size_t r) const {
  const auto* p = row_data(r);
  return std::all_of(p, p + stride_, [](std::uint64_t w) { return w == 0; });
}

void BitMatrix::set_block(std::size_t r0, std::size_t c0, const BitMatrix& m) {
  require(r0 + m.rows() <= rows_ && c0 + m.cols() <= cols_, "block out of range");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) set(r0 + i, c0 + j, m.get(i, j));
}

void BitMatrix::add_block(std::size_t r0, std::size_t c0, const BitMatrix& m) {
  require(r0 + m.rows() <= rows_ && c0 + m.cols() <= cols_, "block out of range");
  if ((c0 & 63) == 0) {
    const std::size_t w0 = c0 >> 6;
    for (std::size_t i = 0; i < m.rows(); ++i)
      xor_words(row_data(r0 + i) + w0, m.row_data(i), m.stride());
    return;
  }
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.get(i, j)) flip(r0 + i, c0 + j);
}

BitMatrix BitMatrix::block(std::size_t r0, std::size_t c0, std::size_t rows,
                           std::size_t cols) const {
  require(r0 + rows <= rows_ && c0 + cols <= cols_, "block out of range");
  BitMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (get(r0 + i, c0 + j)) out.set(i, j);
  return out;
}

bool BitMatrix::is_zero() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto* p = row_data(i);
    for (std::size_t w = 0; w < stride_; ++w) {
      std::uint64_t word = p[w];
      while (word) {
        const std::size_t j = w * 64 + std::countr_zero(word);
        t.set(j, i);
        word &= word - 1;
      }
    }
  }
  return t;
}

std::vector<std::string> BitMatrix::to_strings() const {
  std::vector<std::string> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i).to_string());
  return out;
}

BitMatrix& BitMatrix::operator+=(const BitMatrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_, "matrix shape mismatch in sum");
  xor_words(bits_.data(), other.bits_.data(), bits_.size());
  return *this;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
  require(a.cols_ == b.rows_, "matrix shape mismatch in product");
  BitMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    const auto* p = a.row_data(i);
    auto* dst = out.row_data(i);
    for (std::size_t w = 0; w < a.stride_; ++w) {
      std::uint64_t word = p[w];
      while (word) {
        const std::size_t k = w * 64 + std::countr_zero(word);
        xor_words(dst, b.row_data(k), b.stride_);
        word &= word - 1;
      }
    }
  }
  return out;
}

BitVector operator*(const BitVector& v, const BitMatrix& m) {
  require(v.size() == m.rows_, "vector/matrix shape mismatch");
  BitVector out(m.cols_);
  for (std::size_t w = 0; w < v.word_count(); ++w) {
    std::uint64_t word = v.data()[w];
    while (word) {
      const std::size_t k = w * 64 + std::countr_zero(word);
      xor_words(out.data(), m.row_data(k), m.stride_);
      word &= word - 1;
    }
  }
  return out;
}

BitMatrix kron(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a.get(i, j)) out.set_block(i * b.rows(), j * b.cols(), b);
  return out;
}

BitMatrix hstack(const std::vector<BitMatrix>& blocks) {
  require(!blocks.empty(), "hstack of nothing");
  std::size_t cols = 0;
  for (const auto& m : blocks) {
    require(m.rows() == blocks.front().rows(), "hstack row mismatch");
    cols += m.cols();
  }
  BitMatrix out(blocks.front().rows(), cols);
  std::size_t c = 0;
  for (const auto& m : blocks) {
    out.add_block(0, c, m);
    c += m.cols();
  }
  return out;
}

BitMatrix vstack(const std::vector<BitMatrix>& blocks) {
  require(!blocks.empty(), "vstack of nothing");
  std::size_t rows = 0;
  for (const auto& m : blocks) {
    require(m.cols() == blocks.front().cols(), "vstack column mismatch");
    rows += m.rows();
  }
  BitMatrix out(rows, blocks.front().cols());
  std::size_t r = 0;
  for (const auto& m : blocks) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      std::copy(m.row_data(i), m.row_data(i) + m.stride(), out.row_data(r + i));
    r += m.rows();
  }
  return out;
}

BitMatrix direct_sum(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  out.add_block(0, 0, a);
  out.add_block(a.rows(), a.cols(), b);
  return out;
}

std::size_t rank(const BitMatrix& m) {
  BitMatrix work = m;
  return rref_in_place(work, nullptr).size();
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(std::size_t ambient) : basis_(0, ambient) {}

Subspace::Subspace(const BitMatrix& spanning) {
  BitMatrix work = spanning;
  pivots_ = rref_in_place(work, nullptr);
  basis_ = BitMatrix(pivots_.size(), spanning.cols());
  for (std::size_t i = 0; i < pivots_.size(); ++i)
    std::copy(work.row_data(i), work.row_data(i) + work.stride(), basis_.row_data(i));
}

Subspace Subspace::full(std::size_t ambient) { return Subspace(BitMatrix::identity(ambient)); }

BitVector Subspace::reduce(BitVector v) const {
  require(v.size() == ambient_dim(), "vector does not live in the subspace's ambient space");
  for (std::size_t i = 0; i < pivots_.size(); ++i)
    if (v.get(pivots_[i])) xor_words(v.data(), basis_.row_data(i), basis_.stride());
  return v;
}

BitMatrix Subspace::reduce_rows(BitMatrix m) const {
  require(m.cols() == ambient_dim(), "matrix columns do not match ambient dimension");
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t i = 0; i < pivots_.size(); ++i)
      if (m.get(r, pivots_[i])) xor_words(m.row_data(r), basis_.row_data(i), basis_.stride());
  return m;
}

BitVector Subspace::coordinates(const BitVector& v) const {
  BitVector c(dim());
  for (std::size_t i = 0; i < pivots_.size(); ++i)
    if (v.get(pivots_[i])) c.set(i);
  return c;
}

bool Subspace::contains(const Subspace& other) const {
  require(other.ambient_dim() == ambient_dim(), "ambient mismatch");
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis().row(i))) return false;
  return true;
}

Subspace kernel(const BitMatrix& m) {
  BitMatrix work = m;
  BitMatrix t = BitMatrix::identity(m.rows());
  const auto pivots = rref_in_place(work, &t);
  BitMatrix k(m.rows() - pivots.size(), m.rows());
  for (std::size_t i = pivots.size(); i < m.rows(); ++i)
    std::copy(t.row_data(i), t.row_data(i) + t.stride(), k.row_data(i - pivots.size()));
  return Subspace(k);
}

Subspace image(const BitMatrix& m) { return Subspace(m); }

Subspace image(const Subspace& u, const BitMatrix& m) {
  require(u.ambient_dim() == m.rows(), "image: subspace does not live in the domain");
  return Subspace(u.basis() * m);
}

Subspace preimage(const BitMatrix& m, const Subspace& w) {
  require(w.ambient_dim() == m.cols(), "preimage: dimension mismatch");
  return kernel(w.reduce_rows(m));
}

Subspace sum(const Subspace& a, const Subspace& b) {
  require(a.ambient_dim() == b.ambient_dim(), "sum: ambient mismatch");
  return Subspace(vstack({a.basis(), b.basis()}));
}

Subspace intersection(const Subspace& a, const Subspace& b) {
  require(a.ambient_dim() == b.ambient_dim(), "intersection: ambient mismatch");
  if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient_dim());
  if (a.is_full()) return b;
  if (b.is_full()) return a;
  // x in a with x reduced to zero modulo b.
  const Subspace k = kernel(b.reduce_rows(a.basis()));
  return Subspace(k.basis() * a.basis());
}

Subspace annihilator(const Subspace& s) { return kernel(s.basis().transpose()); }

// ---------------------------------------------------------------- solving

LeftSolver::LeftSolver(const BitMatrix& m)
    : rows_(m.rows()), reduced_(m), transform_(BitMatrix::identity(m.rows())) {
  pivots_ = rref_in_place(reduced_, &transform_);
}

std::optional<BitVector> LeftSolver::solve(const BitVector& b) const {
  require(b.size() == reduced_.cols(), "solve: right-hand side has wrong length");
  BitVector residual = b;
  BitVector x(rows_);
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    if (!residual.get(pivots_[i])) continue;
    xor_words(residual.data(), reduced_.row_data(i), reduced_.stride());
    xor_words(x.data(), transform_.row_data(i), transform_.stride());
  }
  if (residual.any()) return std::nullopt;
  return x;
}

std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b) {
  return LeftSolver(m).solve(b);
}

// ---------------------------------------------------------------- Subquotient

Subquotient::Subquotient(const Subspace& z, const Subspace& b) : numerator_(z), denominator_(b) {
  require(z.contains(b), "subquotient: denominator is not contained in numerator");
  BitMatrix reduced = b.reduce_rows(z.basis());
  section_pivots_ = rref_in_place(reduced, nullptr);
  section_ = BitMatrix(section_pivots_.size(), z.ambient_dim());
  for (std::size_t i = 0; i < section_pivots_.size(); ++i)
    std::copy(reduced.row_data(i), reduced.row_data(i) + reduced.stride(), section_.row_data(i));
  require(section_.rows() == z.dim() - b.dim(), "subquotient: dimension bookkeeping failed");
}

BitVector Subquotient::coordinates(const BitVector& v) const {
  const BitVector r = denominator_.reduce(v);
  BitVector c(dim());
  for (std::size_t i = 0; i < section_pivots_.size(); ++i)
    if (r.get(section_pivots_[i])) c.set(i);
  return c;
}

BitVector Subquotient::lift(const BitVector& coords) const {
  require(coords.size() == dim(), "lift: coordinate vector has wrong length");
  return coords * section_;
}

}  // namespace eqw
