// Exact linear algebra over GF(2).
//
// Convention: vectors are rows, and a matrix M with r rows and c columns is
// the linear map GF(2)^r -> GF(2)^c given by v -> v*M.  Composition "first A,
// then B" is the product A*B.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace eqw {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n);

  static BitVector unit(std::size_t n, std::size_t i);
  static BitVector from_string(std::string_view bits);

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  bool any() const;
  bool none() const { return !any(); }
  std::size_t popcount() const;
  // Index of the lowest set bit, or size() if none.
  std::size_t first_set() const;

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend bool operator==(const BitVector& a, const BitVector& b) = default;

  // Parity of the coordinatewise product.
  bool dot(const BitVector& other) const;

  std::string to_string() const;

  std::uint64_t* data() { return words_.data(); }
  const std::uint64_t* data() const { return words_.data(); }
  std::size_t word_count() const { return words_.size(); }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);
  static BitMatrix from_rows(const std::vector<BitVector>& rows, std::size_t cols);
  // Each string is one row of '0'/'1' characters.
  static BitMatrix from_strings(const std::vector<std::string>& rows, std::size_t cols);
  static BitMatrix random(std::size_t rows, std::size_t cols, std::mt19937_64& rng);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }

  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool value = true);
  void flip(std::size_t r, std::size_t c) {
    bits_[r * stride_ + (c >> 6)] ^= std::uint64_t{1} << (c & 63);
  }

  std::uint64_t* row_data(std::size_t r) { return bits_.data() + r * stride_; }
  const std::uint64_t* row_data(std::size_t r) const { return bits_.data() + r * stride_; }

  BitVector row(std::size_t r) const;
  void set_row(std::size_t r, const BitVector& v);
  void xor_row(std::size_t dst, std::size_t src);
  void xor_into_row(std::size_t dst, const BitVector& v);
  bool row_is_zero(std::size_t r) const;

  // Copies m into this matrix with its top-left corner at (r0, c0).
  void set_block(std::size_t r0, std::size_t c0, const BitMatrix& m);
  // XORs m into this matrix with its top-left corner at (r0, c0).
  void add_block(std::size_t r0, std::size_t c0, const BitMatrix& m);
  BitMatrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;

  bool is_zero() const;
  BitMatrix transpose() const;
  std::vector<std::string> to_strings() const;

  BitMatrix& operator+=(const BitMatrix& other);
  friend BitMatrix operator+(BitMatrix a, const BitMatrix& b) { return a += b; }
  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);
  friend BitVector operator*(const BitVector& v, const BitMatrix& m);
  friend bool operator==(const BitMatrix& a, const BitMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> bits_;
};

BitMatrix kron(const BitMatrix& a, const BitMatrix& b);
BitMatrix hstack(const std::vector<BitMatrix>& blocks);
BitMatrix vstack(const std::vector<BitMatrix>& blocks);
BitMatrix direct_sum(const BitMatrix& a, const BitMatrix& b);

std::size_t rank(const BitMatrix& m);

// A subspace of GF(2)^n stored by its reduced row-echelon basis, so equal
// subspaces compare equal.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient);  // zero subspace
  // Span of the rows of `spanning`.
  explicit Subspace(const BitMatrix& spanning);

  static Subspace full(std::size_t ambient);
  static Subspace zero(std::size_t ambient) { return Subspace(ambient); }

  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const BitMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // Reduces v modulo the subspace; the result is zero at every pivot column.
  BitVector reduce(BitVector v) const;
  // Reduces every row of m.
  BitMatrix reduce_rows(BitMatrix m) const;
  bool contains(const BitVector& v) const { return reduce(v).none(); }
  bool contains(const Subspace& other) const;
  bool is_full() const { return dim() == ambient_dim(); }
  // Coordinates of v (assumed to lie in the subspace) in the echelon basis.
  BitVector coordinates(const BitVector& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) = default;

 private:
  BitMatrix basis_;
  std::vector<std::size_t> pivots_;
};

// {v : v*m = 0}
Subspace kernel(const BitMatrix& m);
// Row space of m, i.e. the image of v -> v*m.
Subspace image(const BitMatrix& m);
// Image of a subspace of the domain under v -> v*m.
Subspace image(const Subspace& u, const BitMatrix& m);
// {v : v*m in w}
Subspace preimage(const BitMatrix& m, const Subspace& w);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersection(const Subspace& a, const Subspace& b);
// Annihilator {x : x . u = 0 for all u in s}.
Subspace annihilator(const Subspace& s);

// Solves x*m = b for many right-hand sides after one elimination.
class LeftSolver {
 public:
  explicit LeftSolver(const BitMatrix& m);
  std::optional<BitVector> solve(const BitVector& b) const;
  std::size_t rank() const { return pivots_.size(); }

 private:
  std::size_t rows_ = 0;
  BitMatrix reduced_;    // first rank() rows are the echelon rows
  BitMatrix transform_;  // transform_ * m = reduced_
  std::vector<std::size_t> pivots_;
};

// Any x with x*m = b, or nothing.
std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b);

// Quotient z/b for b contained in z.  The section rows are coset
// representatives; coordinates() gives the quotient class of any vector of z.
class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(const Subspace& z, const Subspace& b);

  std::size_t dim() const { return section_.rows(); }
  std::size_t ambient_dim() const { return denominator_.ambient_dim(); }
  const BitMatrix& section() const { return section_; }
  const Subspace& numerator() const { return numerator_; }
  const Subspace& denominator() const { return denominator_; }

  // Class of v (assumed to lie in the numerator).
  BitVector coordinates(const BitVector& v) const;
  // Representative of the class with the given coordinates.
  BitVector lift(const BitVector& coords) const;

 private:
  Subspace numerator_;
  Subspace denominator_;
  BitMatrix section_;
  std::vector<std::size_t> section_pivots_;
};

}  // namespace eqw
