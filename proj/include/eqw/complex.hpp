// Bounded chain and cochain complexes of finite-dimensional GF(2) spaces.
#pragma once

#include <vector>

#include "eqw/gf2.hpp"

namespace eqw {

// Chain complexes have differentials of degree -1, cochain complexes of
// degree +1.  Converting between the two is always explicit (dualize,
// negate_degrees).
enum class Variance { chain, cochain };

inline int step_of(Variance v) { return v == Variance::chain ? -1 : 1; }
inline Variance opposite(Variance v) {
  return v == Variance::chain ? Variance::cochain : Variance::chain;
}

class Complex {
 public:
  Complex() = default;
  // diffs[i] is the differential leaving degree lo + i.  Shapes and d∘d = 0
  // are checked.
  Complex(Variance variance, int lo, std::vector<std::size_t> dims, std::vector<BitMatrix> diffs);

  static Complex zero(Variance variance) { return Complex(variance, 0, {}, {}); }

  Variance variance() const { return variance_; }
  int step() const { return step_of(variance_); }
  int lo() const { return lo_; }
  // hi() < lo() for the zero complex.
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  bool empty() const { return dims_.empty(); }
  std::size_t dim(int k) const;
  std::size_t total_dim() const;

  // Differential leaving degree k; valid for lo()-1 <= k <= hi()+1, where
  // out-of-range degrees give correctly shaped empty matrices.
  const BitMatrix& d(int k) const;
  // Differential arriving in degree k.
  const BitMatrix& d_into(int k) const { return d(k - step()); }

 private:
  Variance variance_ = Variance::cochain;
  int lo_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<BitMatrix> diffs_;  // degrees lo-1 .. hi+1
};

Subspace cycles(const Complex& c, int k);
Subspace boundaries(const Complex& c, int k);

struct Homology {
  std::size_t dim = 0;
  BitMatrix representatives;  // rows are cycle representatives of a basis
  Subquotient quotient;       // cycles / boundaries
};

Homology homology(const Complex& c, int k);
std::size_t homology_dim(const Complex& c, int k);
long euler_characteristic(const Complex& c);
long homology_euler_characteristic(const Complex& c);

// Chain <-> cochain by transposing: the dual of C_q is identified with the
// same coordinate space, delta^q = transpose(d_{q+1}).
Complex dualize(const Complex& c);
// Chain C_k becomes cochain C^{-k} (and back) with the same matrices.
Complex negate_degrees(const Complex& c);
// Degree k becomes k + by; same matrices and variance.
Complex shift_degrees(const Complex& c, int by);
// (a⊗b)_n = ⊕_{i+j=n} a_i ⊗ b_j with blocks ordered by increasing i and
// coordinates x*dim(b_j)+y inside a block.
Complex tensor(const Complex& a, const Complex& b);
// Offset of the a_i ⊗ b_{n-i} block inside (a⊗b)_n.
std::size_t tensor_block_offset(const Complex& a, const Complex& b, int n, int i);

// A degree-preserving family of matrices f_k : S_k -> T_k.  Source and target
// are passed to the functions that need them.
struct ComplexMap {
  int lo = 0;
  std::vector<BitMatrix> parts;  // degrees lo .. lo+parts.size()-1

  // Matrix at degree k, sized from the complexes when k is out of range.
  BitMatrix at(int k, const Complex& source, const Complex& target) const;
};

ComplexMap identity_map(const Complex& c);
// The same matrices on the negated complexes.
ComplexMap negate_degrees(const ComplexMap& f);
ComplexMap zero_map(const Complex& source, const Complex& target);
ComplexMap compose(const ComplexMap& f, const ComplexMap& g, const Complex& a, const Complex& b,
                   const Complex& c);  // first f : a -> b, then g : b -> c
bool shapes_match(const ComplexMap& f, const Complex& source, const Complex& target);
bool is_chain_map(const ComplexMap& f, const Complex& source, const Complex& target);
// Matrix of the induced map H_k(source) -> H_k(target) in the bases given by
// homology().
BitMatrix induced_on_homology(const ComplexMap& f, const Complex& source, const Complex& target,
                              int k);
bool is_quasi_iso(const ComplexMap& f, const Complex& source, const Complex& target);

}  // namespace eqw
