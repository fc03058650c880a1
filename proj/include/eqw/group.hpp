// Finite groups by multiplication table, modules over GF(2)[G], G-complexes.
//
// Actions are left actions.  With the row-vector convention the matrix A_g of
// v -> g.v satisfies A_{gh} = A_h * A_g.
#pragma once

#include <string>
#include <vector>

#include "eqw/complex.hpp"

namespace eqw {

class FiniteGroup {
 public:
  FiniteGroup();  // trivial group
  // table[a][b] = index of a*b.  Group axioms are checked exhaustively.
  explicit FiniteGroup(std::vector<std::vector<int>> table, std::string name = "table");

  static FiniteGroup cyclic(int n);
  static FiniteGroup trivial() { return FiniteGroup(); }

  int order() const { return static_cast<int>(table_.size()); }
  int mul(int a, int b) const { return table_[a][b]; }
  int identity() const { return identity_; }
  int inverse(int a) const { return inverse_[a]; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::string& name() const { return name_; }
  // Smallest n >= 1 with g^n = e for all g.
  int exponent() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.table_ == b.table_;
  }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
  std::string name_;
};

// Elements of G×H are indexed g*|H| + h.
FiniteGroup product_group(const FiniteGroup& g, const FiniteGroup& h);
inline int product_index(const FiniteGroup& h, int a, int b) { return a * h.order() + b; }

struct GroupHom {
  FiniteGroup source;
  FiniteGroup target;
  std::vector<int> image;

  GroupHom() = default;
  GroupHom(FiniteGroup source, FiniteGroup target, std::vector<int> image);
  int operator()(int g) const { return image[static_cast<std::size_t>(g)]; }
};

GroupHom identity_hom(const FiniteGroup& g);
GroupHom diagonal(const FiniteGroup& g);  // g -> (g, g)
GroupHom trivial_inclusion(const FiniteGroup& g);  // {e} -> G

class GModule {
 public:
  GModule(FiniteGroup group, std::size_t dim, std::vector<BitMatrix> action);

  static GModule trivial(const FiniteGroup& g, std::size_t dim);
  static GModule regular(const FiniteGroup& g);
  // Permutation module from an action on n points: perm[g][i] = g.i
  static GModule permutation(const FiniteGroup& g, const std::vector<std::vector<int>>& perm);

  const FiniteGroup& group() const { return group_; }
  std::size_t dim() const { return dim_; }
  const BitMatrix& action(int g) const { return action_[static_cast<std::size_t>(g)]; }

 private:
  FiniteGroup group_;
  std::size_t dim_;
  std::vector<BitMatrix> action_;
};

GModule tensor_gmodule(const GModule& a, const GModule& b);
Subspace invariants(const GModule& m);
Subspace invariants(const FiniteGroup& g, const std::vector<BitMatrix>& action, std::size_t dim);

class GComplex {
 public:
  GComplex() = default;
  // action[g] is the chain automorphism of g.  Laws are checked.
  GComplex(Complex complex, FiniteGroup group, std::vector<ComplexMap> action);

  static GComplex with_trivial_action(Complex complex, const FiniteGroup& g);

  const Complex& complex() const { return complex_; }
  const FiniteGroup& group() const { return group_; }
  Variance variance() const { return complex_.variance(); }
  const ComplexMap& action(int g) const { return action_[static_cast<std::size_t>(g)]; }
  // Matrix of g acting on degree k.
  BitMatrix act(int g, int k) const { return action(g).at(k, complex_, complex_); }
  GModule module(int k) const;
  // True if every g maps s (a subspace of degree k) into itself.
  bool is_stable(const Subspace& s, int k) const;

 private:
  Complex complex_;
  FiniteGroup group_;
  std::vector<ComplexMap> action_;
};

// Dual G-complex: g acts on the dual by the transpose of g^{-1}.
GComplex dualize(const GComplex& x);
GComplex negate_degrees(const GComplex& x);
GComplex shift_degrees(const GComplex& x, int by);
// Tensor over the product group.
GComplex tensor(const GComplex& a, const GComplex& b);
// Restriction of scalars along phi : G -> G'.
GComplex restrict_along(const GroupHom& phi, const GComplex& x);
// Fixed subcomplex K^G with its inclusion matrices (rows: basis of K^G in K).
struct FixedSubcomplex {
  Complex complex;
  std::vector<BitMatrix> inclusion;  // per degree lo..hi
  int lo = 0;
};
FixedSubcomplex fixed_subcomplex(const GComplex& x);

bool check_equivariant(const ComplexMap& f, const GComplex& x, const GComplex& y);

}  // namespace eqw
