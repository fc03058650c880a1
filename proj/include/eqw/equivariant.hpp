// The total complex L of Hom_G(F_p, K^q) for a G-complex K and a free
// resolution F, its filtrations, and the equivariant spectral sequences.
//
// An element psi of Hom_G(F_p, K^q) is stored by its values on the free
// generators, psi(e_i) in K^q, at coordinates offset + i*dim(K^q) + c.  The
// value on g.e_i is g.psi(e_i).  Differential: psi -> psi∘d + delta_K∘psi.
//
// For a chain G-complex C the homological mirror is used: Hom_G(F_p, C_q)
// sits in degree q - p.  It is built as L of the cochain complex K^{-q} = C_q
// with degrees negated afterwards, so both cases share one assembly.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eqw/filtration.hpp"
#include "eqw/group.hpp"
#include "eqw/resolution.hpp"

namespace eqw {

struct LBlock {
  int p = 0;               // resolution degree
  int q = 0;               // degree in the source complex
  std::size_t offset = 0;  // first coordinate inside the total degree
  std::size_t gens = 0;    // rank of F_p
  std::size_t width = 0;   // dim of the source complex in degree q
};

class LComplex {
 public:
  LComplex() = default;
  // Assembles total degrees up to window + 1 (cochain source) or down to
  // -(window + 1) (chain source).  The resolution must be over the same group.
  LComplex(GComplex source, FreeResolution resolution, int window);

  Variance variance() const { return source_.variance(); }
  const GComplex& source() const { return source_; }
  const FreeResolution& resolution() const { return resolution_; }
  int window() const { return window_; }
  const Complex& total() const { return total_; }

  // Blocks of total degree k (public degrees), ordered by p.
  std::vector<LBlock> blocks(int k) const;
  std::optional<LBlock> block(int p, int q) const;
  int total_degree(int p, int q) const { return variance() == Variance::cochain ? p + q : q - p; }

  // Degree k is certified when (k - lo) + width + 2 <= depth in the cochain
  // convention (k is negated for chain sources) and k is inside the window.
  bool certified(int k) const;
  std::vector<int> certified_degrees() const;

  // Elements of total degree k whose values in block (p, q) all lie in level(q).
  Subspace values_in(int k, const std::function<Subspace(int q)>& level) const;
  // Element with psi(e_gen) = v in block (p, q) and zero elsewhere.
  BitVector embed(int p, int q, int gen, const BitVector& v) const;
  BitVector value(const BitVector& x, int p, int q, int gen) const;

  // Internal cochain data (degrees negated for chain sources).
  const GComplex& internal_source() const { return k_; }
  const Complex& internal_total() const { return cochain_; }
  int internal_degree(int k) const { return variance() == Variance::cochain ? k : -k; }

 private:
  GComplex source_;
  GComplex k_;  // cochain form of the source
  FreeResolution resolution_;
  int window_ = 0;
  int top_ = 0;  // highest internal degree assembled
  Complex cochain_;
  Complex total_;
  std::vector<std::vector<LBlock>> blocks_;  // internal degree, internal q
};

// Smallest depth certifying every degree of the window.
int required_depth(const GComplex& source, int window);

struct DegreeDim {
  int degree = 0;
  std::size_t dim = 0;
  bool certified = false;
};
// H^k(G, K) (cochain source) or H_k(G, C) (chain source) for every assembled
// degree inside the window.
std::vector<DegreeDim> equivariant_cohomology(const LComplex& l);

// Filtration by resolution degree (first) or by source degree (second).
enum class HSKind { first, second };
FilteredComplex hs_filtration(const LComplex& l, HSKind which);
// First: E_2^{p,q} = H^p(G, H^q(K)), cohomological labels.
// Second: E_1^{p,q} = H^p(G, K^q), labels with p the group degree.
SpectralSequence hochschild_serre(const LComplex& l, HSKind which, int r_max = SpectralSequence::kAuto);

// Levels L(F K) for a G-stable filtration of the source (checked).
FilteredComplex induced_filtration(const LComplex& l, const FilteredComplex& f);
// Spectral sequence of the induced filtration, reindexed: page r label
// (p, q) reads the internal page r - 1 entry (-q, p + 2q).
SpectralSequence equivariant_weight_ss(const LComplex& l, const FilteredComplex& f,
                                       int r_max = SpectralSequence::kAuto);

// Graded piece F^a / F^{a+1} (cochain) or F_a / F_{a-1} (chain) as a G-complex.
GComplex graded_piece(const GComplex& x, const FilteredComplex& f, int a);
// Row q of the non-equivariant weight page 1: the graded piece of index -q
// shifted so that its degree p entry is the page entry (p, q).
GComplex weight_row(const GComplex& x, const FilteredComplex& f, int q);
// Hochschild-Serre spectral sequence of L(row q); abuts to row q of the
// equivariant weight page 2.
SpectralSequence auxiliary_ss(const GComplex& x, const FilteredComplex& f, const FreeResolution& res,
                              int q, HSKind which, int window);

// Invariant subcomplex with the restricted filtration, in its own basis.
struct InvariantFiltration {
  FixedSubcomplex fixed;
  FilteredComplex filtered;
};
InvariantFiltration invariant_filtration(const GComplex& x, const FilteredComplex& f);

// psi -> f∘psi for a G-map f between the sources (same resolution).
ComplexMap l_map(const ComplexMap& f, const LComplex& a, const LComplex& b);
// psi -> psi∘tau for a phi-equivariant lift tau : F -> F'.  `over_target` is
// L over the target group with F'; `over_source` is L of the restricted
// complex over the source group with F.
ComplexMap l_restriction(const ResolutionMap& tau, const LComplex& over_target,
                         const LComplex& over_source);

}  // namespace eqw
