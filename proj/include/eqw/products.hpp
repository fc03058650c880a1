// Cross, cup and cap products on simplicial models and on L complexes.
//
// C(X × Y) is modelled as C(X) ⊗ C(Y), so the cross product u is the
// identity.  The diagonal is Alexander-Whitney,
//   sigma -> sum_i front_i(sigma) ⊗ back_{n-i}(sigma),
// cup is (phi ⌣ psi)(sigma) = phi(front) psi(back) and cap evaluates on the
// back face, phi ⌢ sigma = front_{n-q}(sigma) phi(back_q(sigma)), so that
// psi(phi ⌢ c) = (psi ⌣ phi)(c) holds on chains.
//
// On L complexes a product is (psi ⊗ psi') ∘ tau followed by a G-map
// m : X ⊗ Y -> Z, where tau : F -> F ⊗ F lifts the diagonal G -> G × G.
// Products are additive in internal filtration indices of the canonical
// weight filtrations, so they pass to every page.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "eqw/equivariant.hpp"
#include "eqw/spaces.hpp"

namespace eqw {

// ---------------------------------------------------------------- chains

// C(X) -> C(X) ⊗ C(X).
ComplexMap aw_diagonal(const SimplicialGSet& x);
// Dual pairing tensor(a^*, b^*) -> (a ⊗ b)^* for chain complexes a, b.
ComplexMap dual_pairing(const Complex& a, const Complex& b);
// phi ⊗ (a ⊗ b) -> phi(a) b.  Source tensor(negate_degrees(dualize(c)),
// tensor(c, c)), a chain complex; target c.
ComplexMap evaluation(const Complex& c);

struct PairingData {
  GComplex chains;    // C(X) over G
  GComplex cochains;  // C^*(X) over G
  ComplexMap u;       // C(X) ⊗ C(X) -> C(X × X), the identity here
  ComplexMap w;       // dual_pairing of C(X) with itself
  ComplexMap aw;      // aw_diagonal
  ComplexMap h;       // evaluation
};
PairingData pairing_data(const SimplicialGSet& x);
// Chain-map and equivariance checks: u, w over G × G, aw and h over the
// diagonal.  Empty string when all pass.
std::string check_pairing_data(const PairingData& d);

// Cup as a G-map tensor(K, K) -> K, K = C^*(X), diagonal action.
ComplexMap cup_map(const SimplicialGSet& x);
// Cap as a G-map tensor(K, C') -> C' with C' = negate_degrees(C(X)).
ComplexMap cap_map(const SimplicialGSet& x);
// The same cap assembled as h ∘ (1 ⊗ swap ∘ aw) on chain complexes; used to
// cross-check cap_map.
ComplexMap cap_via_evaluation(const SimplicialGSet& x);

// ---------------------------------------------------------------- modules

// Hom_G(B, A) ⊗ Hom_G'(B', A') -> Hom_{G×G'}(B ⊗ B', A ⊗ A'), f ⊗ f' ->
// (b ⊗ b' -> f(b) ⊗ f'(b')).  Hom spaces are kernels inside vec(Hom), index
// i * dim(target) + j for the matrix entry (i, j); `matrix` is written in
// their bases with row r * dim(hom_b) + s for the basis pair (r, s).
struct HomTensorIso {
  Subspace hom_a, hom_b, hom_ab;
  BitMatrix matrix;
};
Subspace equivariant_homs(const GModule& source, const GModule& target);
HomTensorIso hom_tensor_iso(const GModule& b, const GModule& a, const GModule& b2, const GModule& a2);

// ---------------------------------------------------------------- L level

// tensor(L_G(K), L_G'(M)) -> L_{G×G'}(K ⊗ M) for cochain sources.  `ab`
// must use tensor_resolution of the two resolutions.  Pairs whose target
// block is not assembled map to zero.
ComplexMap l_product_iso(const LComplex& a, const LComplex& b, const LComplex& ab);

class LProduct {
 public:
  LProduct() = default;
  // x, y, z share one resolution F over G; tau lifts diagonal(G) from F to
  // tensor_resolution(F, F); m : X ⊗ Y -> Z on the internal cochain sources.
  LProduct(LComplex x, LComplex y, LComplex z, ComplexMap m, ResolutionMap tau);

  const LComplex& left() const { return x_; }
  const LComplex& right() const { return y_; }
  const LComplex& result() const { return z_; }
  // Internal degrees; the result lives in internal degree i + j of z.
  BitVector operator()(const BitVector& a, int i, const BitVector& b, int j) const;
  // Whether internal degree i + j is assembled in z.
  bool defined(int i, int j) const;

 private:
  LComplex x_, y_, z_;
  ComplexMap m_;
  ResolutionMap tau_;
  GComplex xy_;  // tensor of the internal sources over G × G
  std::vector<std::vector<std::size_t>> offsets_;  // tensor resolution generator offsets
};

using Bilinear = std::function<BitVector(const BitVector&, const BitVector&)>;

// Row i * dim(y) + j is the class of x_i * y_j in the target entry, for the
// section bases of the two source entries.  Throws when a product leaves the
// numerator of the target entry.
BitMatrix page_product(const Bilinear& mul, const Subquotient& x, const Subquotient& y,
                       const Subquotient& z);
// The same on internal keys of page r (or kInfinity).  A target key outside
// the range of sz gives a matrix with no columns.
BitMatrix page_product(const LProduct& mul, const SpectralSequence& sx, SSKey kx,
                       const SpectralSequence& sy, SSKey ky, const SpectralSequence& sz, int r);

// Cup and cap for one space: L of the cochains and of the chains over a
// common resolution, the diagonal lift, and the canonical weight sequences.
class EquivariantProducts {
 public:
  EquivariantProducts(SimplicialGSet x, FreeResolution res, int window);

  const SimplicialGSet& space() const { return x_; }
  const LComplex& cochains() const { return cup_.left(); }
  const LComplex& chains() const { return cap_.right(); }
  const ResolutionMap& diagonal_lift() const { return tau_; }
  int window() const { return window_; }

  // Public degrees: cup of degrees a, b lands in a + b; cap of cochain degree
  // a with chain degree m lands in chain degree m - a.
  BitVector cup(const BitVector& x, int a, const BitVector& y, int b) const;
  BitVector cap(const BitVector& phi, int a, const BitVector& c, int m) const;
  const LProduct& cup_product() const { return cup_; }
  const LProduct& cap_product() const { return cap_; }

  // Weight spectral sequences of the canonical filtrations, internal labels.
  const SpectralSequence& cochain_ss() const { return cochain_ss_; }
  const SpectralSequence& chain_ss() const { return chain_ss_; }

  // [X] as an element of L in chain degree d: the fundamental chain on the
  // generator of F_0.  Requires F_0 of rank 1.
  BitVector fundamental_class(const BitVector& chain) const;

 private:
  SimplicialGSet x_;
  FreeResolution res_;
  int window_ = 0;
  ResolutionMap tau_;
  LProduct cup_, cap_;
  SpectralSequence cochain_ss_, chain_ss_;
};

// Product of classes: row r * dim(H_y) + s holds the class of x_r * y_s in
// H_z, in the bases of homology() on the internal totals.  Degrees are
// internal.
BitMatrix homology_product(const LProduct& mul, int i, int j);
// Certified and inside the assembled range (public degree k).
bool usable_degree(const LComplex& l, int k);

// ---------------------------------------------------------------- identities

struct IdentityResult {
  std::string name;
  std::string scenario;
  bool pass = true;
  std::size_t checked = 0;  // number of basis evaluations
  std::string witness;      // first failure
};

IdentityResult check_commutativity(const EquivariantProducts& e);
IdentityResult check_associativity(const EquivariantProducts& e);
// f^*(x ⌣ y) = f^*(x) ⌣ f^*(y) for an equivariant simplicial map f : X -> Y
// (same group and resolution).
IdentityResult check_cup_functoriality(const EquivariantProducts& ex, const EquivariantProducts& ey,
                                       const std::vector<int>& vertex_map);
// psi(phi ⌢ c) = (psi ⌣ phi)(c) on all basis triples of cochains and chains.
IdentityResult check_pairing(const SimplicialGSet& x);
// (psi ⌣ phi) ⌢ c = psi ⌢ (phi ⌢ c) on classes.
IdentityResult check_mixed(const EquivariantProducts& e);
// phi ⌢ f_*(c) = f_*(f^*(phi) ⌢ c) on classes.
IdentityResult check_projection(const EquivariantProducts& ex, const EquivariantProducts& ey,
                                const std::vector<int>& vertex_map);
// iso ∘ (L(f) ⊗ L(g)) = L(f ⊗ g) ∘ iso for cochain maps f, g (chain level,
// certified degrees).
IdentityResult check_cross_naturality(const SimplicialGSet& x, const SimplicialGSet& y,
                                      const std::vector<int>& vertex_map, const FreeResolution& res,
                                      int window);
// Every product table on pages r >= 1 (internal) and on E_infinity lands in
// the entry with summed indices.
IdentityResult check_page_additivity(const EquivariantProducts& e);

// ---------------------------------------------------------------- Künneth

struct KunnethReport {
  int max_degree = 0;
  bool e1_equal = true;
  bool pages_equal = true;  // pages 2 and later
  bool einf_equal = true;
  bool omega_equal = true;
  bool iso_filtered = true;
  bool iso_e1_bijective = true;
  std::string detail;  // first mismatch
  bool ok() const { return e1_equal && pages_equal && einf_equal && omega_equal && iso_filtered && iso_e1_bijective; }
};
// Compares the weight sequence of L_G(K) ⊗ L_G'(M) with that of
// L_{G×G'}(K ⊗ M) in degrees up to max_degree.  Both resolutions must
// certify max_degree.
KunnethReport kunneth_equivariant(const SimplicialGSet& x, const FreeResolution& fx, const SimplicialGSet& y,
                                  const FreeResolution& fy, int max_degree);

// ---------------------------------------------------------------- duality

struct DualityEntry {
  int p = 0, q = 0;  // cohomological weight label
  int tp = 0, tq = 0;  // homological weight label of the image
  std::size_t source_dim = 0, target_dim = 0, rank = 0;
};
struct DualityDegree {
  int k = 0;  // H^k -> H_{d-k}
  std::size_t source_dim = 0, target_dim = 0, rank = 0;
};
struct DualityReport {
  int page = 2;
  std::vector<DualityEntry> entries;
  std::vector<DualityDegree> degrees;
  bool bijective = true;
};
// Cap with [X] on weight page `page` (label) and on the abutments, over
// certified degrees.  The fundamental chain must be an invariant cycle.
DualityReport equivariant_duality(const EquivariantProducts& e, const BitVector& fundamental, int page = 2);

}  // namespace eqw
