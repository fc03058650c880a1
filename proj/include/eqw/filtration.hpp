// Filtered complexes and their spectral sequences.
//
// Internally every spectral sequence is computed in the cohomological
// convention: a decreasing filtration F^a of a complex with differential of
// degree +1.  A chain complex C_j with increasing filtration F_s is fed in as
// C'^{-j} with F'^{-s} = F_s, so internal keys (a, k) correspond to the
// homological labels s = -a, j = -k.  Labels are applied only at the edges.
#pragma once

#include <compare>
#include <map>
#include <memory>
#include <vector>

#include "eqw/complex.hpp"

namespace eqw {

class FilteredComplex {
 public:
  FilteredComplex() = default;
  // levels[i][k - lo] is the level with index fmin + i in degree k.
  // Cochain: decreasing, F^{fmin} = everything, F^p = 0 for p > fmax.
  // Chain: increasing, F_s = 0 for s < fmin, F_{fmax} = everything.
  // Monotonicity, bounds and compatibility with the differential are checked.
  FilteredComplex(Complex complex, int fmin, int fmax, std::vector<std::vector<Subspace>> levels);

  const Complex& complex() const { return complex_; }
  Variance variance() const { return complex_.variance(); }
  int fmin() const { return fmin_; }
  int fmax() const { return fmax_; }
  // Level with the given index in degree k, for any integers.
  Subspace level(int index, int k) const;

 private:
  Complex complex_;
  int fmin_ = 0;
  int fmax_ = 0;
  std::vector<std::vector<Subspace>> levels_;
};

// One jump: F^0 = everything (cochain) or F_0 = everything (chain).
FilteredComplex trivial_filtration(const Complex& c);
// Truncation filtration.  Cochain: F^p C^k = C^k for k < -p, Z^k for k = -p,
// 0 for k > -p.  Chain: F_s C_k = C_k for k > -s, Z_k for k = -s, 0 for
// k < -s.  With these constants the graded piece of index a has homology
// only in total degree -a, so after the weight reindexing row q of page 2
// is H^q placed in column 0.
FilteredComplex canonical_filtration(const Complex& c);
// Annihilator filtration on the dual: G^p C^q = {phi : phi = 0 on G_{p-1} C_q}.
FilteredComplex dual_filtration(const FilteredComplex& f);
// (F⊗G)^l = sum over a+b=l of F^a ⊗ G^b, block by block.
FilteredComplex tensor_filtered(const FilteredComplex& a, const FilteredComplex& b);
// Filtration given by a filtration index per basis vector: level l contains
// basis vectors whose index is >= l (cochain) or <= l (chain).
FilteredComplex coordinate_filtration(const Complex& c, const std::vector<std::vector<int>>& index,
                                      int fmin, int fmax);

struct SSKey {
  int a = 0;  // internal filtration index
  int k = 0;  // internal total degree
  friend auto operator<=>(const SSKey&, const SSKey&) = default;
};

// How (p, q) labels on a page are read.
enum class SSLabels {
  cohomological,         // E_r^{p,q}: a = p, k = p + q
  homological,           // E^r_{s,t}: a = -s, k = -(s + t)
  weight_cohomological,  // Ẽ_r^{p,q} = E_{r-1}^{-q, p+2q}
  weight_homological,    // Ẽ^r_{p,q} = E^{r-1}_{-q, p+2q}
  transposed             // E_r^{p,q} with a = q, k = p + q
};

struct LabeledEntry {
  int p = 0;
  int q = 0;
  std::size_t dim = 0;
  std::size_t d_rank = 0;  // rank of the differential leaving this entry
};

class SpectralSequence {
 public:
  static constexpr int kInfinity = -1;
  static constexpr int kAuto = -1;

  SpectralSequence() = default;
  // Pages 0..r_max and E_infinity; kAuto means width + 2, which is past the
  // page where the sequence stabilizes.  Other r_max < 1 is an error.
  SpectralSequence(const FilteredComplex& f, int r_max);

  Variance variance() const;
  const FilteredComplex& filtered() const { return data_->filtered; }
  int amin() const { return data_->amin; }
  int amax() const { return data_->amax; }
  int lo() const { return data_->lo; }  // internal degree range
  int hi() const { return data_->hi; }
  int last_page() const { return static_cast<int>(data_->pages.size()) - 1; }

  // Internal access.  r = kInfinity selects E_infinity.
  const Subquotient& entry(int r, SSKey key) const;
  std::size_t dim(int r, SSKey key) const { return entry(r, key).dim(); }
  SSKey target(int r, SSKey key) const { return {key.a + r, key.k + 1}; }
  // d_r : E_r(key) -> E_r(key + (r, 1)) in the section bases.
  BitMatrix differential(int r, SSKey key) const;
  // H^k of the total complex (internal degree).
  std::size_t total_dim(int k) const;
  // dim of the image of H(F^level) in H, internal indexing.
  std::size_t omega_dim(int level, int k) const;
  // dim E_{r+1} computed as homology of (E_r, d_r); the recursion the
  // closed-form pages must satisfy.
  std::size_t recursion_dim(int r, SSKey key) const;

  // Labels.
  SSLabels labels() const { return labels_; }
  SpectralSequence relabeled(SSLabels labels) const;
  int first_label_page() const;
  int last_label_page() const;
  // Internal key and page for a labeled entry.  Page kInfinity maps to itself.
  std::pair<int, SSKey> to_internal(int page, int p, int q) const;
  std::pair<int, int> to_label(SSKey key) const;
  // Original degree of an internal degree and back.
  int original_degree(int k) const { return variance() == Variance::chain ? -k : k; }
  std::size_t label_dim(int page, int p, int q) const;
  // Every entry of a labeled page (page kInfinity allowed) whose total degree
  // lies in [k_lo, k_hi].  Total degree is the original degree of the complex
  // (j for chain complexes, k for cochain complexes).
  std::vector<LabeledEntry> labeled_page(int page, int k_lo, int k_hi) const;

 private:
  struct Data {
    FilteredComplex filtered;
    int amin = 0, amax = 0, lo = 0, hi = 0;
    std::vector<std::map<SSKey, Subquotient>> pages;
    std::map<SSKey, Subquotient> infinity;
    std::vector<std::size_t> total;               // by k - lo
    std::vector<std::vector<std::size_t>> omega;  // [k - lo][level - amin]
    std::vector<std::map<SSKey, BitMatrix>> differentials;
  };
  std::shared_ptr<const Data> data_;
  SSLabels labels_ = SSLabels::cohomological;
};

// Checks d_r∘d_r = 0, the page recursion for every entry, stabilization at
// E_infinity and the abutment sums.  Returns an empty string on success.
std::string check_spectral_sequence(const SpectralSequence& ss);

bool is_filtered(const ComplexMap& f, const FilteredComplex& source, const FilteredComplex& target);
// Map induced on E_r at an internal key by a filtered chain map.
BitMatrix page_map(const SpectralSequence& source, const SpectralSequence& target,
                   const ComplexMap& f, int r, SSKey key);
// True iff the induced maps on E_1 are bijective.  Throws on non-filtered maps.
bool is_filtered_qis(const ComplexMap& f, const FilteredComplex& source,
                     const FilteredComplex& target);

}  // namespace eqw
