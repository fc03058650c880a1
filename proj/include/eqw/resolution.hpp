// Truncated free resolutions of the trivial module GF(2) over GF(2)[G].
//
// F_p = GF(2)[G]^{r_p}.  The vector-space basis of F_p is {g.e_i}, indexed
// i*|G| + g.  Boundaries are stored by their values on the generators e_i and
// extended equivariantly: d(g.e_i) = g.d(e_i).
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "eqw/group.hpp"

namespace eqw {

// The basis element g.e_gen.
struct FreeTerm {
  int gen;
  int g;
  friend bool operator==(const FreeTerm&, const FreeTerm&) = default;
  friend auto operator<=>(const FreeTerm&, const FreeTerm&) = default;
};

class FreeResolution {
 public:
  FreeResolution() = default;
  // boundary[p][i] lists the terms of d(e_i) for p >= 1 (boundary[0] is
  // empty); augmentation[i] = eps(e_i) for generators of F_0.
  FreeResolution(FiniteGroup group, std::vector<std::size_t> ranks,
                 std::vector<std::vector<std::vector<FreeTerm>>> boundary,
                 std::vector<bool> augmentation, std::string kind);

  const FiniteGroup& group() const { return group_; }
  const std::string& kind() const { return kind_; }
  int depth() const { return static_cast<int>(ranks_.size()) - 1; }
  std::size_t rank(int p) const;
  std::size_t dim(int p) const { return rank(p) * static_cast<std::size_t>(group_.order()); }
  std::size_t index(int gen, int g) const {
    return static_cast<std::size_t>(gen) * static_cast<std::size_t>(group_.order()) +
           static_cast<std::size_t>(g);
  }

  const std::vector<FreeTerm>& boundary_terms(int p, int gen) const;
  bool augmentation(int gen) const { return augmentation_[static_cast<std::size_t>(gen)]; }

  // d(e_gen) as a vector of F_{p-1}.
  BitVector boundary_vector(int p, int gen) const;
  // Full matrix of d_p : F_p -> F_{p-1}.
  BitMatrix boundary_matrix(int p) const;
  // eps : F_0 -> GF(2) as a dim(0) x 1 matrix.
  BitMatrix augmentation_matrix() const;
  // Matrix of the left action of g on F_p.
  BitMatrix action_matrix(int p, int g) const;
  // g.v for v in F_p.
  BitVector act(int p, int g, const BitVector& v) const;

 private:
  FiniteGroup group_;
  std::vector<std::size_t> ranks_;
  std::vector<std::vector<std::vector<FreeTerm>>> boundary_;
  std::vector<bool> augmentation_;
  std::string kind_;
};

// Default cap on the number of generators in the top degree of a bar
// resolution.
inline constexpr std::size_t kDefaultBarBudget = std::size_t{1} << 15;

FreeResolution bar_resolution(const FiniteGroup& g, int depth,
                              std::size_t max_generators = kDefaultBarBudget);
FreeResolution periodic_resolution(int cyclic_order, int depth);
// F_0 = GF(2), nothing above; valid only for the trivial group.
FreeResolution trivial_group_resolution(int depth);
FreeResolution tensor_resolution(const FreeResolution& a, const FreeResolution& b);

struct ExactnessReport {
  bool exact = true;
  int failing_degree = -1;  // -1 when exact; 0 means at the augmentation
  std::string detail;
};
// Checks d∘d = 0, eps∘d_1 = 0, equivariance against the regular action, and
// exactness at every degree strictly below the depth.
ExactnessReport verify_resolution(const FreeResolution& f);

// A phi-equivariant chain map tau : F -> F' stored by its values on
// generators.
struct ResolutionMap {
  GroupHom phi;
  std::vector<std::vector<BitVector>> images;  // images[p][i] = tau(e_i) in F'_p

  int depth() const { return static_cast<int>(images.size()) - 1; }
  // Full matrix F_p -> F'_p.
  BitMatrix matrix(int p, const FreeResolution& source, const FreeResolution& target) const;
};

// Lifts the identity of GF(2) along phi by solving degree by degree.  With an
// rng, a random element of the solution space is chosen instead of the
// canonical one (used to produce a second, homotopic lift).
ResolutionMap lift_chain_map(const GroupHom& phi, const FreeResolution& source,
                             const FreeResolution& target, std::mt19937_64* rng = nullptr);

// Checks the three lifting equations: equivariance, eps'∘tau_0 = eps,
// d'∘tau = tau∘d.
bool verify_lift(const ResolutionMap& tau, const FreeResolution& source,
                 const FreeResolution& target);

// h_p : F_p -> F'_{p+1} with tau - tau' = d'h + hd, up to degree limit.
struct ResolutionHomotopy {
  std::vector<std::vector<BitVector>> images;  // images[p][i] = h(e_i) in F'_{p+1}
};
std::optional<ResolutionHomotopy> chain_homotopy(const ResolutionMap& tau,
                                                 const ResolutionMap& tau2,
                                                 const FreeResolution& source,
                                                 const FreeResolution& target, int limit);

}  // namespace eqw
