#include <random>

#include "doctest.h"
#include "eqw/error.hpp"
#include "eqw/resolution.hpp"

using namespace eqw;

namespace {

// dim H^p(G; GF(2)) from Hom_G(F_p, GF(2)) = GF(2)^{r_p}: the cochain
// differential sends a functional on generators f to f∘d, i.e. the matrix
// whose (i, j) entry is eps-image of the coefficient count of e_i in d(e_j).
std::size_t trivial_cohomology(const FreeResolution& f, int p) {
  auto coboundary = [&](int q) {  // Hom(F_q) -> Hom(F_{q+1})
    BitMatrix m(f.rank(q), f.rank(q + 1));
    for (std::size_t j = 0; j < f.rank(q + 1); ++j)
      for (const auto& t : f.boundary_terms(q + 1, static_cast<int>(j))) m.flip(t.gen, j);
    return m;
  };
  const std::size_t out = rank(coboundary(p));
  const std::size_t in = p > 0 ? rank(coboundary(p - 1)) : 0;
  return f.rank(p) - out - in;
}

}  // namespace

TEST_CASE("bar resolution") {
  const auto z2 = FiniteGroup::cyclic(2);
  const auto b = bar_resolution(z2, 4);
  for (int p = 0; p <= 4; ++p) CHECK(b.rank(p) == (std::size_t{1} << p));
  CHECK(verify_resolution(b).exact);
  CHECK((b.boundary_matrix(1) * b.augmentation_matrix()).is_zero());
  for (int p = 0; p <= 3; ++p) CHECK(trivial_cohomology(b, p) == 1);
  CHECK_THROWS_AS(bar_resolution(FiniteGroup::cyclic(4), 20, 1000), Error);
}

TEST_CASE("bar resolution exactness for several groups") {
  for (int n : {1, 2, 3, 4}) {
    const auto b = bar_resolution(FiniteGroup::cyclic(n), n <= 2 ? 6 : 4);
    CHECK(verify_resolution(b).exact);
  }
  const auto z2 = FiniteGroup::cyclic(2);
  CHECK(verify_resolution(bar_resolution(product_group(z2, z2), 3)).exact);
}

TEST_CASE("periodic resolution") {
  const auto p2 = periodic_resolution(2, 6);
  CHECK(p2.boundary_terms(1, 0) == p2.boundary_terms(2, 0));
  CHECK(verify_resolution(p2).exact);
  const auto p3 = periodic_resolution(3, 7);
  CHECK(verify_resolution(p3).exact);
  CHECK(trivial_cohomology(p3, 0) == 1);
  for (int p = 1; p < 7; ++p) CHECK(trivial_cohomology(p3, p) == 0);
  const auto p0 = periodic_resolution(2, 0);
  CHECK(p0.depth() == 0);
  CHECK(p0.dim(0) == 2);
  CHECK(verify_resolution(periodic_resolution(4, 8)).exact);
  CHECK(verify_resolution(periodic_resolution(1, 4)).exact);
  // cross-check with the bar resolution
  const auto b = bar_resolution(FiniteGroup::cyclic(2), 5);
  for (int p = 0; p < 5; ++p) CHECK(trivial_cohomology(b, p) == trivial_cohomology(p2, p));
}

TEST_CASE("tensor resolution") {
  const auto t = tensor_resolution(periodic_resolution(2, 3), periodic_resolution(2, 3));
  CHECK(t.rank(0) == 1);
  CHECK(t.rank(1) == 2);
  CHECK(t.rank(2) == 3);
  CHECK(t.rank(3) == 4);
  CHECK(verify_resolution(t).exact);
  for (int p = 0; p < 3; ++p) CHECK(trivial_cohomology(t, p) == static_cast<std::size_t>(p + 1));
  const auto mixed = tensor_resolution(bar_resolution(FiniteGroup::cyclic(2), 3),
                                       periodic_resolution(3, 4));
  CHECK(mixed.depth() == 3);
  CHECK(verify_resolution(mixed).exact);
}

TEST_CASE("lifting chain maps") {
  const auto z2 = FiniteGroup::cyclic(2);
  const auto p = periodic_resolution(2, 6);
  const auto id = lift_chain_map(identity_hom(z2), p, p);
  CHECK(verify_lift(id, p, p));
  // homotopic to the identity map
  ResolutionMap ident{identity_hom(z2), {}};
  for (int d = 0; d <= 6; ++d) ident.images.push_back({BitVector::unit(2, 0)});
  CHECK(chain_homotopy(id, ident, p, p, 5).has_value());

  const auto t = tensor_resolution(p, p);
  const auto diag = lift_chain_map(diagonal(z2), periodic_resolution(2, 4), t);
  CHECK(verify_lift(diag, periodic_resolution(2, 4), t));

  std::mt19937_64 rng(5);
  const auto other = lift_chain_map(diagonal(z2), periodic_resolution(2, 4), t, &rng);
  CHECK(verify_lift(other, periodic_resolution(2, 4), t));
  CHECK(chain_homotopy(diag, other, periodic_resolution(2, 4), t, 4).has_value());

  const auto triv = lift_chain_map(trivial_inclusion(z2), trivial_group_resolution(4), p);
  CHECK(verify_lift(triv, trivial_group_resolution(4), p));
  // into the trivial group: tau collapses onto augmentations
  const GroupHom to_trivial(z2, FiniteGroup::trivial(), {0, 0});
  const auto collapse = lift_chain_map(to_trivial, periodic_resolution(2, 3),
                                       trivial_group_resolution(3));
  CHECK(verify_lift(collapse, periodic_resolution(2, 3), trivial_group_resolution(3)));
  CHECK(collapse.images[0][0].to_string() == "1");
  CHECK(collapse.images[1].size() == 1);
  CHECK(collapse.images[1][0].size() == 0);

  const auto b = bar_resolution(z2, 5);
  const auto bp = lift_chain_map(identity_hom(z2), b, p);
  CHECK(verify_lift(bp, b, p));
}
