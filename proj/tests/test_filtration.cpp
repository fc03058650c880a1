#include <random>

#include "doctest.h"
#include "eqw/error.hpp"
#include "eqw/filtration.hpp"
#include "oracles.hpp"
#include "random_models.hpp"

using namespace eqw;

namespace {

// Page dimensions by enumeration, in the internal convention of the engine.
std::size_t brute_dim(const FilteredComplex& f, int r, SSKey key) {
  const bool chain = f.variance() == Variance::chain;
  const Complex& c = f.complex();
  auto orig = [&](int k) { return chain ? -k : k; };
  auto dim = [&](int k) { return c.dim(orig(k)); };
  auto level = [&](int a, int k) { return f.level(chain ? -a : a, orig(k)).basis(); };
  auto d = [&](int k) { return c.d(orig(k)); };
  return oracle::brute_page_dim(r, key.a, key.k, level, d, dim);
}

Complex circle_cochains() {
  BitMatrix d0(4, 4);
  for (std::size_t e = 0; e < 4; ++e) {
    d0.set(e, e);
    d0.set((e + 1) % 4, e);
  }
  return Complex(Variance::cochain, 0, {4, 4}, {d0, BitMatrix(4, 0)});
}

}  // namespace

TEST_CASE("pages agree with enumeration on random filtered complexes") {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Variance v = trial % 2 ? Variance::chain : Variance::cochain;
    const Complex c = models::random_complex(rng, v, trial % 3 - 1, 1 + trial % 3, 2);
    if (c.total_dim() > 14) continue;
    bool small = true;
    for (int k = c.lo(); k <= c.hi(); ++k) small &= c.dim(k) <= 7;
    if (!small) continue;
    const FilteredComplex f = models::random_filtration(rng, c, trial % 4 - 2, 1 + trial % 3);
    const SpectralSequence ss(f, SpectralSequence::kAuto);
    CHECK(check_spectral_sequence(ss) == "");
    for (int r = 0; r <= ss.last_page(); ++r)
      for (int a = ss.amin(); a <= ss.amax(); ++a)
        for (int k = ss.lo(); k <= ss.hi(); ++k) {
          CHECK(ss.dim(r, {a, k}) == brute_dim(f, r, {a, k}));
          ++checked;
        }
  }
  CHECK(checked > 100);
}

TEST_CASE("engine self-checks on many random instances") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const Variance v = trial % 2 ? Variance::chain : Variance::cochain;
    const Complex c = models::random_complex(rng, v, trial % 5 - 2, 1 + trial % 4);
    const FilteredComplex f = models::random_filtration(rng, c, trial % 3 - 1, 1 + trial % 4);
    const SpectralSequence ss(f, SpectralSequence::kAuto);
    CHECK(check_spectral_sequence(ss) == "");
    for (int k = ss.lo(); k <= ss.hi(); ++k)
      CHECK(ss.total_dim(k) == homology_dim(c, ss.original_degree(k)));
  }
}

TEST_CASE("trivial filtration: E_1 is the cohomology") {
  const Complex c = circle_cochains();
  const SpectralSequence ss(trivial_filtration(c), 3);
  CHECK(ss.dim(0, {0, 0}) == 4);
  CHECK(ss.dim(1, {0, 0}) == 1);
  CHECK(ss.dim(1, {0, 1}) == 1);
  CHECK(check_spectral_sequence(ss) == "");
}

TEST_CASE("canonical filtration: reindexed page 2 puts H^q in column 0") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    const Variance v = trial % 2 ? Variance::chain : Variance::cochain;
    const Complex c = models::random_complex(rng, v, trial % 3 - 1, 1 + trial % 4);
    const SpectralSequence ss =
        SpectralSequence(canonical_filtration(c), SpectralSequence::kAuto)
            .relabeled(v == Variance::chain ? SSLabels::weight_homological : SSLabels::weight_cohomological);
    CHECK(check_spectral_sequence(ss) == "");
    CHECK(ss.first_label_page() == 1);
    for (const auto& e : ss.labeled_page(2, c.lo(), c.hi())) {
      if (e.p == 0)
        CHECK(e.dim == homology_dim(c, e.q));
      else
        CHECK(e.dim == 0);
      CHECK(e.d_rank == 0);
    }
    for (int q = c.lo(); q <= c.hi(); ++q)
      CHECK(ss.label_dim(SpectralSequence::kInfinity, 0, q) == homology_dim(c, q));
  }
}

TEST_CASE("dual filtration pages have the same dimensions") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 40; ++trial) {
    const Complex c = models::random_complex(rng, Variance::chain, trial % 3 - 1, 1 + trial % 4);
    const FilteredComplex f = models::random_filtration(rng, c, trial % 3 - 1, 1 + trial % 3);
    const FilteredComplex g = dual_filtration(f);
    CHECK(g.variance() == Variance::cochain);
    const SpectralSequence a(f, SpectralSequence::kAuto), b(g, SpectralSequence::kAuto);
    CHECK(check_spectral_sequence(b) == "");
    for (int r = 0; r <= std::min(a.last_page(), b.last_page()); ++r)
      for (int x = a.amin(); x <= a.amax(); ++x)
        for (int k = a.lo(); k <= a.hi(); ++k) CHECK(a.dim(r, {x, k}) == b.dim(r, {-x, -k}));
    // and back
    const FilteredComplex h = dual_filtration(g);
    CHECK(h.variance() == Variance::chain);
    for (int s = f.fmin() - 1; s <= f.fmax() + 1; ++s)
      for (int k = c.lo(); k <= c.hi(); ++k) CHECK(h.level(s, k) == f.level(s, k));
  }
}

TEST_CASE("tensor of filtrations: E_1 and E_infinity multiply") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 25; ++trial) {
    const Variance v = trial % 2 ? Variance::chain : Variance::cochain;
    const Complex ca = models::random_complex(rng, v, 0, 1 + trial % 3, 2);
    const Complex cb = models::random_complex(rng, v, trial % 2, 1 + trial % 2, 2);
    const FilteredComplex fa = models::random_filtration(rng, ca, 0, 1 + trial % 2);
    const FilteredComplex fb = models::random_filtration(rng, cb, -1, 2);
    const FilteredComplex ft = tensor_filtered(fa, fb);
    const SpectralSequence a(fa, 1), b(fb, 1), t(ft, SpectralSequence::kAuto);
    CHECK(check_spectral_sequence(t) == "");
    for (int l = t.amin(); l <= t.amax(); ++l)
      for (int n = t.lo(); n <= t.hi(); ++n) {
        std::size_t e0 = 0, e1 = 0;
        for (int x = a.amin(); x <= a.amax(); ++x)
          for (int i = a.lo(); i <= a.hi(); ++i) {
            e0 += a.dim(0, {x, i}) * b.dim(0, {l - x, n - i});
            e1 += a.dim(1, {x, i}) * b.dim(1, {l - x, n - i});
          }
        CHECK(t.dim(0, {l, n}) == e0);
        CHECK(t.dim(1, {l, n}) == e1);
      }
  }
}

TEST_CASE("labels round trip") {
  const SpectralSequence base(canonical_filtration(circle_cochains()), SpectralSequence::kAuto);
  for (auto l : {SSLabels::cohomological, SSLabels::homological, SSLabels::weight_cohomological,
                 SSLabels::weight_homological, SSLabels::transposed}) {
    const SpectralSequence s = base.relabeled(l);
    for (int a = -3; a <= 3; ++a)
      for (int k = -3; k <= 3; ++k) {
        const auto [p, q] = s.to_label({a, k});
        const auto [r, key] = s.to_internal(s.first_label_page() + 1, p, q);
        CHECK(key == SSKey{a, k});
        CHECK(r == 1);
      }
  }
  CHECK_THROWS_AS(base.label_dim(99, 0, 0), Error);
}

TEST_CASE("filtered maps and filtered quasi-isomorphisms") {
  const Complex c = circle_cochains();
  const FilteredComplex can = canonical_filtration(c);
  const FilteredComplex triv = trivial_filtration(c);
  CHECK(is_filtered(identity_map(c), can, triv));
  CHECK(is_filtered_qis(identity_map(c), can, can));
  CHECK_FALSE(is_filtered_qis(identity_map(c), can, triv));
  CHECK_FALSE(is_filtered(identity_map(c), triv, can));
  CHECK_THROWS_AS(SpectralSequence(can, 0), Error);

  // canonical cochain filtration -> dual of the canonical chain filtration
  const FilteredComplex dual_can = dual_filtration(canonical_filtration(dualize(c)));
  CHECK(dual_can.complex().d(0) == c.d(0));
  CHECK(is_filtered(identity_map(c), can, dual_can));
  CHECK(is_filtered_qis(identity_map(c), can, dual_can));
  CHECK_FALSE(is_filtered_qis(zero_map(c, c), can, can));

  // C = two generators in degrees 0, 1 with indices 0, 1; plus an acyclic pair.
  const Complex small(Variance::cochain, 0, {1, 1}, {BitMatrix(1, 1), BitMatrix(1, 0)});
  const Complex big(Variance::cochain, 0, {2, 2},
                    {BitMatrix::from_strings({"00", "01"}, 2), BitMatrix(2, 0)});
  const FilteredComplex fs = coordinate_filtration(small, {{0}, {1}}, 0, 1);
  ComplexMap proj;
  proj.lo = 0;
  proj.parts = {BitMatrix::from_strings({"1", "0"}, 1), BitMatrix::from_strings({"1", "0"}, 1)};
  CHECK(is_filtered_qis(proj, coordinate_filtration(big, {{0, 0}, {1, 0}}, 0, 1), fs));
  // pair split across levels: the graded pieces are no longer acyclic
  CHECK_FALSE(is_filtered_qis(proj, coordinate_filtration(big, {{0, 0}, {1, 1}}, 0, 1), fs));
  // not a subcomplex
  CHECK_THROWS_AS(coordinate_filtration(big, {{0, 1}, {1, 0}}, 0, 1), Error);
}
