// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eqw/equivariant.hpp"
#include "eqw/products.hpp"
#include "eqw/scenario.hpp"
#include "eqw/spaces.hpp"
#include "oracles.hpp"
#include "random_models.hpp"

using namespace eqw;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;
  void expect(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      note = what;
    }
  }
};

using Check = std::function<void(Outcome&)>;

constexpr int kInf = SpectralSequence::kInfinity;

std::string at(const std::string& name, int a, int b) {
  return name + " (" + std::to_string(a) + "," + std::to_string(b) + ")";
}

FreeResolution natural_resolution(const FiniteGroup& g, int depth) {
  if (g.order() == 1) return trivial_group_resolution(depth);
  return periodic_resolution(g.order(), depth);
}

int dimension_of(const GComplex& x) { return x.complex().hi(); }

// dim H^k of a complex by the oracle's independent elimination.
std::size_t oracle_homology(const Complex& c, int k) {
  return c.dim(k) - oracle::naive_rank(c.d(k)) - oracle::naive_rank(c.d_into(k));
}

std::vector<std::size_t> cohomology_dims(const LComplex& l) {
  std::vector<std::size_t> out;
  for (const auto& d : equivariant_cohomology(l))
    if (d.certified) out.push_back(d.dim);
  return out;
}

bool dd_zero(const Complex& c) {
  for (int k = c.lo(); k <= c.hi(); ++k)
    if (!(c.d(k) * c.d(k + c.step())).is_zero()) return false;
  return true;
}

// Every page dimension, d_r rank and omega level, as text.
std::string dump(const SpectralSequence& ss) {
  std::ostringstream os;
  for (int r = 0; r <= ss.last_page(); ++r)
    for (int a = ss.amin(); a <= ss.amax(); ++a)
      for (int k = ss.lo(); k <= ss.hi(); ++k) {
        os << ss.dim(r, {a, k});
        if (r >= 1) os << "/" << rank(ss.differential(r, {a, k}));
        os << " ";
      }
  for (int a = ss.amin(); a <= ss.amax(); ++a)
    for (int k = ss.lo(); k <= ss.hi(); ++k) os << ss.dim(kInf, {a, k}) << ":" << ss.omega_dim(a, k) << " ";
  return os.str();
}

SimplicialGSet rotation_square() {
  return SimplicialGSet("rotation_square", FiniteGroup::cyclic(4),
                        {{{0}, {1}, {2}, {3}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}},
                        {{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}});
}

std::vector<SimplicialGSet> all_builtins() {
  std::vector<SimplicialGSet> out;
  for (const auto& name : builtin_names()) out.push_back(builtin(name));
  out.push_back(point(FiniteGroup::cyclic(2)));
  out.push_back(point(FiniteGroup::cyclic(3)));
  return out;
}

// ---------------------------------------------------------------- 1

void reflection_cohomology(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  const GComplex x = reflection_circle().cochains();
  const int window = 8;
  const int depth = required_depth(x, window);
  const LComplex per(x, periodic_resolution(2, depth), window);
  const LComplex bar(x, bar_resolution(FiniteGroup::cyclic(2), depth), window);
  std::vector<std::size_t> expected(9, 2);
  expected[0] = 1;
  o.expect(cohomology_dims(per) == expected, "periodic dims");
  o.expect(cohomology_dims(bar) == expected, "bar dims");
  for (int k = 0; k <= window; ++k)
    o.expect(oracle_homology(per.total(), k) == expected[static_cast<std::size_t>(k)],
             "oracle elimination disagrees at " + std::to_string(k));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.expect(secs < 10.0, "took " + std::to_string(secs) + " s");
}

// ---------------------------------------------------------------- 2

void reflection_hs(Outcome& o) {
  const LComplex l(reflection_circle().cochains(), periodic_resolution(2, 11), 8);
  const SpectralSequence hs = hochschild_serre(l, HSKind::first);
  o.expect(check_spectral_sequence(hs).empty(), "self-check");
  std::size_t seen = 0;
  for (int p = 0; p <= 8; ++p)
    for (int q = 0; q <= 1; ++q) {
      if (!l.certified(p + q)) continue;
      ++seen;
      o.expect(hs.label_dim(2, p, q) == 1, at("E_2", p, q));
      o.expect(hs.label_dim(2, p, q) == hs.label_dim(kInf, p, q), at("E_2 vs E_inf", p, q));
      const auto [r, key] = hs.to_internal(2, p, q);
      o.expect(rank(hs.differential(r, key)) == 0, at("d_2", p, q));
    }
  o.expect(seen >= 16, "too few certified entries");
}

// ---------------------------------------------------------------- 3

void antipodal(Outcome& o) {
  const LComplex l(antipodal_circle().cochains(), periodic_resolution(2, 11), 8);
  std::vector<std::size_t> expected(9, 0);
  expected[0] = expected[1] = 1;
  o.expect(cohomology_dims(l) == expected, "dims");
  for (int k = 0; k <= 8; ++k)
    o.expect(oracle_homology(l.total(), k) == expected[static_cast<std::size_t>(k)], "oracle at " + std::to_string(k));
  const SpectralSequence hs = hochschild_serre(l, HSKind::first);
  o.expect(check_spectral_sequence(hs).empty(), "self-check");
  for (int p = 0; p + 2 <= 8; ++p) {
    const auto [r, key] = hs.to_internal(2, p, 1);
    o.expect(rank(hs.differential(r, key)) == 1, at("d_2 rank", p, 1));
    o.expect(hs.to_label(hs.target(r, key)) == std::pair{p + 2, 0}, at("d_2 target", p, 1));
  }
  std::vector<std::pair<int, int>> e3, einf;
  for (const auto& e : hs.labeled_page(3, 0, 7))
    if (e.dim) e3.push_back({e.p, e.q});
  for (const auto& e : hs.labeled_page(kInf, 0, 7))
    if (e.dim) einf.push_back({e.p, e.q});
  const std::vector<std::pair<int, int>> survivors = {{0, 0}, {1, 0}};
  o.expect(e3 == survivors, "E_3 survivors");
  o.expect(einf == survivors, "E_inf survivors");
}

// ---------------------------------------------------------------- 4

void reflection_homology(Outcome& o) {
  const SimplicialGSet x = reflection_circle();
  const int window = 8;
  const LComplex h(x.chains(), periodic_resolution(2, required_depth(x.chains(), window)), window);
  const LComplex c(x.cochains(), periodic_resolution(2, required_depth(x.cochains(), window)), window);
  std::size_t seen = 0;
  for (const auto& d : equivariant_cohomology(h)) {
    const std::size_t want = d.degree <= 0 ? 2 : d.degree == 1 ? 1 : 0;
    if (d.degree >= -8) {
      ++seen;
      o.expect(d.certified, "uncertified H_" + std::to_string(d.degree));
      o.expect(d.dim == want, "H_" + std::to_string(d.degree));
    }
  }
  o.expect(seen == 10, "expected degrees -8..1");
  o.expect(homology_dim(h.total(), 2) == 0, "H_2");
  // No classical duality between the two: H_k and H^k differ in degrees 0 and 1.
  o.expect(homology_dim(h.total(), 0) != homology_dim(c.total(), 0), "H_0 equals H^0");
  o.expect(homology_dim(h.total(), 1) != homology_dim(c.total(), 1), "H_1 equals H^1");
  o.expect(oracle_homology(h.total(), 0) == 2 && oracle_homology(h.total(), 1) == 1, "oracle");
}

// ---------------------------------------------------------------- 5

void weight_vs_hs(Outcome& o) {
  const std::vector<std::pair<SimplicialGSet, int>> cases = {
      {reflection_circle(), 8}, {antipodal_circle(), 8}, {torus_swap(), 5}};
  for (const auto& [x, window] : cases) {
    const GComplex k = x.cochains();
    const LComplex l(k, periodic_resolution(2, required_depth(k, window)), window);
    const SpectralSequence w = equivariant_weight_ss(l, canonical_filtration(k.complex()));
    const SpectralSequence hs = hochschild_serre(l, HSKind::first);
    std::size_t seen = 0;
    for (int p = 0; p <= window; ++p)
      for (int q = 0; q <= x.dimension(); ++q) {
        if (!l.certified(p + q)) continue;
        ++seen;
        o.expect(w.label_dim(2, p, q) == hs.label_dim(2, p, q), at(x.name(), p, q));
      }
    o.expect(seen > 0, x.name() + ": nothing compared");
  }
}

// ---------------------------------------------------------------- 6

void row_identity(Outcome& o) {
  std::size_t compared = 0;
  for (const auto& x : all_builtins()) {
    const GComplex k = x.cochains();
    const int d = dimension_of(k);
    const int window = 8 + d;
    const FilteredComplex can = canonical_filtration(k.complex());
    const LComplex l(k, natural_resolution(x.group(), required_depth(k, window)), window);
    const SpectralSequence w = equivariant_weight_ss(l, can);
    for (int q = 0; q <= d; ++q) {
      const GComplex row = weight_row(k, can, q);
      const LComplex lr(row, natural_resolution(x.group(), required_depth(row, 8)), 8);
      const int lo = row.complex().empty() ? 0 : std::min(0, row.complex().lo());
      for (int p = lo; p <= 8; ++p) {
        o.expect(lr.certified(p), at(x.name() + " row uncertified", p, q));
        o.expect(l.certified(p + q), at(x.name() + " weight uncertified", p, q));
        o.expect(w.label_dim(2, p, q) == homology_dim(lr.total(), p), at(x.name(), p, q));
        ++compared;
      }
    }
  }
  o.expect(compared >= 9 * all_builtins().size(), "only " + std::to_string(compared) + " entries compared");
}

// ---------------------------------------------------------------- 7

std::size_t bound_entries = 0;

void check_bounds(Outcome& o, const std::string& name, const GComplex& k, const LComplex& l) {
  const int d = dimension_of(k);
  const SpectralSequence w = equivariant_weight_ss(l, canonical_filtration(k.complex()));
  for (int page = 2; page <= w.last_label_page(); ++page)
    for (const auto& e : w.labeled_page(page, -1000, 1000))
      if (e.dim) {
        ++bound_entries;
        o.expect(e.q >= 0 && e.q <= d && e.p >= 0, at(name + " page " + std::to_string(page), e.p, e.q));
      }
  for (const auto& e : w.labeled_page(kInf, -1000, 1000))
    if (e.dim) o.expect(e.q >= 0 && e.q <= d && e.p >= 0, at(name + " E_inf", e.p, e.q));
  for (int m : l.certified_degrees()) {
    std::size_t sum = 0;
    for (const auto& e : w.labeled_page(kInf, m, m)) sum += e.dim;
    const std::size_t h = homology_dim(l.total(), m);
    o.expect(sum == h, name + ": E_inf sum in degree " + std::to_string(m));
    o.expect(w.omega_dim(-d, m) == h, name + ": Omega^-d in degree " + std::to_string(m));
    o.expect(w.omega_dim(1, m) == 0, name + ": Omega^1 in degree " + std::to_string(m));
  }
}

void bounds(Outcome& o) {
  for (const auto& x : all_builtins()) {
    const GComplex k = x.cochains();
    const int window = x.dimension() >= 2 ? 5 : 8;
    check_bounds(o, x.name(), k, LComplex(k, natural_resolution(x.group(), required_depth(k, window)), window));
  }
  std::mt19937_64 rng(7001);
  for (int trial = 0; trial < 40; ++trial) {
    const int order = 2 + trial % 2;
    const GComplex k = models::random_gcomplex(rng, order, Variance::cochain, 0, 3);
    check_bounds(o, "random " + std::to_string(trial), k,
                 LComplex(k, periodic_resolution(order, required_depth(k, 4)), 4));
  }
  o.expect(bound_entries > 100, "only " + std::to_string(bound_entries) + " nonzero entries seen");
}

// ---------------------------------------------------------------- 8

// Everything a report shows for one source and resolution, in certified degrees.
std::string reported_numbers(const GComplex& k, const FreeResolution& res, int window) {
  const LComplex l(k, res, window);
  std::ostringstream os;
  for (const auto& d : equivariant_cohomology(l))
    if (d.certified) os << d.degree << ":" << d.dim << " ";
  const std::vector<int> degs = l.certified_degrees();
  if (degs.empty()) return os.str();
  const SpectralSequence w = equivariant_weight_ss(l, canonical_filtration(k.complex()), 6);
  std::vector<int> pages = {2, 3, 4, 5, kInf};
  os << "| w ";
  for (int page : pages)
    for (const auto& e : w.labeled_page(page, degs.front(), degs.back()))
      if (e.dim) os << page << "(" << e.p << "," << e.q << ")=" << e.dim << "/" << e.d_rank << " ";
  for (int m : degs)
    for (int a = w.amin(); a <= w.amax() + 1; ++a) os << "o" << a << ":" << w.omega_dim(a, l.internal_degree(m)) << " ";
  if (k.variance() == Variance::cochain) {
    const SpectralSequence hs = hochschild_serre(l, HSKind::first, 6);
    os << "| hs ";
    for (int page : pages)
      for (const auto& e : hs.labeled_page(page, degs.front(), degs.back()))
        if (e.dim) os << page << "(" << e.p << "," << e.q << ")=" << e.dim << "/" << e.d_rank << " ";
  }
  return os.str();
}

void bar_vs_periodic(Outcome& o) {
  struct Case {
    SimplicialGSet x;
    int cochain_window, chain_window;
  };
  const std::vector<Case> cases = {
      {point(FiniteGroup::cyclic(2)), 6, 6}, {reflection_circle(), 6, 5}, {antipodal_circle(), 6, 5},
      {point(FiniteGroup::cyclic(3)), 4, 4}, {rotation_circle3(), 4, 3},  {point(FiniteGroup::cyclic(4)), 3, 3},
      {rotation_square(), 3, 2}};
  for (const auto& c : cases) {
    const FiniteGroup& g = c.x.group();
    for (const GComplex& k : {c.x.cochains(), c.x.chains()}) {
      const int window = k.variance() == Variance::cochain ? c.cochain_window : c.chain_window;
      const int depth = required_depth(k, window);
      const std::string a = reported_numbers(k, bar_resolution(g, depth), window);
      const std::string b = reported_numbers(k, periodic_resolution(g.order(), depth), window);
      o.expect(!a.empty() && a == b, c.x.name() + " over Z/" + std::to_string(g.order()) +
                                         (k.variance() == Variance::cochain ? " cochains" : " chains"));
    }
  }
}

// ---------------------------------------------------------------- 9

void odd_order(Outcome& o) {
  const GComplex x = rotation_circle3().cochains();
  const FilteredComplex can = canonical_filtration(x.complex());
  const LComplex l(x, periodic_resolution(3, 10), 6);
  const SpectralSequence w = equivariant_weight_ss(l, can, 5);
  const InvariantFiltration inv = invariant_filtration(x, can);
  const SpectralSequence t = SpectralSequence(inv.filtered, 5).relabeled(SSLabels::weight_cohomological);
  std::size_t compared = 0;
  for (int page : {2, 3, 4, 5, kInf})
    for (int p = -2; p <= 6; ++p)
      for (int q = -1; q <= 2; ++q) {
        if (!l.certified(p + q)) continue;
        ++compared;
        o.expect(w.label_dim(page, p, q) == t.label_dim(page, p, q), at("page " + std::to_string(page), p, q));
      }
  o.expect(compared > 0, "nothing compared");
  for (int m : l.certified_degrees())
    o.expect(homology_dim(l.total(), m) == homology_dim(inv.fixed.complex, m), "abutment " + std::to_string(m));
  const GComplex pt = point(FiniteGroup::cyclic(3)).cochains();
  for (const auto& d : equivariant_cohomology(LComplex(pt, periodic_resolution(3, 10), 8)))
    o.expect(d.dim == (d.degree == 0 ? 1u : 0u), "H^" + std::to_string(d.degree) + "(Z/3) periodic");
  for (const auto& d : equivariant_cohomology(LComplex(pt, bar_resolution(FiniteGroup::cyclic(3), 7), 5)))
    if (d.certified) o.expect(d.dim == (d.degree == 0 ? 1u : 0u), "H^" + std::to_string(d.degree) + "(Z/3) bar");
}

// ---------------------------------------------------------------- 10

void kunneth(Outcome& o) {
  const KunnethReport r = kunneth_equivariant(reflection_circle(), periodic_resolution(2, 10), reflection_circle(),
                                              periodic_resolution(2, 10), 6);
  o.expect(r.max_degree == 6, "max degree");
  o.expect(r.e1_equal, "E_1 " + r.detail);
  o.expect(r.einf_equal, "E_inf " + r.detail);
  o.expect(r.omega_equal, "Omega " + r.detail);
  o.expect(r.ok(), r.detail);
}

// ---------------------------------------------------------------- 11

void product_identities(Outcome& o) {
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  const EquivariantProducts refl(reflection_circle(), periodic_resolution(2, 9), 5);
  const EquivariantProducts anti(antipodal_circle(), periodic_resolution(2, 9), 5);
  const EquivariantProducts tsw(torus_swap(), periodic_resolution(2, 7), 3);
  const EquivariantProducts two(two_reflection_circles(), periodic_resolution(2, 9), 5);
  const EquivariantProducts pt(point(z2), periodic_resolution(2, 9), 5);
  std::vector<int> fold;
  for (int v = 0; v < 8; ++v) fold.push_back(v % 4);
  const std::vector<IdentityResult> results = {
      check_commutativity(refl),
      check_commutativity(tsw),
      check_associativity(refl),
      check_associativity(tsw),
      check_cup_functoriality(two, refl, fold),
      check_cup_functoriality(refl, pt, {0, 0, 0, 0}),
      check_pairing(reflection_circle()),
      check_pairing(torus_swap()),
      check_pairing(antipodal_circle()),
      check_mixed(refl),
      check_mixed(anti),
      check_projection(two, refl, fold),
      check_projection(refl, pt, {0, 0, 0, 0}),
      check_page_additivity(refl),
      check_page_additivity(tsw),
  };
  std::map<std::string, int> scenarios;
  for (const auto& r : results) {
    o.expect(r.pass, r.name + " on " + r.scenario + ": " + r.witness);
    o.expect(r.checked > 0, r.name + " on " + r.scenario + " checked nothing");
    ++scenarios[r.name];
  }
  for (const auto& [name, n] : scenarios) o.expect(n >= 2, name + " has one scenario");
}

// ---------------------------------------------------------------- 12

void duality(Outcome& o) {
  const EquivariantProducts refl(reflection_circle(), periodic_resolution(2, 12), 8);
  const DualityReport r = equivariant_duality(refl, refl.fundamental_class(fundamental_chain(reflection_circle())));
  o.expect(r.bijective, "reflection circle not bijective");
  o.expect(r.entries.size() >= 16, "too few entries: " + std::to_string(r.entries.size()));
  for (const auto& e : r.entries) {
    o.expect(e.rank == e.source_dim && e.rank == e.target_dim, at("entry", e.p, e.q));
    o.expect(e.tp == -e.p && e.tq == 1 - e.q, at("target label", e.p, e.q));
  }
  // Trivial group: classical Poincaré duality.
  for (const SimplicialGSet& base : {reflection_circle(), torus()}) {
    const SimplicialGSet x = with_group(base, FiniteGroup::trivial());
    const int d = x.dimension();
    const EquivariantProducts e(x, trivial_group_resolution(required_depth(x.chains(), d)), d);
    const DualityReport t = equivariant_duality(e, e.fundamental_class(fundamental_chain(x)));
    o.expect(t.bijective, x.name() + " trivial group not bijective");
    o.expect(static_cast<int>(t.degrees.size()) == d + 1, x.name() + " degrees");
    const Complex c = x.chains().complex();
    const Complex k = x.cochains().complex();
    for (const auto& dg : t.degrees) {
      o.expect(dg.source_dim == homology_dim(k, dg.k), x.name() + " source H^" + std::to_string(dg.k));
      o.expect(dg.target_dim == homology_dim(c, d - dg.k), x.name() + " target H_" + std::to_string(d - dg.k));
      o.expect(dg.rank == dg.source_dim && dg.source_dim == dg.target_dim, x.name() + " rank");
    }
  }
}

// ---------------------------------------------------------------- 13

std::size_t property_instances = 0;

void filtered_properties(Outcome& o, std::mt19937_64& rng) {
  for (int trial = 0; trial < 120; ++trial, ++property_instances) {
    const Variance v = trial % 2 ? Variance::chain : Variance::cochain;
    const Complex c = models::random_complex(rng, v, -1 + trial % 3, 3);
    const FilteredComplex f = models::random_filtration(rng, c, -1, 3);
    const std::string tag = "filtered " + std::to_string(trial);
    o.expect(dd_zero(c), tag + ": d∘d");
    const SpectralSequence ss(f, SpectralSequence::kAuto);
    o.expect(check_spectral_sequence(ss).empty(), tag + ": " + check_spectral_sequence(ss));
    o.expect(dump(ss) == dump(SpectralSequence(f, SpectralSequence::kAuto)), tag + ": determinism");
    // Brute-force page dimensions where enumeration is cheap.
    const bool chain = v == Variance::chain;
    auto orig = [&](int k) { return chain ? -k : k; };
    auto dim = [&](int k) { return c.dim(orig(k)); };
    auto level = [&](int a, int k) { return f.level(chain ? -a : a, orig(k)).basis(); };
    auto d = [&](int k) { return c.d(orig(k)); };
    for (int r = 0; r <= 2; ++r)
      for (int a = ss.amin(); a <= ss.amax(); ++a)
        for (int k = ss.lo(); k <= ss.hi(); ++k) {
          if (dim(k - 1) + dim(k) + dim(k + 1) > 14) continue;
          o.expect(ss.dim(r, {a, k}) == oracle::brute_page_dim(r, a, k, level, d, dim),
                   tag + ": brute page " + std::to_string(r));
        }
  }
}

void equivariant_properties(Outcome& o, std::mt19937_64& rng) {
  for (int trial = 0; trial < 100; ++trial, ++property_instances) {
    const int order = 2 + trial % 3;
    const bool bar = order == 2 && trial % 2 == 1;
    const Variance v = trial % 5 == 4 ? Variance::chain : Variance::cochain;
    const GComplex x = models::random_gcomplex(rng, order, v, 0, 3);
    const std::string tag = "G-complex " + std::to_string(trial);
    const int window = 3;
    const int depth = required_depth(x, window);
    auto make = [&](int n) {
      return bar ? bar_resolution(FiniteGroup::cyclic(order), n) : periodic_resolution(order, n);
    };
    const FreeResolution res = make(depth);
    const ExactnessReport ex = verify_resolution(res);
    o.expect(ex.exact, tag + ": resolution " + ex.detail);
    const LComplex l(x, res, window);
    o.expect(dd_zero(l.total()), tag + ": d∘d on L");
    const FilteredComplex can = canonical_filtration(x.complex());
    const SpectralSequence w = equivariant_weight_ss(l, can);
    o.expect(check_spectral_sequence(w).empty(), tag + ": weight " + check_spectral_sequence(w));
    if (v == Variance::cochain) {
      const SpectralSequence hs = hochschild_serre(l, HSKind::first);
      o.expect(check_spectral_sequence(hs).empty(), tag + ": hs " + check_spectral_sequence(hs));
    }
    // Truncation: two more resolution degrees change nothing certified.
    const LComplex l2(x, make(depth + 2), window);
    const SpectralSequence w2 = equivariant_weight_ss(l2, can);
    for (int m : l.certified_degrees()) {
      o.expect(homology_dim(l.total(), m) == homology_dim(l2.total(), m), tag + ": truncation H");
      for (int page : {2, 3, kInf})
        for (const auto& e : w.labeled_page(page, m, m))
          o.expect(e.dim == w2.label_dim(page, e.p, e.q), tag + ": truncation page");
    }
    o.expect(dump(w) == dump(equivariant_weight_ss(LComplex(x, make(depth), window), can)), tag + ": determinism");
  }
}

void builtin_properties(Outcome& o) {
  for (const auto& x : all_builtins())
    for (const GComplex& k : {x.cochains(), x.chains()}) {
      const std::string tag = x.name() + (k.variance() == Variance::cochain ? " cochains" : " chains");
      const int window = 4;
      const int depth = required_depth(k, window);
      const FreeResolution res = natural_resolution(x.group(), depth);
      o.expect(verify_resolution(res).exact, tag + ": resolution");
      const LComplex l(k, res, window);
      o.expect(dd_zero(l.total()), tag + ": d∘d");
      const FilteredComplex can = canonical_filtration(k.complex());
      const SpectralSequence w = equivariant_weight_ss(l, can);
      o.expect(check_spectral_sequence(w).empty(), tag + ": " + check_spectral_sequence(w));
      const LComplex l2(k, natural_resolution(x.group(), depth + 2), window);
      const SpectralSequence w2 = equivariant_weight_ss(l2, can);
      for (int m : l.certified_degrees())
        for (int page : {2, 3, kInf})
          for (const auto& e : w.labeled_page(page, m, m))
            o.expect(e.dim == w2.label_dim(page, e.p, e.q), tag + ": truncation");
      o.expect(dump(w) == dump(equivariant_weight_ss(LComplex(k, res, window), can)), tag + ": determinism");
    }
  // Resolutions over non-cyclic groups and tensor resolutions.
  const FiniteGroup s3({{0, 1, 2, 3, 4, 5}, {1, 2, 0, 5, 3, 4}, {2, 0, 1, 4, 5, 3},
                        {3, 4, 5, 0, 1, 2}, {4, 5, 3, 2, 0, 1}, {5, 3, 4, 1, 2, 0}});
  const FiniteGroup v4 = product_group(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  for (const FiniteGroup& g : {s3, v4, FiniteGroup::cyclic(5)})
    o.expect(verify_resolution(bar_resolution(g, 4)).exact, "bar resolution of order " + std::to_string(g.order()));
  o.expect(verify_resolution(tensor_resolution(periodic_resolution(2, 5), periodic_resolution(3, 5))).exact,
           "tensor resolution");
}

void report_determinism(Outcome& o) {
  namespace sc = eqw::scenario;
  for (const char* name : {"reflection_circle_full.json", "antipodal_circle_full.json", "identity_suite.json",
                           "point_minimal.json"}) {
    const sc::ParseResult p = sc::parse_file(std::string(EQW_SOURCE_DIR) + "/scenarios/" + name);
    o.expect(p.ok(), std::string(name) + " does not parse");
    if (!p.ok()) continue;
    const std::string a = sc::render(sc::run(*p.scenario, 1), sc::Format::json);
    const std::string b = sc::render(sc::run(*p.scenario, 1), sc::Format::json);
    const std::string c = sc::render(sc::run(*p.scenario, 4), sc::Format::json);
    o.expect(a == b && a == c, std::string(name) + ": report bytes differ");
    o.expect(sc::render(sc::run(*p.scenario), sc::Format::table) ==
                 sc::render(sc::run(*p.scenario, 3), sc::Format::table),
             std::string(name) + ": table bytes differ");
  }
}

void properties(Outcome& o) {
  std::mt19937_64 rng(20261016);
  filtered_properties(o, rng);
  equivariant_properties(o, rng);
  builtin_properties(o);
  report_determinism(o);
  o.expect(property_instances >= 200, "only " + std::to_string(property_instances) + " random instances");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Check>> criteria = {
      {"reflection circle H^k dims 1,2,...,2 to degree 8, bar and periodic, under 10 s", reflection_cohomology},
      {"reflection circle Hochschild-Serre: d_2 = 0 and E_2 = E_inf", reflection_hs},
      {"antipodal circle: dims 1,1,0,...; d_2 rank 1 from row q=1; E_3 survivors (0,0),(1,0)", antipodal},
      {"reflection circle equivariant homology dims, different from cohomology", reflection_homology},
      {"weight page 2 equals Hochschild-Serre page 2 on both circles and torus_swap", weight_vs_hs},
      {"row identity of weight page 2 with group cohomology of page 1 rows, all builtins", row_identity},
      {"page bounds 0 <= q <= d, p >= 0; Omega^-d = H^k, Omega^1 = 0", bounds},
      {"bar and periodic resolutions agree for Z/2, Z/3, Z/4", bar_vs_periodic},
      {"Z/3 rotation circle: weight tower equals invariant tower; H^p(Z/3) = 0 for p >= 1", odd_order},
      {"Künneth for reflection x reflection over Z/2 x Z/2 to degree 6", kunneth},
      {"product identity suite on at least two scenarios each", product_identities},
      {"cap with the fundamental class: bijective on page 2; Poincaré duality at the trivial group", duality},
      {"property suites on random instances and builtins", properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s %2zu  %s  [%.2fs]%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.pass ? "" : "  -- ", o.note.c_str());
    if (i + 1 == criteria.size() && o.pass)
      std::printf("         %zu random instances\n", property_instances);
  }
  return failed == 0 ? 0 : 1;
}
