#include "eqw/resolution.hpp"

#include <algorithm>
#include <map>

#include "eqw/error.hpp"

namespace eqw {

namespace {

// Cancels repeated terms in pairs and sorts the rest.
std::vector<FreeTerm> normalize(std::vector<FreeTerm> terms) {
  std::sort(terms.begin(), terms.end());
  std::vector<FreeTerm> out;
  for (const auto& t : terms) {
    if (!out.empty() && out.back() == t)
      out.pop_back();
    else
      out.push_back(t);
  }
  return out;
}

}  // namespace

FreeResolution::FreeResolution(FiniteGroup group, std::vector<std::size_t> ranks,
                               std::vector<std::vector<std::vector<FreeTerm>>> boundary,
                               std::vector<bool> augmentation, std::string kind)
    : group_(std::move(group)),
      ranks_(std::move(ranks)),
      boundary_(std::move(boundary)),
      augmentation_(std::move(augmentation)),
      kind_(std::move(kind)) {
  require(!ranks_.empty(), "resolution: needs at least F_0");
  require(boundary_.size() == ranks_.size(), "resolution: one boundary list per degree");
  require(augmentation_.size() == ranks_[0], "resolution: augmentation size mismatch");
  for (int p = 1; p <= depth(); ++p) {
    require(boundary_[p].size() == ranks_[p], "resolution: boundary count mismatch");
    for (auto& terms : boundary_[p]) {
      for (const auto& t : terms)
        require(t.gen >= 0 && static_cast<std::size_t>(t.gen) < ranks_[p - 1] && t.g >= 0 &&
                    t.g < group_.order(),
                "resolution: boundary term out of range");
      terms = normalize(terms);
    }
  }
  // d∘d = 0 and eps∘d_1 = 0 on generators.
  for (int p = 1; p <= depth(); ++p) {
    for (std::size_t i = 0; i < ranks_[p]; ++i) {
      if (p == 1) {
        bool e = false;
        for (const auto& t : boundary_[1][i]) e ^= augmentation_[t.gen];
        require(!e, "resolution: eps∘d_1 != 0");
      } else {
        BitVector dd(dim(p - 2));
        for (const auto& t : boundary_[p][i])
          dd ^= act(p - 2, t.g, boundary_vector(p - 1, t.gen));
        require(dd.none(), "resolution: d∘d != 0 at degree " + std::to_string(p));
      }
    }
  }
}

std::size_t FreeResolution::rank(int p) const {
  if (p < 0 || p > depth()) return 0;
  return ranks_[static_cast<std::size_t>(p)];
}

const std::vector<FreeTerm>& FreeResolution::boundary_terms(int p, int gen) const {
  require(p >= 1 && p <= depth(), "resolution: boundary degree out of range");
  return boundary_[static_cast<std::size_t>(p)][static_cast<std::size_t>(gen)];
}

BitVector FreeResolution::boundary_vector(int p, int gen) const {
  BitVector v(dim(p - 1));
  for (const auto& t : boundary_terms(p, gen)) v.flip(index(t.gen, t.g));
  return v;
}

BitVector FreeResolution::act(int p, int g, const BitVector& v) const {
  BitVector out(dim(p));
  const int n = group_.order();
  for (std::size_t x = v.first_set(); x < v.size(); ++x) {
    if (!v.get(x)) continue;
    const std::size_t gen = x / static_cast<std::size_t>(n);
    const int h = static_cast<int>(x % static_cast<std::size_t>(n));
    out.flip(index(static_cast<int>(gen), group_.mul(g, h)));
  }
  return out;
}

BitMatrix FreeResolution::boundary_matrix(int p) const {
  BitMatrix m(dim(p), dim(p - 1));
  for (std::size_t i = 0; i < rank(p); ++i)
    for (int g = 0; g < group_.order(); ++g)
      for (const auto& t : boundary_terms(p, static_cast<int>(i)))
        m.flip(index(static_cast<int>(i), g), index(t.gen, group_.mul(g, t.g)));
  return m;
}

BitMatrix FreeResolution::augmentation_matrix() const {
  BitMatrix m(dim(0), 1);
  for (std::size_t i = 0; i < rank(0); ++i)
    for (int g = 0; g < group_.order(); ++g)
      if (augmentation_[i]) m.set(index(static_cast<int>(i), g), 0);
  return m;
}

BitMatrix FreeResolution::action_matrix(int p, int g) const {
  BitMatrix m(dim(p), dim(p));
  for (std::size_t i = 0; i < rank(p); ++i)
    for (int h = 0; h < group_.order(); ++h)
      m.set(index(static_cast<int>(i), h), index(static_cast<int>(i), group_.mul(g, h)));
  return m;
}

// ---------------------------------------------------------------- builders

FreeResolution bar_resolution(const FiniteGroup& g, int depth, std::size_t max_generators) {
  require(depth >= 0, "bar resolution: depth must be non-negative");
  const auto n = static_cast<std::size_t>(g.order());
  std::vector<std::size_t> ranks{1};
  for (int p = 1; p <= depth; ++p) {
    require(ranks.back() <= max_generators / n,
            "bar resolution: |G|^" + std::to_string(p) + " exceeds the generator budget of " +
                std::to_string(max_generators));
    ranks.push_back(ranks.back() * n);
  }
  std::vector<std::vector<std::vector<FreeTerm>>> boundary(static_cast<std::size_t>(depth) + 1);
  std::vector<int> tuple;
  for (int p = 1; p <= depth; ++p) {
    auto& level = boundary[static_cast<std::size_t>(p)];
    level.resize(ranks[static_cast<std::size_t>(p)]);
    tuple.assign(static_cast<std::size_t>(p), 0);
    for (std::size_t code = 0; code < ranks[static_cast<std::size_t>(p)]; ++code) {
      // Decode (g_1, ..., g_p), g_1 most significant.
      std::size_t c = code;
      for (int k = p - 1; k >= 0; --k) {
        tuple[static_cast<std::size_t>(k)] = static_cast<int>(c % n);
        c /= n;
      }
      auto encode = [&](const std::vector<int>& t) {
        std::size_t e = 0;
        for (int x : t) e = e * n + static_cast<std::size_t>(x);
        return static_cast<int>(e);
      };
      std::vector<FreeTerm> terms;
      // g_1 . [g_2 | ... | g_p]
      terms.push_back({encode(std::vector<int>(tuple.begin() + 1, tuple.end())), tuple[0]});
      // [ ... | g_i g_{i+1} | ... ]
      for (int i = 0; i + 1 < p; ++i) {
        std::vector<int> t;
        for (int k = 0; k < p; ++k) {
          if (k == i)
            t.push_back(g.mul(tuple[static_cast<std::size_t>(k)],
                              tuple[static_cast<std::size_t>(k + 1)]));
          else if (k != i + 1)
            t.push_back(tuple[static_cast<std::size_t>(k)]);
        }
        terms.push_back({encode(t), g.identity()});
      }
      // [g_1 | ... | g_{p-1}]
      terms.push_back({encode(std::vector<int>(tuple.begin(), tuple.end() - 1)), g.identity()});
      level[code] = std::move(terms);
    }
  }
  return FreeResolution(g, std::move(ranks), std::move(boundary), {true}, "bar");
}

FreeResolution periodic_resolution(int cyclic_order, int depth) {
  require(depth >= 0, "periodic resolution: depth must be non-negative");
  const FiniteGroup g = FiniteGroup::cyclic(cyclic_order);
  std::vector<std::vector<std::vector<FreeTerm>>> boundary(static_cast<std::size_t>(depth) + 1);
  for (int p = 1; p <= depth; ++p) {
    std::vector<FreeTerm> terms;
    if (p % 2 == 1) {
      terms = {{0, 1 % cyclic_order}, {0, 0}};  // sigma - 1
    } else {
      for (int i = 0; i < cyclic_order; ++i) terms.push_back({0, i});  // norm
    }
    boundary[static_cast<std::size_t>(p)] = {terms};
  }
  return FreeResolution(g, std::vector<std::size_t>(static_cast<std::size_t>(depth) + 1, 1),
                        std::move(boundary), {true}, "periodic");
}

FreeResolution trivial_group_resolution(int depth) {
  require(depth >= 0, "trivial resolution: depth must be non-negative");
  std::vector<std::size_t> ranks(static_cast<std::size_t>(depth) + 1, 0);
  ranks[0] = 1;
  std::vector<std::vector<std::vector<FreeTerm>>> boundary(static_cast<std::size_t>(depth) + 1);
  return FreeResolution(FiniteGroup::trivial(), std::move(ranks), std::move(boundary), {true},
                        "trivial");
}

FreeResolution tensor_resolution(const FreeResolution& a, const FreeResolution& b) {
  const FiniteGroup g = product_group(a.group(), b.group());
  const int depth = std::min(a.depth(), b.depth());
  // offset[k][i] = first generator index of the (i, k-i) block in degree k.
  std::vector<std::vector<std::size_t>> offset(static_cast<std::size_t>(depth) + 1);
  std::vector<std::size_t> ranks;
  for (int k = 0; k <= depth; ++k) {
    std::size_t r = 0;
    for (int i = 0; i <= k; ++i) {
      offset[static_cast<std::size_t>(k)].push_back(r);
      r += a.rank(i) * b.rank(k - i);
    }
    ranks.push_back(r);
  }
  auto gen_index = [&](int k, int i, int x, int y) {
    return static_cast<int>(offset[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] +
                            static_cast<std::size_t>(x) * b.rank(k - i) +
                            static_cast<std::size_t>(y));
  };
  std::vector<std::vector<std::vector<FreeTerm>>> boundary(static_cast<std::size_t>(depth) + 1);
  for (int k = 1; k <= depth; ++k) {
    auto& level = boundary[static_cast<std::size_t>(k)];
    level.resize(ranks[static_cast<std::size_t>(k)]);
    for (int i = 0; i <= k; ++i) {
      const int j = k - i;
      for (std::size_t x = 0; x < a.rank(i); ++x) {
        for (std::size_t y = 0; y < b.rank(j); ++y) {
          auto& terms = level[static_cast<std::size_t>(
              gen_index(k, i, static_cast<int>(x), static_cast<int>(y)))];
          if (i >= 1)
            for (const auto& t : a.boundary_terms(i, static_cast<int>(x)))
              terms.push_back({gen_index(k - 1, i - 1, t.gen, static_cast<int>(y)),
                               product_index(b.group(), t.g, b.group().identity())});
          if (j >= 1)
            for (const auto& t : b.boundary_terms(j, static_cast<int>(y)))
              terms.push_back({gen_index(k - 1, i, static_cast<int>(x), t.gen),
                               product_index(b.group(), a.group().identity(), t.g)});
        }
      }
    }
  }
  std::vector<bool> aug;
  for (std::size_t x = 0; x < a.rank(0); ++x)
    for (std::size_t y = 0; y < b.rank(0); ++y)
      aug.push_back(a.augmentation(static_cast<int>(x)) && b.augmentation(static_cast<int>(y)));
  return FreeResolution(g, std::move(ranks), std::move(boundary), std::move(aug),
                        "tensor(" + a.kind() + "," + b.kind() + ")");
}

ExactnessReport verify_resolution(const FreeResolution& f) {
  ExactnessReport rep;
  auto fail = [&](int p, std::string what) {
    rep.exact = false;
    rep.failing_degree = p;
    rep.detail = std::move(what);
    return rep;
  };
  const FiniteGroup& g = f.group();
  for (int p = 1; p <= f.depth(); ++p) {
    const BitMatrix d = f.boundary_matrix(p);
    for (int x = 0; x < g.order(); ++x)
      if (!(f.action_matrix(p, x) * d == d * f.action_matrix(p - 1, x)))
        return fail(p, "boundary is not equivariant");
  }
  const BitMatrix eps = f.augmentation_matrix();
  if (f.dim(0) > 0 && rank(eps) != 1) return fail(0, "augmentation is not surjective");
  // ker eps = im d_1
  const std::size_t r1 = f.depth() >= 1 ? rank(f.boundary_matrix(1)) : 0;
  if (f.depth() >= 1 && f.dim(0) - rank(eps) != r1) return fail(0, "ker eps != im d_1");
  std::size_t prev = r1;
  for (int p = 1; p < f.depth(); ++p) {
    const std::size_t next = rank(f.boundary_matrix(p + 1));
    if (f.dim(p) - prev != next) return fail(p, "ker d_p != im d_{p+1}");
    prev = next;
  }
  return rep;
}

// ---------------------------------------------------------------- lifting

BitMatrix ResolutionMap::matrix(int p, const FreeResolution& source,
                                const FreeResolution& target) const {
  BitMatrix m(source.dim(p), target.dim(p));
  for (std::size_t i = 0; i < source.rank(p); ++i)
    for (int g = 0; g < source.group().order(); ++g)
      m.set_row(source.index(static_cast<int>(i), g),
                target.act(p, phi(g), images[static_cast<std::size_t>(p)][i]));
  return m;
}

namespace {

// tau_{p-1}(d e_gen) in F'_{p-1}.
BitVector image_of_boundary(const ResolutionMap& tau, const FreeResolution& source,
                            const FreeResolution& target, int p, int gen) {
  BitVector t(target.dim(p - 1));
  for (const auto& term : source.boundary_terms(p, gen))
    t ^= target.act(p - 1, tau.phi(term.g),
                    tau.images[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(term.gen)]);
  return t;
}

BitVector random_element(const Subspace& s, std::mt19937_64& rng) {
  BitVector c(s.dim());
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < s.dim(); ++i)
    if (coin(rng)) c.set(i);
  return c * s.basis();
}

}  // namespace

ResolutionMap lift_chain_map(const GroupHom& phi, const FreeResolution& source,
                             const FreeResolution& target, std::mt19937_64* rng) {
  require(phi.source == source.group() && phi.target == target.group(),
          "lift_chain_map: groups do not match the homomorphism");
  require(source.depth() <= target.depth(),
          "lift_chain_map: source depth exceeds target depth");
  ResolutionMap tau{phi, {}};
  tau.images.resize(static_cast<std::size_t>(source.depth()) + 1);
  {
    const BitMatrix eps = target.augmentation_matrix();
    const LeftSolver solver(eps);
    const Subspace free_part = rng ? kernel(eps) : Subspace(0);
    for (std::size_t i = 0; i < source.rank(0); ++i) {
      BitVector rhs(1);
      rhs.set(0, source.augmentation(static_cast<int>(i)));
      auto x = solver.solve(rhs);
      require(x.has_value(), "lift_chain_map: augmentation of the target is not surjective");
      if (rng) *x ^= random_element(free_part, *rng);
      tau.images[0].push_back(*x);
    }
  }
  for (int p = 1; p <= source.depth(); ++p) {
    const BitMatrix d = target.boundary_matrix(p);
    const LeftSolver solver(d);
    const Subspace free_part = rng ? kernel(d) : Subspace(0);
    for (std::size_t i = 0; i < source.rank(p); ++i) {
      const BitVector rhs = image_of_boundary(tau, source, target, p, static_cast<int>(i));
      auto x = solver.solve(rhs);
      require(x.has_value(), "lift_chain_map: no solution in degree " + std::to_string(p) +
                                 "; target truncated too shallow or not exact");
      if (rng) *x ^= random_element(free_part, *rng);
      tau.images[static_cast<std::size_t>(p)].push_back(*x);
    }
  }
  return tau;
}

bool verify_lift(const ResolutionMap& tau, const FreeResolution& source,
                 const FreeResolution& target) {
  const int depth = tau.depth();
  for (int p = 0; p <= depth; ++p) {
    const BitMatrix m = tau.matrix(p, source, target);
    for (int g = 0; g < source.group().order(); ++g)
      if (!(source.action_matrix(p, g) * m == m * target.action_matrix(p, tau.phi(g))))
        return false;
    if (p == 0 && !(m * target.augmentation_matrix() == source.augmentation_matrix()))
      return false;
    if (p >= 1 && !(source.boundary_matrix(p) * tau.matrix(p - 1, source, target) ==
                    m * target.boundary_matrix(p)))
      return false;
  }
  return true;
}

std::optional<ResolutionHomotopy> chain_homotopy(const ResolutionMap& tau,
                                                 const ResolutionMap& tau2,
                                                 const FreeResolution& source,
                                                 const FreeResolution& target, int limit) {
  require(limit < target.depth(), "chain_homotopy: limit must be below the target depth");
  require(limit <= std::min(tau.depth(), tau2.depth()), "chain_homotopy: maps too shallow");
  ResolutionHomotopy h;
  for (int p = 0; p <= limit; ++p) {
    const LeftSolver solver(target.boundary_matrix(p + 1));
    std::vector<BitVector> level;
    for (std::size_t i = 0; i < source.rank(p); ++i) {
      BitVector rhs = tau.images[static_cast<std::size_t>(p)][i] ^
                      tau2.images[static_cast<std::size_t>(p)][i];
      if (p >= 1) {
        for (const auto& term : source.boundary_terms(p, static_cast<int>(i)))
          rhs ^= target.act(p, tau.phi(term.g),
                            h.images[static_cast<std::size_t>(p - 1)]
                                    [static_cast<std::size_t>(term.gen)]);
      }
      auto x = solver.solve(rhs);
      if (!x) return std::nullopt;
      level.push_back(*x);
    }
    h.images.push_back(std::move(level));
  }
  return h;
}

}  // namespace eqw
