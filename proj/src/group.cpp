#include "eqw/group.hpp"

#include <numeric>

#include "eqw/error.hpp"

namespace eqw {

// ---------------------------------------------------------------- groups

FiniteGroup::FiniteGroup() : table_{{0}}, inverse_{0}, identity_(0), name_("trivial") {}

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::string name)
    : table_(std::move(table)), name_(std::move(name)) {
  const int n = order();
  require(n >= 1, "group: empty multiplication table");
  for (const auto& row : table_) {
    require(static_cast<int>(row.size()) == n, "group: table is not square");
    for (int x : row) require(x >= 0 && x < n, "group: table entry out of range");
  }
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
    if (ok) identity_ = e;
  }
  require(identity_ >= 0, "group: no identity element");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        require(mul(mul(a, b), c) == mul(a, mul(b, c)), "group: table is not associative");
  inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul(a, b) == identity_ && mul(b, a) == identity_) inverse_[a] = b;
  for (int a = 0; a < n; ++a)
    require(inverse_[a] >= 0, "group: element " + std::to_string(a) + " has no inverse");
}

FiniteGroup FiniteGroup::cyclic(int n) {
  require(n >= 1, "cyclic group order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup(std::move(t), "Z/" + std::to_string(n));
}

int FiniteGroup::exponent() const {
  int e = 1;
  for (int g = 0; g < order(); ++g) {
    int k = 1;
    for (int x = g; x != identity_; x = mul(x, g)) ++k;
    e = std::lcm(e, k);
  }
  return e;
}

FiniteGroup product_group(const FiniteGroup& g, const FiniteGroup& h) {
  const int n = g.order() * h.order();
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < h.order(); ++b)
      for (int c = 0; c < g.order(); ++c)
        for (int d = 0; d < h.order(); ++d)
          t[product_index(h, a, b)][product_index(h, c, d)] =
              product_index(h, g.mul(a, c), h.mul(b, d));
  return FiniteGroup(std::move(t), g.name() + "x" + h.name());
}

GroupHom::GroupHom(FiniteGroup src, FiniteGroup tgt, std::vector<int> img)
    : source(std::move(src)), target(std::move(tgt)), image(std::move(img)) {
  require(static_cast<int>(image.size()) == source.order(), "group hom: wrong image size");
  for (int x : image) require(x >= 0 && x < target.order(), "group hom: image out of range");
  require(image[source.identity()] == target.identity(), "group hom: identity not preserved");
  for (int a = 0; a < source.order(); ++a)
    for (int b = 0; b < source.order(); ++b)
      require(image[source.mul(a, b)] == target.mul(image[a], image[b]),
              "group hom: not multiplicative");
}

GroupHom identity_hom(const FiniteGroup& g) {
  std::vector<int> img(static_cast<std::size_t>(g.order()));
  std::iota(img.begin(), img.end(), 0);
  return GroupHom(g, g, std::move(img));
}

GroupHom diagonal(const FiniteGroup& g) {
  std::vector<int> img;
  for (int a = 0; a < g.order(); ++a) img.push_back(product_index(g, a, a));
  return GroupHom(g, product_group(g, g), std::move(img));
}

GroupHom trivial_inclusion(const FiniteGroup& g) {
  return GroupHom(FiniteGroup::trivial(), g, {g.identity()});
}

// ---------------------------------------------------------------- modules

namespace {

void check_action_laws(const FiniteGroup& g, const std::vector<BitMatrix>& action,
                       std::size_t dim, const std::string& where) {
  require(static_cast<int>(action.size()) == g.order(), where + ": one matrix per element needed");
  for (const auto& a : action)
    require(a.rows() == dim && a.cols() == dim, where + ": action matrix has wrong shape");
  require(action[g.identity()] == BitMatrix::identity(dim), where + ": identity acts nontrivially");
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      require(action[b] * action[a] == action[g.mul(a, b)],
              where + ": composition law fails for elements " + std::to_string(a) + "," +
                  std::to_string(b));
}

}  // namespace

GModule::GModule(FiniteGroup group, std::size_t dim, std::vector<BitMatrix> action)
    : group_(std::move(group)), dim_(dim), action_(std::move(action)) {
  check_action_laws(group_, action_, dim_, "module");
}

GModule GModule::trivial(const FiniteGroup& g, std::size_t dim) {
  return GModule(g, dim,
                 std::vector<BitMatrix>(static_cast<std::size_t>(g.order()),
                                        BitMatrix::identity(dim)));
}

GModule GModule::regular(const FiniteGroup& g) {
  std::vector<std::vector<int>> perm(g.order(), std::vector<int>(g.order()));
  for (int a = 0; a < g.order(); ++a)
    for (int x = 0; x < g.order(); ++x) perm[a][x] = g.mul(a, x);
  return permutation(g, perm);
}

GModule GModule::permutation(const FiniteGroup& g, const std::vector<std::vector<int>>& perm) {
  require(static_cast<int>(perm.size()) == g.order(), "permutation module: wrong element count");
  const std::size_t n = perm.empty() ? 0 : perm[0].size();
  std::vector<BitMatrix> action;
  for (const auto& p : perm) {
    require(p.size() == n, "permutation module: ragged permutation table");
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, static_cast<std::size_t>(p[i]));
    action.push_back(std::move(m));
  }
  return GModule(g, n, std::move(action));
}

GModule tensor_gmodule(const GModule& a, const GModule& b) {
  const FiniteGroup g = product_group(a.group(), b.group());
  std::vector<BitMatrix> action;
  for (int x = 0; x < a.group().order(); ++x)
    for (int y = 0; y < b.group().order(); ++y) action.push_back(kron(a.action(x), b.action(y)));
  return GModule(g, a.dim() * b.dim(), std::move(action));
}

Subspace invariants(const FiniteGroup& g, const std::vector<BitMatrix>& action, std::size_t dim) {
  if (dim == 0) return Subspace(0);
  std::vector<BitMatrix> blocks;
  for (int x = 0; x < g.order(); ++x) {
    if (x == g.identity()) continue;
    blocks.push_back(action[static_cast<std::size_t>(x)] + BitMatrix::identity(dim));
  }
  if (blocks.empty()) return Subspace::full(dim);
  return kernel(hstack(blocks));
}

Subspace invariants(const GModule& m) {
  std::vector<BitMatrix> action;
  for (int x = 0; x < m.group().order(); ++x) action.push_back(m.action(x));
  return invariants(m.group(), action, m.dim());
}

// ---------------------------------------------------------------- G-complexes

GComplex::GComplex(Complex complex, FiniteGroup group, std::vector<ComplexMap> action)
    : complex_(std::move(complex)), group_(std::move(group)), action_(std::move(action)) {
  require(static_cast<int>(action_.size()) == group_.order(),
          "G-complex: one action map per group element needed");
  for (int g = 0; g < group_.order(); ++g)
    require(is_chain_map(action_[g], complex_, complex_),
            "G-complex: element " + std::to_string(g) + " does not act by a chain map");
  for (int k = complex_.lo(); k <= complex_.hi(); ++k) {
    std::vector<BitMatrix> mats;
    for (int g = 0; g < group_.order(); ++g) mats.push_back(act(g, k));
    check_action_laws(group_, mats, complex_.dim(k), "G-complex degree " + std::to_string(k));
  }
}

GComplex GComplex::with_trivial_action(Complex complex, const FiniteGroup& g) {
  std::vector<ComplexMap> action(static_cast<std::size_t>(g.order()), identity_map(complex));
  return GComplex(std::move(complex), g, std::move(action));
}

GModule GComplex::module(int k) const {
  std::vector<BitMatrix> mats;
  for (int g = 0; g < group_.order(); ++g) mats.push_back(act(g, k));
  return GModule(group_, complex_.dim(k), std::move(mats));
}

bool GComplex::is_stable(const Subspace& s, int k) const {
  for (int g = 0; g < group_.order(); ++g)
    if (!s.contains(image(s, act(g, k)))) return false;
  return true;
}

GComplex dualize(const GComplex& x) {
  Complex d = dualize(x.complex());
  std::vector<ComplexMap> action;
  for (int g = 0; g < x.group().order(); ++g) {
    ComplexMap m;
    m.lo = d.lo();
    for (int k = d.lo(); k <= d.hi(); ++k)
      m.parts.push_back(x.act(x.group().inverse(g), k).transpose());
    action.push_back(std::move(m));
  }
  return GComplex(std::move(d), x.group(), std::move(action));
}

GComplex negate_degrees(const GComplex& x) {
  Complex n = negate_degrees(x.complex());
  std::vector<ComplexMap> action;
  for (int g = 0; g < x.group().order(); ++g) {
    ComplexMap m;
    m.lo = n.lo();
    for (int k = n.lo(); k <= n.hi(); ++k) m.parts.push_back(x.act(g, -k));
    action.push_back(std::move(m));
  }
  return GComplex(std::move(n), x.group(), std::move(action));
}

GComplex shift_degrees(const GComplex& x, int by) {
  std::vector<ComplexMap> action;
  for (int g = 0; g < x.group().order(); ++g) {
    ComplexMap m = x.action(g);
    m.lo += by;
    action.push_back(std::move(m));
  }
  return GComplex(shift_degrees(x.complex(), by), x.group(), std::move(action));
}

GComplex tensor(const GComplex& a, const GComplex& b) {
  Complex t = tensor(a.complex(), b.complex());
  const FiniteGroup g = product_group(a.group(), b.group());
  std::vector<ComplexMap> action;
  for (int x = 0; x < a.group().order(); ++x) {
    for (int y = 0; y < b.group().order(); ++y) {
      ComplexMap m;
      m.lo = t.lo();
      for (int n = t.lo(); n <= t.hi(); ++n) {
        BitMatrix block(t.dim(n), t.dim(n));
        for (int i = a.complex().lo(); i <= a.complex().hi(); ++i) {
          const int j = n - i;
          if (a.complex().dim(i) == 0 || b.complex().dim(j) == 0) continue;
          const std::size_t off = tensor_block_offset(a.complex(), b.complex(), n, i);
          block.add_block(off, off, kron(a.act(x, i), b.act(y, j)));
        }
        m.parts.push_back(std::move(block));
      }
      action.push_back(std::move(m));
    }
  }
  return GComplex(std::move(t), g, std::move(action));
}

GComplex restrict_along(const GroupHom& phi, const GComplex& x) {
  require(phi.target == x.group(), "restrict_along: group mismatch");
  std::vector<ComplexMap> action;
  for (int g = 0; g < phi.source.order(); ++g) action.push_back(x.action(phi(g)));
  return GComplex(x.complex(), phi.source, std::move(action));
}

FixedSubcomplex fixed_subcomplex(const GComplex& x) {
  const Complex& c = x.complex();
  FixedSubcomplex out;
  out.lo = c.lo();
  std::vector<Subspace> fixed;
  for (int k = c.lo(); k <= c.hi(); ++k) fixed.push_back(invariants(x.module(k)));
  auto at = [&](int k) -> const Subspace& { return fixed[static_cast<std::size_t>(k - c.lo())]; };
  std::vector<std::size_t> dims;
  std::vector<BitMatrix> diffs;
  for (int k = c.lo(); k <= c.hi(); ++k) {
    const int t = k + c.step();
    const std::size_t tdim = (t >= c.lo() && t <= c.hi()) ? at(t).dim() : 0;
    BitMatrix d(at(k).dim(), tdim);
    if (tdim > 0) {
      const BitMatrix images = at(k).basis() * c.d(k);
      for (std::size_t i = 0; i < images.rows(); ++i) d.set_row(i, at(t).coordinates(images.row(i)));
    }
    dims.push_back(at(k).dim());
    diffs.push_back(std::move(d));
    out.inclusion.push_back(at(k).basis());
  }
  out.complex = c.empty() ? Complex::zero(c.variance())
                          : Complex(c.variance(), c.lo(), std::move(dims), std::move(diffs));
  return out;
}

bool check_equivariant(const ComplexMap& f, const GComplex& x, const GComplex& y) {
  require(x.group() == y.group(), "check_equivariant: group mismatch");
  require(shapes_match(f, x.complex(), y.complex()), "check_equivariant: shape mismatch");
  const int lo = std::min(x.complex().lo(), y.complex().lo());
  const int hi = std::max(x.complex().hi(), y.complex().hi());
  for (int g = 0; g < x.group().order(); ++g)
    for (int k = lo; k <= hi; ++k) {
      const BitMatrix fk = f.at(k, x.complex(), y.complex());
      if (!(x.act(g, k) * fk == fk * y.act(g, k))) return false;
    }
  return true;
}

}  // namespace eqw
