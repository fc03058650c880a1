#include "eqw/spaces.hpp"

#include <algorithm>
#include <set>

#include "eqw/error.hpp"

namespace eqw {

namespace {

std::string describe(const Simplex& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "]";
}

}  // namespace

SimplicialGSet::SimplicialGSet(std::string name, FiniteGroup group,
                               std::vector<std::vector<Simplex>> simplices,
                               std::vector<std::vector<int>> vertex_action)
    : name_(std::move(name)), group_(std::move(group)), simplices_(std::move(simplices)),
      vertex_action_(std::move(vertex_action)) {
  require(!simplices_.empty(), name_ + ": no vertices");
  const int nv = static_cast<int>(simplices_[0].size());
  for (int v = 0; v < nv; ++v)
    require(simplices_[0][v] == Simplex{v}, name_ + ": vertex " + std::to_string(v) + " must be [" +
                                                std::to_string(v) + "]");
  while (simplices_.size() > 1 && simplices_.back().empty()) simplices_.pop_back();
  index_.resize(simplices_.size());
  for (std::size_t n = 0; n < simplices_.size(); ++n)
    for (std::size_t i = 0; i < simplices_[n].size(); ++i) {
      const Simplex& s = simplices_[n][i];
      const std::string where = name_ + ": simplex " + describe(s) + " in dimension " + std::to_string(n);
      require(s.size() == n + 1, where + " has the wrong number of vertices");
      for (int v : s) require(v >= 0 && v < nv, where + " uses an unknown vertex");
      require(std::set<int>(s.begin(), s.end()).size() == s.size(), where + " repeats a vertex");
      require(index_[n].emplace(s, i).second, where + " is listed twice");
    }
  faces_.resize(simplices_.size());
  for (std::size_t n = 1; n < simplices_.size(); ++n)
    for (const Simplex& s : simplices_[n]) {
      std::vector<std::size_t> f;
      for (std::size_t j = 0; j <= n; ++j) {
        Simplex t = s;
        t.erase(t.begin() + static_cast<std::ptrdiff_t>(j));
        auto it = index_[n - 1].find(t);
        require(it != index_[n - 1].end(), name_ + ": face " + describe(t) + " of " + describe(s) + " is missing");
        f.push_back(it->second);
      }
      faces_[n].push_back(std::move(f));
    }

  const int order = group_.order();
  if (vertex_action_.empty()) {
    std::vector<int> id(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) id[v] = v;
    vertex_action_.assign(static_cast<std::size_t>(order), id);
  }
  require(static_cast<int>(vertex_action_.size()) == order, name_ + ": one vertex permutation per group element");
  for (int g = 0; g < order; ++g) {
    const auto& p = vertex_action_[g];
    require(static_cast<int>(p.size()) == nv, name_ + ": action of element " + std::to_string(g) + " has wrong size");
    std::vector<int> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (int v = 0; v < nv; ++v)
      require(sorted[v] == v, name_ + ": action of element " + std::to_string(g) + " is not a permutation");
  }
  for (int v = 0; v < nv; ++v)
    require(vertex_action_[group_.identity()][v] == v, name_ + ": identity acts nontrivially");
  for (int g = 0; g < order; ++g)
    for (int h = 0; h < order; ++h)
      for (int v = 0; v < nv; ++v)
        require(vertex_action_[group_.mul(g, h)][v] == vertex_action_[g][vertex_action_[h][v]],
                name_ + ": vertex action is not a group action");
  action_.assign(static_cast<std::size_t>(order), {});
  for (int g = 0; g < order; ++g) {
    action_[g].resize(simplices_.size());
    for (std::size_t n = 0; n < simplices_.size(); ++n)
      for (const Simplex& s : simplices_[n]) {
        Simplex t;
        for (int v : s) t.push_back(vertex_action_[g][v]);
        auto it = index_[n].find(t);
        require(it != index_[n].end(), name_ + ": element " + std::to_string(g) + " sends " + describe(s) +
                                           " to " + describe(t) + ", which is not a simplex");
        action_[g][n].push_back(it->second);
      }
  }
}

std::size_t SimplicialGSet::count(int n) const {
  if (n < 0 || n >= static_cast<int>(simplices_.size())) return 0;
  return simplices_[n].size();
}

std::optional<std::size_t> SimplicialGSet::find(const Simplex& s) const {
  if (s.empty() || s.size() > index_.size()) return std::nullopt;
  auto it = index_[s.size() - 1].find(s);
  if (it == index_[s.size() - 1].end()) return std::nullopt;
  return it->second;
}

GComplex SimplicialGSet::chains() const {
  const int top = dimension();
  std::vector<std::size_t> dims;
  std::vector<BitMatrix> diffs;
  for (int n = 0; n <= top; ++n) {
    dims.push_back(count(n));
    BitMatrix d(count(n), count(n - 1));
    for (std::size_t i = 0; n > 0 && i < count(n); ++i)
      for (int j = 0; j <= n; ++j) d.flip(i, face(n, i, j));
    diffs.push_back(std::move(d));
  }
  const Complex c(Variance::chain, 0, dims, diffs);
  std::vector<ComplexMap> action;
  for (int g = 0; g < group_.order(); ++g) {
    ComplexMap m;
    m.lo = 0;
    for (int n = 0; n <= top; ++n) {
      BitMatrix p(count(n), count(n));
      for (std::size_t i = 0; i < count(n); ++i) p.set(i, act(g, n, i));
      m.parts.push_back(std::move(p));
    }
    action.push_back(std::move(m));
  }
  return GComplex(c, group_, std::move(action));
}

SimplicialGSet restrict_group(const SimplicialGSet& x, const GroupHom& phi) {
  require(phi.target == x.group(), "restrict_group: target group mismatch");
  std::vector<std::vector<int>> action;
  for (int h = 0; h < phi.source.order(); ++h) action.push_back(x.vertex_action()[phi(h)]);
  std::vector<std::vector<Simplex>> s;
  for (int n = 0; n <= x.dimension(); ++n) s.push_back(x.simplices(n));
  return SimplicialGSet(x.name(), phi.source, std::move(s), std::move(action));
}

SimplicialGSet with_group(const SimplicialGSet& x, const FiniteGroup& g) {
  std::vector<std::vector<Simplex>> s;
  for (int n = 0; n <= x.dimension(); ++n) s.push_back(x.simplices(n));
  return SimplicialGSet(x.name(), g, std::move(s));
}

SimplicialGSet disjoint_union(const SimplicialGSet& a, const SimplicialGSet& b, std::string name) {
  require(a.group() == b.group(), "disjoint_union: group mismatch");
  const int shift = static_cast<int>(a.vertex_count());
  std::vector<std::vector<Simplex>> s(static_cast<std::size_t>(std::max(a.dimension(), b.dimension()) + 1));
  for (int n = 0; n <= a.dimension(); ++n) s[n] = a.simplices(n);
  for (int n = 0; n <= b.dimension(); ++n)
    for (Simplex t : b.simplices(n)) {
      for (int& v : t) v += shift;
      s[n].push_back(std::move(t));
    }
  std::vector<std::vector<int>> action;
  for (int g = 0; g < a.group().order(); ++g) {
    std::vector<int> p = a.vertex_action()[g];
    for (int v : b.vertex_action()[g]) p.push_back(v + shift);
    action.push_back(std::move(p));
  }
  return SimplicialGSet(std::move(name), a.group(), std::move(s), std::move(action));
}

SimplicialGSet barycentric_subdivision(const SimplicialGSet& x) {
  // new vertex ids: simplices of x in order of (dimension, index)
  std::vector<std::size_t> offset{0};
  for (int n = 0; n <= x.dimension(); ++n) offset.push_back(offset.back() + x.count(n));
  auto id = [&](int n, std::size_t i) { return static_cast<int>(offset[n] + i); };
  std::vector<std::vector<Simplex>> s(static_cast<std::size_t>(x.dimension() + 1));
  for (std::size_t v = 0; v < offset.back(); ++v) s[0].push_back({static_cast<int>(v)});
  // flags of faces sigma_0 < ... < sigma_k, extended downward from each top element
  std::vector<std::vector<std::pair<int, std::size_t>>> frontier;
  for (int n = 0; n <= x.dimension(); ++n)
    for (std::size_t i = 0; i < x.count(n); ++i) frontier.push_back({{n, i}});
  while (!frontier.empty()) {
    std::vector<std::vector<std::pair<int, std::size_t>>> next;
    for (const auto& flag : frontier) {
      if (flag.size() > 1) {
        Simplex t;
        for (auto it = flag.rbegin(); it != flag.rend(); ++it) t.push_back(id(it->first, it->second));
        s[flag.size() - 1].push_back(std::move(t));
      }
      // extend by every proper face of the smallest element
      const auto [n, i] = flag.back();
      std::set<std::pair<int, std::size_t>> faces;
      std::vector<std::pair<int, std::size_t>> todo{{n, i}};
      while (!todo.empty()) {
        const auto [m, j] = todo.back();
        todo.pop_back();
        if (m == 0) continue;
        for (int k = 0; k <= m; ++k) {
          const std::pair<int, std::size_t> f{m - 1, x.face(m, j, k)};
          if (faces.insert(f).second) todo.push_back(f);
        }
      }
      for (const auto& f : faces) {
        auto ext = flag;
        ext.push_back(f);
        next.push_back(std::move(ext));
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::vector<int>> action;
  for (int g = 0; g < x.group().order(); ++g) {
    std::vector<int> p;
    for (int n = 0; n <= x.dimension(); ++n)
      for (std::size_t i = 0; i < x.count(n); ++i) p.push_back(id(n, x.act(g, n, i)));
    action.push_back(std::move(p));
  }
  for (auto& level : s) std::sort(level.begin(), level.end());
  return SimplicialGSet(x.name() + "_subdivided", x.group(), std::move(s), std::move(action));
}

BitVector fundamental_chain(const SimplicialGSet& x) {
  BitVector v(x.count(x.dimension()));
  for (std::size_t i = 0; i < v.size(); ++i) v.set(i);
  return v;
}

ComplexMap chain_map(const SimplicialGSet& x, const SimplicialGSet& y, const std::vector<int>& vertex_map) {
  require(vertex_map.size() == x.vertex_count(), "chain_map: vertex map has wrong size");
  for (int v : vertex_map)
    require(v >= 0 && static_cast<std::size_t>(v) < y.vertex_count(), "chain_map: vertex out of range");
  if (x.group() == y.group())
    for (int g = 0; g < x.group().order(); ++g)
      for (std::size_t v = 0; v < x.vertex_count(); ++v)
        require(vertex_map[x.vertex_image(g, static_cast<int>(v))] == y.vertex_image(g, vertex_map[v]),
                "chain_map: vertex map is not equivariant at vertex " + std::to_string(v));
  ComplexMap m;
  m.lo = 0;
  for (int n = 0; n <= x.dimension(); ++n) {
    BitMatrix part(x.count(n), y.count(n));
    for (std::size_t i = 0; i < x.count(n); ++i) {
      Simplex t;
      for (int v : x.simplex(n, i)) t.push_back(vertex_map[v]);
      Simplex reduced = t;
      reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
      require(std::set<int>(t.begin(), t.end()).size() == reduced.size(),
              "chain_map: image of " + describe(x.simplex(n, i)) + " is not a simplex");
      if (reduced.size() < t.size()) {
        require(y.find(reduced).has_value(), "chain_map: image of " + describe(x.simplex(n, i)) +
                                                 " is not a simplex");
        continue;  // degenerate
      }
      const auto j = y.find(t);
      require(j.has_value(), "chain_map: image of " + describe(x.simplex(n, i)) + " is not a simplex");
      part.set(i, *j);
    }
    m.parts.push_back(std::move(part));
  }
  const GComplex cx = x.chains(), cy = y.chains();
  require(is_chain_map(m, cx.complex(), cy.complex()), "chain_map: not a chain map");
  return m;
}

ComplexMap cochain_map(const SimplicialGSet& x, const SimplicialGSet& y, const std::vector<int>& vertex_map) {
  ComplexMap m = chain_map(x, y, vertex_map);
  for (auto& p : m.parts) p = p.transpose();
  return m;
}

SimplicialGSet point(const FiniteGroup& g) { return SimplicialGSet("point", g, {{{0}}}); }

SimplicialGSet reflection_circle() {
  return SimplicialGSet("reflection_circle", FiniteGroup::cyclic(2),
                        {{{0}, {1}, {2}, {3}}, {{0, 2}, {1, 2}, {1, 3}, {0, 3}}},
                        {{0, 1, 2, 3}, {0, 1, 3, 2}});
}

SimplicialGSet antipodal_circle() {
  return SimplicialGSet("antipodal_circle", FiniteGroup::cyclic(2),
                        {{{0}, {1}, {2}, {3}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}},
                        {{0, 1, 2, 3}, {2, 3, 0, 1}});
}

SimplicialGSet rotation_circle3() {
  return SimplicialGSet("rotation_circle3", FiniteGroup::cyclic(3),
                        {{{0}, {1}, {2}}, {{0, 1}, {1, 2}, {2, 0}}},
                        {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
}

namespace {

std::vector<std::vector<Simplex>> torus_simplices() {
  auto v = [](int i, int j) { return 3 * ((i + 3) % 3) + (j + 3) % 3; };
  std::vector<std::vector<Simplex>> s(3);
  for (int i = 0; i < 9; ++i) s[0].push_back({i});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      s[1].push_back({v(i, j), v(i + 1, j)});
      s[1].push_back({v(i, j), v(i, j + 1)});
      s[1].push_back({v(i, j), v(i + 1, j + 1)});
      s[2].push_back({v(i, j), v(i + 1, j), v(i + 1, j + 1)});
      s[2].push_back({v(i, j), v(i, j + 1), v(i + 1, j + 1)});
    }
  return s;
}

}  // namespace

SimplicialGSet torus() { return SimplicialGSet("torus", FiniteGroup::trivial(), torus_simplices()); }

SimplicialGSet torus_swap() {
  std::vector<int> swap;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) swap.push_back(3 * j + i);
  return SimplicialGSet("torus_swap", FiniteGroup::cyclic(2), torus_simplices(),
                        {{0, 1, 2, 3, 4, 5, 6, 7, 8}, swap});
}

SimplicialGSet two_reflection_circles() {
  return disjoint_union(reflection_circle(), reflection_circle(), "two_reflection_circles");
}

SimplicialGSet reflection_circle_subdivided() { return barycentric_subdivision(reflection_circle()); }

std::vector<std::string> builtin_names() {
  return {"antipodal_circle", "point", "reflection_circle", "reflection_circle_subdivided",
          "rotation_circle3", "torus", "torus_swap", "two_reflection_circles"};
}

SimplicialGSet builtin(const std::string& name, const std::optional<FiniteGroup>& group) {
  if (name == "point") return point(group.value_or(FiniteGroup::trivial()));
  SimplicialGSet x;
  if (name == "reflection_circle") x = reflection_circle();
  else if (name == "antipodal_circle") x = antipodal_circle();
  else if (name == "rotation_circle3") x = rotation_circle3();
  else if (name == "torus") x = torus();
  else if (name == "torus_swap") x = torus_swap();
  else if (name == "two_reflection_circles") x = two_reflection_circles();
  else if (name == "reflection_circle_subdivided") x = reflection_circle_subdivided();
  else throw Error("unknown builtin space '" + name + "'");
  if (group && !(*group == x.group()))
    throw Error("builtin '" + name + "' carries its own group " + x.group().name());
  return x;
}

}  // namespace eqw
