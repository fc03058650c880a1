// Finite ordered simplicial complexes with a group acting by vertex
// permutations.  Each simplex is its own vertex sequence; faces delete one
// vertex.  The action must send every simplex to a simplex with exactly the
// image sequence, so front and back faces are preserved.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqw/group.hpp"

namespace eqw {

using Simplex = std::vector<int>;

class SimplicialGSet {
 public:
  SimplicialGSet() = default;
  // simplices[n] lists the n-simplices.  simplices[0] must be {{0}, {1}, ...}.
  // vertex_action[g][v] = g.v; empty means the trivial action.
  SimplicialGSet(std::string name, FiniteGroup group, std::vector<std::vector<Simplex>> simplices,
                 std::vector<std::vector<int>> vertex_action = {});

  const std::string& name() const { return name_; }
  const FiniteGroup& group() const { return group_; }
  int dimension() const { return static_cast<int>(simplices_.size()) - 1; }
  std::size_t count(int n) const;
  std::size_t vertex_count() const { return count(0); }
  const Simplex& simplex(int n, std::size_t i) const { return simplices_[n][i]; }
  const std::vector<Simplex>& simplices(int n) const { return simplices_[n]; }
  std::optional<std::size_t> find(const Simplex& s) const;
  // Index of the face of simplex i of dimension n that omits vertex j.
  std::size_t face(int n, std::size_t i, int j) const { return faces_[n][i][j]; }
  int vertex_image(int g, int v) const { return vertex_action_[g][v]; }
  std::size_t act(int g, int n, std::size_t i) const { return action_[g][n][i]; }
  const std::vector<std::vector<int>>& vertex_action() const { return vertex_action_; }

  GComplex chains() const;
  GComplex cochains() const { return dualize(chains()); }

 private:
  std::string name_;
  FiniteGroup group_;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::vector<int>> vertex_action_;
  std::vector<std::map<Simplex, std::size_t>> index_;
  std::vector<std::vector<std::vector<std::size_t>>> faces_;
  std::vector<std::vector<std::vector<std::size_t>>> action_;  // [g][n][i]
};

// Same simplices with the action restricted along phi : H -> G.
SimplicialGSet restrict_group(const SimplicialGSet& x, const GroupHom& phi);
SimplicialGSet with_group(const SimplicialGSet& x, const FiniteGroup& g);  // trivial action
// Disjoint union; the second copy's vertices are shifted.  Same group.
SimplicialGSet disjoint_union(const SimplicialGSet& a, const SimplicialGSet& b, std::string name);
// Barycentric subdivision: vertices are simplices of x, simplices are flags
// ordered by increasing dimension.
SimplicialGSet barycentric_subdivision(const SimplicialGSet& x);

// Sum of all top-dimensional simplices, as a vector in C_d.
BitVector fundamental_chain(const SimplicialGSet& x);

// Chain map induced by a vertex map.  Images with repeated consecutive
// vertices are degenerate and map to zero; other images must be simplices
// of y.  Equivariance f(g.v) = g.f(v) is checked when both groups agree.
ComplexMap chain_map(const SimplicialGSet& x, const SimplicialGSet& y, const std::vector<int>& vertex_map);
// Cochain map y^* -> x^* (transposes).
ComplexMap cochain_map(const SimplicialGSet& x, const SimplicialGSet& y, const std::vector<int>& vertex_map);

// Built-in models.
SimplicialGSet point(const FiniteGroup& g = FiniteGroup::trivial());
// Z/2 reflection of a 4-vertex circle: p1 = 0, p2 = 1, a = 2, b = 3; sigma
// swaps a and b and fixes p1, p2.
SimplicialGSet reflection_circle();
// Z/2 antipodal action on the 4-cycle v0..v3: sigma(v_i) = v_{i+2}.
SimplicialGSet antipodal_circle();
// Z/3 rotating the 3-cycle.
SimplicialGSet rotation_circle3();
// 3x3 triangulated torus with vertex (i, j) = 3i + j; trivial group.
SimplicialGSet torus();
// The same torus with Z/2 swapping the coordinates.
SimplicialGSet torus_swap();
SimplicialGSet two_reflection_circles();
SimplicialGSet reflection_circle_subdivided();

std::vector<std::string> builtin_names();
// Named builtin.  "point" takes the given group; the others have their own
// group and reject a conflicting one.
SimplicialGSet builtin(const std::string& name, const std::optional<FiniteGroup>& group = std::nullopt);

}  // namespace eqw
