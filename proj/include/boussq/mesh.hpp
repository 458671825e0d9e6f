#ifndef BOUSSQ_MESH_HPP
#define BOUSSQ_MESH_HPP

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "boussq/geometry.hpp"

namespace boussq {

/// Boundary region for the velocity decomposition {Γ_i, Γ_w, Γ_o}.
enum class VelocityTag { gamma_i, gamma_w, gamma_o };

/// Boundary region for the temperature decomposition {Γ_d, Γ_n, Γ_o}.
enum class TemperatureTag { gamma_d, gamma_n, gamma_o };

std::string to_string(VelocityTag t);
std::string to_string(TemperatureTag t);

/// Tags carried by one boundary edge, one per decomposition.
struct BoundaryTags {
  VelocityTag velocity;
  TemperatureTag temperature;
};

/// Conforming triangulation of a RectUnion with per-edge boundary tags and
/// P2 midpoint nodes. Immutable once built; shareable across threads.
///
/// Node numbering: vertices come first (node id == vertex id), then one
/// midpoint node per edge (node id == n_vertices + edge id).
struct TaggedMesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;  // vertex ids, counterclockwise
  std::vector<std::array<int, 2>> edges;      // vertex ids, v[0] < v[1]
  std::vector<std::array<int, 3>> tri_edges;  // edge ids, local order (01, 12, 20)
  std::vector<std::array<int, 2>> edge_tris;  // adjacent triangles, -1 if none
  std::map<int, BoundaryTags> boundary_tags;  // edge id -> tags
  int n_per_unit = 0;                         // lattice resolution, h = 1/n_per_unit

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }

  /// Total P2 node count (vertices + edge midpoints).
  int n_nodes() const { return n_vertices() + n_edges(); }

  /// Global node id of the midpoint of `edge`.
  int midpoint_node(int edge) const { return n_vertices() + edge; }

  bool is_boundary_edge(int edge) const { return edge_tris[edge][1] < 0; }

  Vec2 node_coord(int node) const;
  Vec2 edge_midpoint(int edge) const;
  double edge_length(int edge) const;

  /// Unit normal of a boundary edge pointing out of the domain.
  Vec2 outward_normal(int edge) const;

  std::array<Vec2, 3> triangle_coords(int tri) const;
  double triangle_area(int tri) const;

  /// Edge ids adjacent to exactly one triangle, ascending.
  std::vector<int> boundary_edges() const;

  /// Boundary edges whose velocity tag matches.
  std::vector<int> edges_tagged(VelocityTag t) const;
  std::vector<int> edges_tagged(TemperatureTag t) const;
};

/// One boundary-tagging rule; `where` is evaluated at edge midpoints.
/// A rule may assign a tag for either decomposition or both.
struct TagRule {
  std::function<bool(Vec2)> where;
  std::optional<VelocityTag> velocity;
  std::optional<TemperatureTag> temperature;
};

/// Node correspondence from a submesh into the mesh it was extracted from.
struct NodeMap {
  std::vector<int> to_parent;  // indexed by submesh node id

  int operator[](int node) const { return to_parent[node]; }
  int size() const { return static_cast<int>(to_parent.size()); }
};

/// Build the uniform right-triangle mesh of `domain` with `n_per_unit` cells
/// per unit length. Every lattice square is split along its lower-left to
/// upper-right diagonal. Throws if a rectangle corner is off-lattice or the
/// union is disconnected.
TaggedMesh build_structured_mesh(const RectUnion& domain, int n_per_unit);

/// Assign boundary tags from `rules` (first matching rule wins per
/// decomposition). Throws if any boundary edge is left untagged in either
/// decomposition, or if the Γ_o edge sets of the two decompositions differ.
TaggedMesh tag_boundaries(TaggedMesh mesh, const std::vector<TagRule>& rules);

/// Restrict `mesh_ext` to `region`. The result is node-for-node identical to
/// build_structured_mesh(region, mesh_ext.n_per_unit); the NodeMap sends each
/// submesh node to the parent node at the same coordinates. Throws if the
/// region is off-lattice or covers cells outside `mesh_ext`.
std::pair<TaggedMesh, NodeMap> extract_submesh(const TaggedMesh& mesh_ext,
                                               const RectUnion& region);

/// Tag rules for the benchmark cavity Ω = (0,1)²:
/// Γ_d = {x=0}, Γ_o = {x=1}, Γ_n = {y=0} ∪ {y=1}, Γ_w = everything but Γ_o.
std::vector<TagRule> cavity_tag_rules();

/// Tag rules for the extended domain Ω^ext:
/// Γ_d = {x=0, 0<y<1}, Γ_o = {x=2}, Γ_n = rest, Γ_w = everything but Γ_o.
std::vector<TagRule> extended_cavity_tag_rules();

}  // namespace boussq

#endif
