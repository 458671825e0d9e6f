#include "boussq/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace boussq {

namespace {

// Lattice coordinate key: integer multiples of h = 1/n_per_unit.
using Key = std::pair<std::int64_t, std::int64_t>;

std::int64_t to_lattice(double coord, int n, const char* what) {
  const double scaled = coord * n;
  const double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 1e-9) {
    std::ostringstream msg;
    msg << what << " coordinate " << coord << " is not on the lattice of spacing 1/"
        << n;
    throw std::invalid_argument(msg.str());
  }
  return static_cast<std::int64_t>(rounded);
}

struct LatticeCells {
  std::set<Key> cells;  // keyed by lower-left corner, (iy, ix) order via pair compare
};

LatticeCells collect_cells(const RectUnion& domain, int n) {
  if (n < 1) throw std::invalid_argument("n_per_unit must be >= 1");
  if (domain.rects.empty()) throw std::invalid_argument("empty rectangle union");
  LatticeCells out;
  for (const auto& r : domain.rects) {
    if (!(r.x_min < r.x_max && r.y_min < r.y_max))
      throw std::invalid_argument("rectangle has non-positive area");
    const auto ix0 = to_lattice(r.x_min, n, "rectangle corner x");
    const auto ix1 = to_lattice(r.x_max, n, "rectangle corner x");
    const auto iy0 = to_lattice(r.y_min, n, "rectangle corner y");
    const auto iy1 = to_lattice(r.y_max, n, "rectangle corner y");
    for (std::int64_t iy = iy0; iy < iy1; ++iy)
      for (std::int64_t ix = ix0; ix < ix1; ++ix) out.cells.insert({iy, ix});
  }
  return out;
}

void check_connected(const LatticeCells& lattice) {
  if (lattice.cells.empty()) return;
  std::set<Key> seen;
  std::vector<Key> stack{*lattice.cells.begin()};
  seen.insert(stack.back());
  while (!stack.empty()) {
    const auto [iy, ix] = stack.back();
    stack.pop_back();
    const Key nbrs[4] = {{iy - 1, ix}, {iy + 1, ix}, {iy, ix - 1}, {iy, ix + 1}};
    for (const auto& nb : nbrs) {
      if (lattice.cells.count(nb) && !seen.count(nb)) {
        seen.insert(nb);
        stack.push_back(nb);
      }
    }
  }
  if (seen.size() != lattice.cells.size())
    throw std::invalid_argument("rectangle union is not connected");
}

}  // namespace

std::string to_string(VelocityTag t) {
  switch (t) {
    case VelocityTag::gamma_i: return "Gamma_i";
    case VelocityTag::gamma_w: return "Gamma_w";
    case VelocityTag::gamma_o: return "Gamma_o";
  }
  return "?";
}

std::string to_string(TemperatureTag t) {
  switch (t) {
    case TemperatureTag::gamma_d: return "Gamma_d";
    case TemperatureTag::gamma_n: return "Gamma_n";
    case TemperatureTag::gamma_o: return "Gamma_o";
  }
  return "?";
}

Vec2 TaggedMesh::node_coord(int node) const {
  if (node < n_vertices()) return vertices[node];
  return edge_midpoint(node - n_vertices());
}

Vec2 TaggedMesh::edge_midpoint(int edge) const {
  const auto [a, b] = edges[edge];
  return (vertices[a] + vertices[b]) * 0.5;
}

double TaggedMesh::edge_length(int edge) const {
  const auto [a, b] = edges[edge];
  return (vertices[b] - vertices[a]).norm();
}

Vec2 TaggedMesh::outward_normal(int edge) const {
  const auto [a, b] = edges[edge];
  const Vec2 t = vertices[b] - vertices[a];
  Vec2 n{t.y, -t.x};
  const double len = n.norm();
  n = n * (1.0 / len);
  // Orient away from the adjacent triangle's centroid.
  const int tri = edge_tris[edge][0];
  const auto& tv = triangles[tri];
  const Vec2 centroid =
      (vertices[tv[0]] + vertices[tv[1]] + vertices[tv[2]]) * (1.0 / 3.0);
  if (n.dot(edge_midpoint(edge) - centroid) < 0.0) n = n * -1.0;
  return n;
}

std::array<Vec2, 3> TaggedMesh::triangle_coords(int tri) const {
  const auto& t = triangles[tri];
  return {vertices[t[0]], vertices[t[1]], vertices[t[2]]};
}

double TaggedMesh::triangle_area(int tri) const {
  const auto c = triangle_coords(tri);
  return 0.5 * cross(c[1] - c[0], c[2] - c[0]);
}

std::vector<int> TaggedMesh::boundary_edges() const {
  std::vector<int> out;
  for (int e = 0; e < n_edges(); ++e)
    if (is_boundary_edge(e)) out.push_back(e);
  return out;
}

std::vector<int> TaggedMesh::edges_tagged(VelocityTag t) const {
  std::vector<int> out;
  for (const auto& [e, tags] : boundary_tags)
    if (tags.velocity == t) out.push_back(e);
  return out;
}

std::vector<int> TaggedMesh::edges_tagged(TemperatureTag t) const {
  std::vector<int> out;
  for (const auto& [e, tags] : boundary_tags)
    if (tags.temperature == t) out.push_back(e);
  return out;
}

TaggedMesh build_structured_mesh(const RectUnion& domain, int n_per_unit) {
  const auto lattice = collect_cells(domain, n_per_unit);
  check_connected(lattice);

  // Lattice points in (iy, ix) scan order; ids are stable under submesh
  // extraction because the order depends only on coordinates.
  std::map<Key, int> point_id;
  for (const auto& [iy, ix] : lattice.cells) {
    point_id.emplace(Key{iy, ix}, 0);
    point_id.emplace(Key{iy, ix + 1}, 0);
    point_id.emplace(Key{iy + 1, ix}, 0);
    point_id.emplace(Key{iy + 1, ix + 1}, 0);
  }
  TaggedMesh mesh;
  mesh.n_per_unit = n_per_unit;
  const double h = 1.0 / n_per_unit;
  {
    int id = 0;
    for (auto& [key, value] : point_id) {
      value = id++;
      mesh.vertices.push_back({key.second * h, key.first * h});
    }
  }

  // Two triangles per cell, split along the lower-left to upper-right diagonal.
  for (const auto& [iy, ix] : lattice.cells) {
    const int p00 = point_id.at({iy, ix});
    const int p10 = point_id.at({iy, ix + 1});
    const int p01 = point_id.at({iy + 1, ix});
    const int p11 = point_id.at({iy + 1, ix + 1});
    mesh.triangles.push_back({p00, p10, p11});
    mesh.triangles.push_back({p00, p11, p01});
  }

  // Edge ids in lexicographic order of their (sorted) vertex pairs.
  std::map<std::array<int, 2>, int> edge_id;
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      int a = t[k], b = t[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      edge_id.emplace(std::array<int, 2>{a, b}, 0);
    }
  }
  {
    int id = 0;
    for (auto& [pair, value] : edge_id) {
      value = id++;
      mesh.edges.push_back(pair);
    }
  }
  mesh.edge_tris.assign(mesh.edges.size(), {-1, -1});
  mesh.tri_edges.resize(mesh.triangles.size());
  for (int ti = 0; ti < mesh.n_triangles(); ++ti) {
    const auto& t = mesh.triangles[ti];
    for (int k = 0; k < 3; ++k) {
      int a = t[k], b = t[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      const int e = edge_id.at({a, b});
      mesh.tri_edges[ti][k] = e;
      auto& adj = mesh.edge_tris[e];
      if (adj[0] < 0)
        adj[0] = ti;
      else if (adj[1] < 0)
        adj[1] = ti;
      else
        throw std::logic_error("edge shared by more than two triangles");
    }
  }
  return mesh;
}

TaggedMesh tag_boundaries(TaggedMesh mesh, const std::vector<TagRule>& rules) {
  mesh.boundary_tags.clear();
  for (const int e : mesh.boundary_edges()) {
    const Vec2 mid = mesh.edge_midpoint(e);
    std::optional<VelocityTag> vt;
    std::optional<TemperatureTag> tt;
    for (const auto& rule : rules) {
      if (!rule.where(mid)) continue;
      if (!vt && rule.velocity) vt = rule.velocity;
      if (!tt && rule.temperature) tt = rule.temperature;
      if (vt && tt) break;
    }
    if (!vt || !tt) {
      std::ostringstream msg;
      msg << "boundary edge with midpoint (" << mid.x << ", " << mid.y
          << ") is untagged in the " << (!vt ? "velocity" : "temperature")
          << " decomposition";
      throw std::invalid_argument(msg.str());
    }
    const bool vo = (*vt == VelocityTag::gamma_o);
    const bool to = (*tt == TemperatureTag::gamma_o);
    if (vo != to) {
      std::ostringstream msg;
      msg << "edge with midpoint (" << mid.x << ", " << mid.y
          << ") is tagged Gamma_o in only one decomposition";
      throw std::invalid_argument(msg.str());
    }
    mesh.boundary_tags.emplace(e, BoundaryTags{*vt, *tt});
  }
  return mesh;
}

std::pair<TaggedMesh, NodeMap> extract_submesh(const TaggedMesh& mesh_ext,
                                               const RectUnion& region) {
  const int n = mesh_ext.n_per_unit;
  TaggedMesh sub = build_structured_mesh(region, n);

  // Parent lookup by lattice key; vertex coordinates are exact multiples of h.
  std::map<Key, int> parent_vertex;
  for (int v = 0; v < mesh_ext.n_vertices(); ++v) {
    const Vec2 p = mesh_ext.vertices[v];
    parent_vertex.emplace(Key{to_lattice(p.y, n, "parent vertex y"),
                              to_lattice(p.x, n, "parent vertex x")},
                          v);
  }
  std::map<std::array<int, 2>, int> parent_edge;
  for (int e = 0; e < mesh_ext.n_edges(); ++e)
    parent_edge.emplace(mesh_ext.edges[e], e);

  NodeMap map;
  map.to_parent.assign(sub.n_nodes(), -1);
  for (int v = 0; v < sub.n_vertices(); ++v) {
    const Vec2 p = sub.vertices[v];
    const Key key{to_lattice(p.y, n, "region vertex y"),
                  to_lattice(p.x, n, "region vertex x")};
    const auto it = parent_vertex.find(key);
    if (it == parent_vertex.end()) {
      std::ostringstream msg;
      msg << "region vertex (" << p.x << ", " << p.y
          << ") does not exist in the parent mesh (misaligned or disjoint region)";
      throw std::invalid_argument(msg.str());
    }
    map.to_parent[v] = it->second;
  }
  for (int e = 0; e < sub.n_edges(); ++e) {
    std::array<int, 2> pe{map.to_parent[sub.edges[e][0]],
                          map.to_parent[sub.edges[e][1]]};
    if (pe[0] > pe[1]) std::swap(pe[0], pe[1]);
    const auto it = parent_edge.find(pe);
    if (it == parent_edge.end()) {
      const Vec2 mid = sub.edge_midpoint(e);
      std::ostringstream msg;
      msg << "region edge with midpoint (" << mid.x << ", " << mid.y
          << ") does not exist in the parent mesh";
      throw std::invalid_argument(msg.str());
    }
    map.to_parent[sub.midpoint_node(e)] = mesh_ext.midpoint_node(it->second);
  }
  return {std::move(sub), std::move(map)};
}

std::vector<TagRule> cavity_tag_rules() {
  const auto near = [](double a, double b) { return std::abs(a - b) < 1e-12; };
  std::vector<TagRule> rules;
  rules.push_back({[near](Vec2 p) { return near(p.x, 1.0); },
                   VelocityTag::gamma_o, TemperatureTag::gamma_o});
  rules.push_back({[near](Vec2 p) { return near(p.x, 0.0); },
                   VelocityTag::gamma_w, TemperatureTag::gamma_d});
  rules.push_back({[near](Vec2 p) { return near(p.y, 0.0) || near(p.y, 1.0); },
                   VelocityTag::gamma_w, TemperatureTag::gamma_n});
  return rules;
}

std::vector<TagRule> extended_cavity_tag_rules() {
  const auto near = [](double a, double b) { return std::abs(a - b) < 1e-12; };
  std::vector<TagRule> rules;
  rules.push_back({[near](Vec2 p) { return near(p.x, 2.0); },
                   VelocityTag::gamma_o, TemperatureTag::gamma_o});
  rules.push_back(
      {[near](Vec2 p) { return near(p.x, 0.0) && p.y > 0.0 && p.y < 1.0; },
       VelocityTag::gamma_w, TemperatureTag::gamma_d});
  rules.push_back({[](Vec2) { return true; }, VelocityTag::gamma_w,
                   TemperatureTag::gamma_n});
  return rules;
}

}  // namespace boussq
