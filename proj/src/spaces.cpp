#include "boussq/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace boussq {

DofMap build_dofmap(const TaggedMesh& mesh) {
  DofMap dm;
  dm.n_scalar = mesh.n_nodes();
  dm.n_velocity = 2 * dm.n_scalar;
  dm.n_pressure = mesh.n_vertices();
  dm.n_temperature = dm.n_scalar;
  dm.element_p1.resize(mesh.n_triangles());
  dm.element_p2.resize(mesh.n_triangles());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const auto& te = mesh.tri_edges[t];
    dm.element_p1[t] = tri;
    dm.element_p2[t] = {tri[0],
                        tri[1],
                        tri[2],
                        mesh.midpoint_node(te[0]),
                        mesh.midpoint_node(te[1]),
                        mesh.midpoint_node(te[2])};
  }
  return dm;
}

bool DirichletSet::contains(int dof) const {
  return std::binary_search(dofs.begin(), dofs.end(), dof);
}

namespace {

void insert_value(std::map<int, double>& into, int dof, double value) {
  const auto [it, inserted] = into.emplace(dof, value);
  if (!inserted && std::abs(it->second - value) > 1e-12) {
    std::ostringstream msg;
    msg << "conflicting Dirichlet values at dof " << dof << ": " << it->second
        << " vs " << value;
    throw std::invalid_argument(msg.str());
  }
}

DirichletSet to_set(const std::map<int, double>& m) {
  DirichletSet s;
  s.dofs.reserve(m.size());
  s.values.reserve(m.size());
  for (const auto& [dof, value] : m) {
    if (!std::isfinite(value))
      throw std::invalid_argument("non-finite Dirichlet value");
    s.dofs.push_back(dof);
    s.values.push_back(value);
  }
  return s;
}

}  // namespace

std::pair<DirichletSet, DirichletSet> dirichlet_sets(const TaggedMesh& mesh,
                                                     const BoundaryValues& values) {
  std::map<int, double> vel, temp;
  for (const auto& [edge, tags] : mesh.boundary_tags) {
    const auto [a, b] = mesh.edges[edge];
    const int nodes[3] = {a, b, mesh.midpoint_node(edge)};
    if (tags.velocity != VelocityTag::gamma_o) {
      if (!values.velocity)
        throw std::invalid_argument("velocity boundary values not provided");
      for (const int node : nodes) {
        const Vec2 g = values.velocity(mesh.node_coord(node));
        insert_value(vel, DofMap::vdof(node, 0), g.x);
        insert_value(vel, DofMap::vdof(node, 1), g.y);
      }
    }
    if (tags.temperature == TemperatureTag::gamma_d) {
      if (!values.temperature)
        throw std::invalid_argument("temperature boundary values not provided");
      for (const int node : nodes)
        insert_value(temp, node, values.temperature(mesh.node_coord(node)));
    }
  }
  return {to_set(vel), to_set(temp)};
}

BoundaryValues benchmark_boundary_values() {
  return {[](Vec2) { return Vec2{0.0, 0.0}; }, [](Vec2) { return 1.0; }};
}

}  // namespace boussq
