#ifndef BOUSSQ_SPACES_HPP
#define BOUSSQ_SPACES_HPP

#include <array>
#include <functional>
#include <vector>

#include "boussq/mesh.hpp"

namespace boussq {

/// Taylor-Hood numbering: P2 scalar nodes are mesh nodes (vertices first,
/// then edge midpoints); velocity dofs interleave the two components,
/// vdof(node, c) = 2*node + c; pressure dofs are the P1 vertex ids.
///
/// In the coupled momentum/continuity system the pressure block follows the
/// velocity block, so global pressure dof = n_velocity + vertex id.
struct DofMap {
  int n_scalar = 0;       // P2 scalar dofs
  int n_velocity = 0;     // 2 * n_scalar
  int n_pressure = 0;     // P1 vertex dofs
  int n_temperature = 0;  // == n_scalar
  std::vector<std::array<int, 6>> element_p2;  // per-element global P2 nodes
  std::vector<std::array<int, 3>> element_p1;  // per-element vertex ids

  static int vdof(int node, int comp) { return 2 * node + comp; }
  int momentum_size() const { return n_velocity + n_pressure; }
  int pressure_offset() const { return n_velocity; }
};

DofMap build_dofmap(const TaggedMesh& mesh);

/// Constrained dofs with prescribed values, sorted by dof id, no duplicates.
struct DirichletSet {
  std::vector<int> dofs;
  std::vector<double> values;

  int size() const { return static_cast<int>(dofs.size()); }
  bool contains(int dof) const;
};

/// Boundary values for the strong constraints: velocity on Γ_i ∪ Γ_w,
/// temperature on Γ_d.
struct BoundaryValues {
  std::function<Vec2(Vec2)> velocity;
  std::function<double(Vec2)> temperature;
};

/// Collect the Dirichlet constraints of both fields. All P2 nodes on the
/// closure of tagged edges are constrained; nodes shared with Γ_o belong to
/// the Dirichlet side. Throws if two edges prescribe values differing by
/// more than 1e-12 at a shared node.
std::pair<DirichletSet, DirichletSet> dirichlet_sets(const TaggedMesh& mesh,
                                                     const BoundaryValues& values);

/// Benchmark data: v = 0 on Γ_w (Γ_i is empty), u = 1 on Γ_d.
BoundaryValues benchmark_boundary_values();

}  // namespace boussq

#endif
