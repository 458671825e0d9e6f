#ifndef BOUSSQ_FEM_HPP
#define BOUSSQ_FEM_HPP

#include <array>
#include <vector>

#include "boussq/geometry.hpp"

namespace boussq {

enum class BasisFamily { p1, p2 };

/// Values and reference-coordinate gradients of all basis functions of one
/// family at a single reference point. Σ values = 1, Σ gradients = 0.
struct BasisEval {
  int count = 0;
  std::array<double, 6> values{};
  std::array<Vec2, 6> gradients{};
};

/// Lagrange basis on the reference triangle {x>=0, y>=0, x+y<=1}.
/// P1: 3 vertex functions. P2: vertex functions first, then the midpoint
/// bubbles of edges (01), (12), (20). Throws if `p` lies outside the closed
/// reference triangle.
BasisEval eval_basis(BasisFamily family, Vec2 p);

/// Quadrature rule on the reference triangle; weights sum to 1/2.
struct QuadratureRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
  int degree = 0;  // exactly integrates polynomials up to this degree
};

/// Quadrature rule on the unit edge [0,1]; weights sum to 1.
struct EdgeQuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;
  int degree = 0;
};

/// Symmetric triangle rules, exact to the requested degree.
/// Supported requests: 0..5 (served by 1, 3, 6 and 7 point rules).
QuadratureRule triangle_quadrature(int degree);

/// Gauss-Legendre rules mapped to [0,1], exact to the requested degree.
/// Supported requests: 0..9.
EdgeQuadratureRule edge_quadrature(int degree);

/// Affine image of a reference point in a physical triangle, the (constant)
/// Jacobian of the map, and |det| = 2*area.
struct PhysicalMap {
  Vec2 x;
  std::array<std::array<double, 2>, 2> jac;
  double det = 0.0;
};

/// Maps the reference triangle onto `tri`; throws for degenerate triangles.
PhysicalMap map_to_physical(const std::array<Vec2, 3>& tri, Vec2 ref_point);

/// Per-element geometry cache: constant Jacobian data shared by all
/// quadrature points of an affine triangle.
struct AffineTriangle {
  Vec2 origin;
  std::array<std::array<double, 2>, 2> jac;
  std::array<std::array<double, 2>, 2> inv_t;  // inverse transpose
  double det = 0.0;

  explicit AffineTriangle(const std::array<Vec2, 3>& tri);

  Vec2 to_physical(Vec2 ref) const {
    return {origin.x + jac[0][0] * ref.x + jac[0][1] * ref.y,
            origin.y + jac[1][0] * ref.x + jac[1][1] * ref.y};
  }
  /// Physical gradient from a reference gradient.
  Vec2 push_gradient(Vec2 g) const {
    return {inv_t[0][0] * g.x + inv_t[0][1] * g.y,
            inv_t[1][0] * g.x + inv_t[1][1] * g.y};
  }
};

/// P2 trace shape functions on one edge, parametrized by t in [0,1]:
/// endpoint a, endpoint b, midpoint. Restriction of the volume P2 basis.
std::array<double, 3> edge_trace_p2(double t);

}  // namespace boussq

#endif
