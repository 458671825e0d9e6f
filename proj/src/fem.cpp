#include "boussq/fem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace boussq {

namespace {

constexpr double kGeomTol = 1e-12;

void check_inside_reference(Vec2 p) {
  if (p.x < -kGeomTol || p.y < -kGeomTol || p.x + p.y > 1.0 + kGeomTol) {
    std::ostringstream msg;
    msg << "point (" << p.x << ", " << p.y << ") lies outside the reference triangle";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

BasisEval eval_basis(BasisFamily family, Vec2 p) {
  check_inside_reference(p);
  BasisEval out;
  const double l0 = 1.0 - p.x - p.y;
  const double l1 = p.x;
  const double l2 = p.y;
  if (family == BasisFamily::p1) {
    out.count = 3;
    out.values = {l0, l1, l2};
    out.gradients[0] = {-1.0, -1.0};
    out.gradients[1] = {1.0, 0.0};
    out.gradients[2] = {0.0, 1.0};
    return out;
  }
  out.count = 6;
  out.values[0] = l0 * (2.0 * l0 - 1.0);
  out.values[1] = l1 * (2.0 * l1 - 1.0);
  out.values[2] = l2 * (2.0 * l2 - 1.0);
  out.values[3] = 4.0 * l0 * l1;
  out.values[4] = 4.0 * l1 * l2;
  out.values[5] = 4.0 * l2 * l0;
  const Vec2 g0{-1.0, -1.0}, g1{1.0, 0.0}, g2{0.0, 1.0};
  out.gradients[0] = g0 * (4.0 * l0 - 1.0);
  out.gradients[1] = g1 * (4.0 * l1 - 1.0);
  out.gradients[2] = g2 * (4.0 * l2 - 1.0);
  out.gradients[3] = 4.0 * (g0 * l1 + g1 * l0);
  out.gradients[4] = 4.0 * (g1 * l2 + g2 * l1);
  out.gradients[5] = 4.0 * (g2 * l0 + g0 * l2);
  return out;
}

QuadratureRule triangle_quadrature(int degree) {
  QuadratureRule rule;
  if (degree < 0 || degree > 5) {
    std::ostringstream msg;
    msg << "triangle quadrature of degree " << degree << " is not in the table (0..5)";
    throw std::invalid_argument(msg.str());
  }
  if (degree <= 1) {
    rule.degree = 1;
    rule.points = {{1.0 / 3.0, 1.0 / 3.0}};
    rule.weights = {0.5};
  } else if (degree == 2) {
    // Edge-midpoint rule.
    rule.degree = 2;
    rule.points = {{0.5, 0.0}, {0.5, 0.5}, {0.0, 0.5}};
    rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
  } else if (degree <= 4) {
    // Two symmetric orbits, 6 points.
    rule.degree = 4;
    const double a1 = 0.445948490915965, w1 = 0.223381589678011 * 0.5;
    const double a2 = 0.091576213509771, w2 = 0.109951743655322 * 0.5;
    for (const auto [a, w] : {std::pair{a1, w1}, std::pair{a2, w2}}) {
      rule.points.push_back({a, a});
      rule.points.push_back({1.0 - 2.0 * a, a});
      rule.points.push_back({a, 1.0 - 2.0 * a});
      rule.weights.insert(rule.weights.end(), 3, w);
    }
  } else {
    // Centroid plus two symmetric orbits, 7 points, degree 5.
    rule.degree = 5;
    const double s15 = std::sqrt(15.0);
    rule.points = {{1.0 / 3.0, 1.0 / 3.0}};
    rule.weights = {9.0 / 80.0};
    const double a1 = (6.0 + s15) / 21.0, w1 = (155.0 + s15) / 2400.0;
    const double a2 = (6.0 - s15) / 21.0, w2 = (155.0 - s15) / 2400.0;
    for (const auto [a, w] : {std::pair{a1, w1}, std::pair{a2, w2}}) {
      rule.points.push_back({a, a});
      rule.points.push_back({1.0 - 2.0 * a, a});
      rule.points.push_back({a, 1.0 - 2.0 * a});
      rule.weights.insert(rule.weights.end(), 3, w);
    }
  }
  return rule;
}

EdgeQuadratureRule edge_quadrature(int degree) {
  if (degree < 0 || degree > 9) {
    std::ostringstream msg;
    msg << "edge quadrature of degree " << degree << " is not in the table (0..9)";
    throw std::invalid_argument(msg.str());
  }
  // Gauss-Legendre abscissae on [-1,1]; n points are exact to degree 2n-1.
  const int n = degree / 2 + 1;
  std::vector<double> xs, ws;
  switch (n) {
    case 1:
      xs = {0.0};
      ws = {2.0};
      break;
    case 2: {
      const double x = 1.0 / std::sqrt(3.0);
      xs = {-x, x};
      ws = {1.0, 1.0};
      break;
    }
    case 3: {
      const double x = std::sqrt(3.0 / 5.0);
      xs = {-x, 0.0, x};
      ws = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
      break;
    }
    case 4: {
      const double x1 = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
      const double x2 = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
      const double w1 = (18.0 + std::sqrt(30.0)) / 36.0;
      const double w2 = (18.0 - std::sqrt(30.0)) / 36.0;
      xs = {-x2, -x1, x1, x2};
      ws = {w2, w1, w1, w2};
      break;
    }
    default: {
      const double x1 = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double x2 = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double w1 = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
      const double w2 = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
      xs = {-x2, -x1, 0.0, x1, x2};
      ws = {w2, w1, 128.0 / 225.0, w1, w2};
      break;
    }
  }
  EdgeQuadratureRule rule;
  rule.degree = 2 * n - 1;
  for (size_t i = 0; i < xs.size(); ++i) {
    rule.points.push_back(0.5 * (xs[i] + 1.0));
    rule.weights.push_back(0.5 * ws[i]);
  }
  return rule;
}

AffineTriangle::AffineTriangle(const std::array<Vec2, 3>& tri) {
  origin = tri[0];
  jac[0][0] = tri[1].x - tri[0].x;
  jac[1][0] = tri[1].y - tri[0].y;
  jac[0][1] = tri[2].x - tri[0].x;
  jac[1][1] = tri[2].y - tri[0].y;
  const double d = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
  if (std::abs(d) < kGeomTol)
    throw std::invalid_argument("degenerate (zero-area) triangle");
  det = std::abs(d);
  // inv(J)^T = (1/det) [[ J11, -J10], [-J01, J00]]
  inv_t[0][0] = jac[1][1] / d;
  inv_t[0][1] = -jac[1][0] / d;
  inv_t[1][0] = -jac[0][1] / d;
  inv_t[1][1] = jac[0][0] / d;
}

PhysicalMap map_to_physical(const std::array<Vec2, 3>& tri, Vec2 ref_point) {
  const AffineTriangle at(tri);
  return {at.to_physical(ref_point), at.jac, at.det};
}

std::array<double, 3> edge_trace_p2(double t) {
  return {(1.0 - t) * (1.0 - 2.0 * t), t * (2.0 * t - 1.0), 4.0 * t * (1.0 - t)};
}

}  // namespace boussq
