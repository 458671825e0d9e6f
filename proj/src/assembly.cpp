#include "boussq/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "boussq/fem.hpp"

namespace boussq {

namespace {

constexpr int kVolumeDegree = 5;  // exact for every polynomial step integrand
constexpr int kEdgeDegree = 7;    // β integrands are non-polynomial; approximate

/// Reference-element data evaluated once per quadrature rule.
struct VolumeBasis {
  QuadratureRule rule;
  std::vector<BasisEval> p2;  // per quadrature point
  std::vector<BasisEval> p1;

  VolumeBasis() : rule(triangle_quadrature(kVolumeDegree)) {
    for (const Vec2 q : rule.points) {
      p2.push_back(eval_basis(BasisFamily::p2, q));
      p1.push_back(eval_basis(BasisFamily::p1, q));
    }
  }
};

const VolumeBasis& volume_basis() {
  static const VolumeBasis vb;
  return vb;
}

const EdgeQuadratureRule& edge_rule() {
  static const EdgeQuadratureRule r = edge_quadrature(kEdgeDegree);
  return r;
}

struct P2Field {
  std::span<const double> coeffs;
};

struct P2VectorField {
  std::span<const double> coeffs;  // interleaved components
};

/// Per-element scratch: geometry, physical gradients and field values at
/// the volume quadrature points.
struct ElementContext {
  AffineTriangle geom;
  std::array<int, 6> p2_nodes;
  std::array<int, 3> p1_nodes;
  // [quad point][basis fn]
  std::array<std::array<Vec2, 6>, 7> grad;  // physical P2 gradients

  ElementContext(const TaggedMesh& mesh, const DofMap& dm, int tri)
      : geom(mesh.triangle_coords(tri)),
        p2_nodes(dm.element_p2[tri]),
        p1_nodes(dm.element_p1[tri]) {
    const auto& vb = volume_basis();
    for (size_t q = 0; q < vb.rule.points.size(); ++q)
      for (int a = 0; a < 6; ++a)
        grad[q][a] = geom.push_gradient(vb.p2[q].gradients[a]);
  }

  double scalar_at(int q, P2Field f) const {
    const auto& vals = volume_basis().p2[q].values;
    double s = 0.0;
    for (int a = 0; a < 6; ++a) s += f.coeffs[p2_nodes[a]] * vals[a];
    return s;
  }
  Vec2 scalar_grad_at(int q, P2Field f) const {
    Vec2 g{};
    for (int a = 0; a < 6; ++a) g = g + grad[q][a] * f.coeffs[p2_nodes[a]];
    return g;
  }
  Vec2 vector_at(int q, P2VectorField f) const {
    const auto& vals = volume_basis().p2[q].values;
    Vec2 v{};
    for (int a = 0; a < 6; ++a) {
      v.x += f.coeffs[DofMap::vdof(p2_nodes[a], 0)] * vals[a];
      v.y += f.coeffs[DofMap::vdof(p2_nodes[a], 1)] * vals[a];
    }
    return v;
  }
  /// Gradient of one velocity component.
  Vec2 component_grad_at(int q, P2VectorField f, int comp) const {
    Vec2 g{};
    for (int a = 0; a < 6; ++a)
      g = g + grad[q][a] * f.coeffs[DofMap::vdof(p2_nodes[a], comp)];
    return g;
  }
  double p1_at(int q, std::span<const double> coeffs) const {
    const auto& vals = volume_basis().p1[q].values;
    double s = 0.0;
    for (int a = 0; a < 3; ++a) s += coeffs[p1_nodes[a]] * vals[a];
    return s;
  }
};

/// Local 6x6 kernels; row = test function, column = trial function.
struct LocalP2 {
  std::array<std::array<double, 6>, 6> m{};

  void add_mass(const ElementContext& el, double scale) {
    const auto& vb = volume_basis();
    for (size_t q = 0; q < vb.rule.points.size(); ++q) {
      const double w = scale * vb.rule.weights[q] * el.geom.det;
      const auto& vals = vb.p2[q].values;
      for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) m[a][b] += w * vals[a] * vals[b];
    }
  }
  void add_stiffness(const ElementContext& el, double scale) {
    const auto& vb = volume_basis();
    for (size_t q = 0; q < vb.rule.points.size(); ++q) {
      const double w = scale * vb.rule.weights[q] * el.geom.det;
      for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) m[a][b] += w * el.grad[q][a].dot(el.grad[q][b]);
    }
  }
  void add_convection(const ElementContext& el, P2VectorField wfield,
                      double scale) {
    const auto& vb = volume_basis();
    for (size_t q = 0; q < vb.rule.points.size(); ++q) {
      const double w = scale * vb.rule.weights[q] * el.geom.det;
      const Vec2 vel = el.vector_at(q, wfield);
      const auto& vals = vb.p2[q].values;
      for (int b = 0; b < 6; ++b) {
        const double conv = vel.dot(el.grad[q][b]);
        for (int a = 0; a < 6; ++a) m[a][b] += w * vals[a] * conv;
      }
    }
  }

  void scatter(const std::array<int, 6>& rows, const std::array<int, 6>& cols,
               std::vector<Triplet>& out) const {
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        out.push_back({rows[a], cols[b], m[a][b]});
  }
};

/// Trace data of one boundary edge: global P2 nodes (endpoint a, endpoint b,
/// midpoint), length and outward normal.
struct EdgeContext {
  std::array<int, 3> nodes;
  double length;
  Vec2 normal;
  Vec2 a, b;

  EdgeContext(const TaggedMesh& mesh, int edge)
      : nodes{mesh.edges[edge][0], mesh.edges[edge][1], mesh.midpoint_node(edge)},
        length(mesh.edge_length(edge)),
        normal(mesh.outward_normal(edge)),
        a(mesh.vertices[mesh.edges[edge][0]]),
        b(mesh.vertices[mesh.edges[edge][1]]) {}

  Vec2 point_at(double t) const { return a + (b - a) * t; }
  double scalar_at(double t, P2Field f) const {
    const auto tr = edge_trace_p2(t);
    return f.coeffs[nodes[0]] * tr[0] + f.coeffs[nodes[1]] * tr[1] +
           f.coeffs[nodes[2]] * tr[2];
  }
  Vec2 vector_at(double t, P2VectorField f) const {
    const auto tr = edge_trace_p2(t);
    Vec2 v{};
    for (int a_ = 0; a_ < 3; ++a_) {
      v.x += f.coeffs[DofMap::vdof(nodes[a_], 0)] * tr[a_];
      v.y += f.coeffs[DofMap::vdof(nodes[a_], 1)] * tr[a_];
    }
    return v;
  }
};

double negative_part(double s) { return std::min(s, 0.0); }

void check_state_layout(const State& s, const DofMap& dm) {
  if (static_cast<int>(s.v.size()) != dm.n_velocity ||
      static_cast<int>(s.p.size()) != dm.n_pressure ||
      static_cast<int>(s.u.size()) != dm.n_scalar)
    throw std::invalid_argument("state vector lengths do not match the dof map");
}

}  // namespace

void Params::validate() const {
  if (!(re > 0.0)) throw std::invalid_argument("Re must be > 0");
  if (!(pr > 0.0)) throw std::invalid_argument("Pr must be > 0");
  if (!(gr >= 0.0)) throw std::invalid_argument("Gr must be >= 0");
  if (!(k > 0.0)) throw std::invalid_argument("time step k must be > 0");
}

std::pair<std::vector<double>, std::vector<double>> extrapolate(
    const State& state_n, const State& state_nm1) {
  if (state_n.v.size() != state_nm1.v.size() ||
      state_n.u.size() != state_nm1.u.size())
    throw std::invalid_argument("extrapolate: state layouts differ");
  std::vector<double> v(state_n.v.size()), u(state_n.u.size());
  for (size_t i = 0; i < v.size(); ++i)
    v[i] = 2.0 * state_n.v[i] - state_nm1.v[i];
  for (size_t i = 0; i < u.size(); ++i)
    u[i] = 2.0 * state_n.u[i] - state_nm1.u[i];
  return {std::move(v), std::move(u)};
}

SparseSystem assemble_temperature(const State& state_n,
                                  std::span<const double> v_tilde,
                                  const Params& params, const TemperatureBc& bc_u,
                                  const TaggedMesh& mesh, const DofMap& dofmap,
                                  const AssemblyOptions& options) {
  params.validate();
  check_state_layout(state_n, dofmap);
  if (static_cast<int>(v_tilde.size()) != dofmap.n_velocity)
    throw std::invalid_argument("v_tilde length does not match the dof map");
  if (bc_u.kind == TemperatureBc::Kind::n_beta && !bc_u.beta)
    throw std::invalid_argument("temperature condition N_beta requires a beta spec");

  const double dt2 = 2.0 / params.k;
  const double kappa = 1.0 / (params.re * params.pr);
  const P2VectorField vt{v_tilde}, vn{state_n.v};
  const P2Field un{state_n.u};
  const bool convect = options.terms.convection;
  // Explicit transport velocity: vⁿ for the semi-discrete reading, ṽⁿ⁺¹ for
  // the displayed weak form.
  const P2VectorField w_expl =
      options.weak_form == WeakForm::semidiscrete ? vn : vt;

  const int n = dofmap.n_scalar;
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<size_t>(mesh.n_triangles()) * 36);
  std::vector<double> rhs(n, 0.0);

  const auto& vb = volume_basis();
  const double t_new = state_n.t + params.k;
  for (int tri = 0; tri < mesh.n_triangles(); ++tri) {
    const ElementContext el(mesh, dofmap, tri);
    LocalP2 local;
    local.add_mass(el, dt2);
    local.add_stiffness(el, kappa);
    if (convect) local.add_convection(el, vt, 1.0);
    local.scatter(el.p2_nodes, el.p2_nodes, triplets);

    for (size_t q = 0; q < vb.rule.points.size(); ++q) {
      const double w = vb.rule.weights[q] * el.geom.det;
      const double u_val = el.scalar_at(q, un);
      const Vec2 u_grad = el.scalar_grad_at(q, un);
      double r = dt2 * u_val;
      if (convect) r -= el.vector_at(q, w_expl).dot(u_grad);
      if (options.forcing.heat) {
        const Vec2 x = el.geom.to_physical(vb.rule.points[q]);
        r += options.forcing.heat(x, t_new) + options.forcing.heat(x, state_n.t);
      }
      const auto& vals = vb.p2[q].values;
      for (int a = 0; a < 6; ++a) {
        rhs[el.p2_nodes[a]] += w * (r * vals[a] - kappa * u_grad.dot(el.grad[q][a]));
      }
    }
  }

  const bool with_beta = options.terms.open_boundary &&
                         bc_u.kind == TemperatureBc::Kind::n_beta;
  if (with_beta) {
    const BetaSpec& beta = *bc_u.beta;
    const auto& er = edge_rule();
    for (const int edge : mesh.edges_tagged(TemperatureTag::gamma_o)) {
      const EdgeContext ec(mesh, edge);
      for (size_t q = 0; q < er.points.size(); ++q) {
        const double t = er.points[q];
        const double w = er.weights[q] * ec.length;
        const auto tr = edge_trace_p2(t);
        // Implicit side: -(u β(ṽ·n)(ṽ·n), y) moves into the matrix.
        const double s_imp = ec.vector_at(t, vt).dot(ec.normal);
        const double c_imp = beta(s_imp) * s_imp;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            triplets.push_back(
                {ec.nodes[a], ec.nodes[b], -w * c_imp * tr[a] * tr[b]});
        // Explicit side: +C_u(uⁿ, vⁿ, y).
        const double s_exp = ec.vector_at(t, vn).dot(ec.normal);
        const double u_val = ec.scalar_at(t, un);
        const double flux = heat_flux_integrand(u_val, s_exp, beta);
        for (int a = 0; a < 3; ++a) rhs[ec.nodes[a]] += w * flux * tr[a];
      }
    }
  }

  return {from_triplets(n, n, triplets), std::move(rhs)};
}

SparseSystem assemble_momentum(const State& state_n,
                               std::span<const double> v_tilde,
                               std::span<const double> u_np1,
                               const Params& params, VelocityBc bc_v,
                               const TaggedMesh& mesh, const DofMap& dofmap,
                               const AssemblyOptions& options) {
  params.validate();
  check_state_layout(state_n, dofmap);
  if (static_cast<int>(v_tilde.size()) != dofmap.n_velocity)
    throw std::invalid_argument("v_tilde length does not match the dof map");
  if (static_cast<int>(u_np1.size()) != dofmap.n_scalar)
    throw std::invalid_argument(
        "assemble_momentum requires the fresh temperature solution");

  const double dt2 = 2.0 / params.k;
  const double nu = 1.0 / params.re;
  const double buoy = params.gr / (params.re * params.re);
  const P2VectorField vt{v_tilde}, vn{state_n.v};
  const P2Field unew{u_np1}, uold{state_n.u};
  const bool convect = options.terms.convection;
  const P2VectorField w_expl =
      options.weak_form == WeakForm::semidiscrete ? vn : vt;

  const int size = dofmap.momentum_size();
  const int poff = dofmap.pressure_offset();
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<size_t>(mesh.n_triangles()) * 150);
  std::vector<double> rhs(size, 0.0);

  const auto& vb = volume_basis();
  const double t_new = state_n.t + params.k;
  for (int tri = 0; tri < mesh.n_triangles(); ++tri) {
    const ElementContext el(mesh, dofmap, tri);

    // Component-diagonal velocity block.
    LocalP2 local;
    local.add_mass(el, dt2);
    local.add_stiffness(el, nu);
    if (convect) local.add_convection(el, vt, 1.0);
    for (int c = 0; c < 2; ++c) {
      std::array<int, 6> vd;
      for (int a = 0; a < 6; ++a) vd[a] = DofMap::vdof(el.p2_nodes[a], c);
      local.scatter(vd, vd, triplets);
    }

    for (size_t q = 0; q < vb.rule.points.size(); ++q) {
      const double w = vb.rule.weights[q] * el.geom.det;
      const auto& p2v = vb.p2[q].values;
      const auto& p1v = vb.p1[q].values;

      // Pressure coupling -(p, div y); continuity +(div v, q).
      for (int a = 0; a < 6; ++a) {
        for (int c = 0; c < 2; ++c) {
          const double dphi = c == 0 ? el.grad[q][a].x : el.grad[q][a].y;
          const int row = DofMap::vdof(el.p2_nodes[a], c);
          for (int j = 0; j < 3; ++j) {
            const double g = w * p1v[j] * dphi;
            triplets.push_back({row, poff + el.p1_nodes[j], -g});
            triplets.push_back({poff + el.p1_nodes[j], row, g});
          }
        }
      }

      // Explicit volume contributions.
      const Vec2 v_val = el.vector_at(q, vn);
      const Vec2 w_val = el.vector_at(q, w_expl);
      const Vec2 gx = el.component_grad_at(q, vn, 0);
      const Vec2 gy = el.component_grad_at(q, vn, 1);
      const double p_val = el.p1_at(q, state_n.p);
      double u_mid = 0.0;
      if (options.terms.buoyancy) {
        u_mid = options.buoyancy_level == BuoyancyLevel::trapezoid
                    ? 0.5 * (el.scalar_at(q, unew) + el.scalar_at(q, uold))
                    : el.scalar_at(q, unew);
      }
      Vec2 g1_sum{};
      if (options.forcing.momentum) {
        const Vec2 x = el.geom.to_physical(vb.rule.points[q]);
        g1_sum = options.forcing.momentum(x, t_new) +
                 options.forcing.momentum(x, state_n.t);
      }
      double r[2] = {dt2 * v_val.x + g1_sum.x, dt2 * v_val.y + g1_sum.y};
      if (convect) {
        r[0] -= w_val.dot(gx);
        r[1] -= w_val.dot(gy);
      }
      if (options.terms.buoyancy) r[1] += buoy * u_mid;
      for (int a = 0; a < 6; ++a) {
        const Vec2 grad_a = el.grad[q][a];
        rhs[DofMap::vdof(el.p2_nodes[a], 0)] +=
            w * (r[0] * p2v[a] - nu * gx.dot(grad_a) + p_val * grad_a.x);
        rhs[DofMap::vdof(el.p2_nodes[a], 1)] +=
            w * (r[1] * p2v[a] - nu * gy.dot(grad_a) + p_val * grad_a.y);
      }
    }
  }

  if (bc_v == VelocityBc::ddn && options.terms.open_boundary) {
    const auto& er = edge_rule();
    for (const int edge : mesh.edges_tagged(VelocityTag::gamma_o)) {
      const EdgeContext ec(mesh, edge);
      for (size_t q = 0; q < er.points.size(); ++q) {
        const double t = er.points[q];
        const double w = er.weights[q] * ec.length;
        const auto tr = edge_trace_p2(t);
        // Implicit side: -C_v(v, ṽ, y) = -½ (v·y)(ṽ·n)_- on the matrix.
        const double s_imp = negative_part(ec.vector_at(t, vt).dot(ec.normal));
        for (int c = 0; c < 2; ++c)
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
              triplets.push_back({DofMap::vdof(ec.nodes[a], c),
                                  DofMap::vdof(ec.nodes[b], c),
                                  -0.5 * w * s_imp * tr[a] * tr[b]});
        // Explicit side: +C_v(vⁿ, vⁿ, y).
        const Vec2 v_val = ec.vector_at(t, vn);
        const double s_exp = negative_part(v_val.dot(ec.normal));
        for (int a = 0; a < 3; ++a) {
          rhs[DofMap::vdof(ec.nodes[a], 0)] += 0.5 * w * s_exp * v_val.x * tr[a];
          rhs[DofMap::vdof(ec.nodes[a], 1)] += 0.5 * w * s_exp * v_val.y * tr[a];
        }
      }
    }
  }

  return {from_triplets(size, size, triplets), std::move(rhs)};
}

SparseSystem apply_dirichlet(const SparseSystem& system,
                             const DirichletSet& constraints) {
  const CsrMatrix& a = system.matrix;
  std::vector<char> constrained(a.n_rows, 0);
  std::vector<double> value(a.n_rows, 0.0);
  for (int i = 0; i < constraints.size(); ++i) {
    const int dof = constraints.dofs[i];
    if (dof < 0 || dof >= a.n_rows) {
      std::ostringstream msg;
      msg << "Dirichlet dof " << dof << " out of range for system of size "
          << a.n_rows;
      throw std::out_of_range(msg.str());
    }
    constrained[dof] = 1;
    value[dof] = constraints.values[i];
  }

  SparseSystem out;
  out.rhs = system.rhs;
  CsrMatrix& m = out.matrix;
  m.n_rows = a.n_rows;
  m.n_cols = a.n_cols;
  m.row_ptr.assign(a.n_rows + 1, 0);
  m.col_idx.reserve(a.col_idx.size());
  m.values.reserve(a.values.size());
  for (int r = 0; r < a.n_rows; ++r) {
    if (constrained[r]) {
      m.col_idx.push_back(r);
      m.values.push_back(1.0);
      out.rhs[r] = value[r];
    } else {
      for (int k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
        const int c = a.col_idx[k];
        if (constrained[c]) {
          out.rhs[r] -= a.values[k] * value[c];
        } else {
          m.col_idx.push_back(c);
          m.values.push_back(a.values[k]);
        }
      }
    }
    m.row_ptr[r + 1] = static_cast<int>(m.col_idx.size());
  }
  return out;
}

CsrMatrix assemble_p2_mass(const TaggedMesh& mesh, const DofMap& dofmap) {
  std::vector<Triplet> triplets;
  for (int tri = 0; tri < mesh.n_triangles(); ++tri) {
    const ElementContext el(mesh, dofmap, tri);
    LocalP2 local;
    local.add_mass(el, 1.0);
    local.scatter(el.p2_nodes, el.p2_nodes, triplets);
  }
  return from_triplets(dofmap.n_scalar, dofmap.n_scalar, triplets);
}

CsrMatrix assemble_p2_stiffness(const TaggedMesh& mesh, const DofMap& dofmap) {
  std::vector<Triplet> triplets;
  for (int tri = 0; tri < mesh.n_triangles(); ++tri) {
    const ElementContext el(mesh, dofmap, tri);
    LocalP2 local;
    local.add_stiffness(el, 1.0);
    local.scatter(el.p2_nodes, el.p2_nodes, triplets);
  }
  return from_triplets(dofmap.n_scalar, dofmap.n_scalar, triplets);
}

CsrMatrix assemble_p2_convection(const TaggedMesh& mesh, const DofMap& dofmap,
                                 std::span<const double> w) {
  if (static_cast<int>(w.size()) != dofmap.n_velocity)
    throw std::invalid_argument("velocity field length does not match");
  std::vector<Triplet> triplets;
  for (int tri = 0; tri < mesh.n_triangles(); ++tri) {
    const ElementContext el(mesh, dofmap, tri);
    LocalP2 local;
    local.add_convection(el, P2VectorField{w}, 1.0);
    local.scatter(el.p2_nodes, el.p2_nodes, triplets);
  }
  return from_triplets(dofmap.n_scalar, dofmap.n_scalar, triplets);
}

CsrMatrix assemble_divergence(const TaggedMesh& mesh, const DofMap& dofmap) {
  std::vector<Triplet> triplets;
  const auto& vb = volume_basis();
  for (int tri = 0; tri < mesh.n_triangles(); ++tri) {
    const ElementContext el(mesh, dofmap, tri);
    for (size_t q = 0; q < vb.rule.points.size(); ++q) {
      const double w = vb.rule.weights[q] * el.geom.det;
      const auto& p1v = vb.p1[q].values;
      for (int a = 0; a < 6; ++a)
        for (int c = 0; c < 2; ++c) {
          const double dphi = c == 0 ? el.grad[q][a].x : el.grad[q][a].y;
          for (int j = 0; j < 3; ++j)
            triplets.push_back({DofMap::vdof(el.p2_nodes[a], c),
                                el.p1_nodes[j], w * p1v[j] * dphi});
        }
    }
  }
  return from_triplets(dofmap.n_velocity, dofmap.n_pressure, triplets);
}

CsrMatrix assemble_heat_open_boundary(const TaggedMesh& mesh,
                                      const DofMap& dofmap,
                                      std::span<const double> w,
                                      const BetaSpec& beta) {
  if (static_cast<int>(w.size()) != dofmap.n_velocity)
    throw std::invalid_argument("velocity field length does not match");
  std::vector<Triplet> triplets;
  const auto& er = edge_rule();
  for (const int edge : mesh.edges_tagged(TemperatureTag::gamma_o)) {
    const EdgeContext ec(mesh, edge);
    for (size_t q = 0; q < er.points.size(); ++q) {
      const double t = er.points[q];
      const double wq = er.weights[q] * ec.length;
      const auto tr = edge_trace_p2(t);
      const double s = ec.vector_at(t, P2VectorField{w}).dot(ec.normal);
      const double c = beta(s) * s;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          triplets.push_back({ec.nodes[a], ec.nodes[b], wq * c * tr[a] * tr[b]});
    }
  }
  return from_triplets(dofmap.n_scalar, dofmap.n_scalar, triplets);
}

CsrMatrix assemble_ddn_open_boundary(const TaggedMesh& mesh,
                                     const DofMap& dofmap,
                                     std::span<const double> w) {
  if (static_cast<int>(w.size()) != dofmap.n_velocity)
    throw std::invalid_argument("velocity field length does not match");
  std::vector<Triplet> triplets;
  const auto& er = edge_rule();
  for (const int edge : mesh.edges_tagged(VelocityTag::gamma_o)) {
    const EdgeContext ec(mesh, edge);
    for (size_t q = 0; q < er.points.size(); ++q) {
      const double t = er.points[q];
      const double wq = er.weights[q] * ec.length;
      const auto tr = edge_trace_p2(t);
      const double s =
          negative_part(ec.vector_at(t, P2VectorField{w}).dot(ec.normal));
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          triplets.push_back(
              {ec.nodes[a], ec.nodes[b], 0.5 * wq * s * tr[a] * tr[b]});
    }
  }
  return from_triplets(dofmap.n_scalar, dofmap.n_scalar, triplets);
}

}  // namespace boussq
