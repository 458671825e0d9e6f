#include "boussq/timestepper.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace boussq {

namespace {

void check_finite(std::span<const double> x, const char* what) {
  for (const double v : x) {
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << what << " contains a non-finite value (diverged solve)";
      throw std::runtime_error(msg.str());
    }
  }
}

DirichletSet merge(const DirichletSet& a, const DirichletSet& b) {
  if (b.size() == 0) return a;
  DirichletSet out = a;
  for (int i = 0; i < b.size(); ++i) {
    out.dofs.push_back(b.dofs[i]);
    out.values.push_back(b.values[i]);
  }
  return out;
}

}  // namespace

BoundaryValues TransientBoundaryValues::at(double t) const {
  BoundaryValues bv;
  if (velocity) bv.velocity = [f = velocity, t](Vec2 p) { return f(p, t); };
  if (temperature)
    bv.temperature = [f = temperature, t](Vec2 p) { return f(p, t); };
  return bv;
}

TransientBoundaryValues TransientBoundaryValues::benchmark() {
  return {[](Vec2, double) { return Vec2{0.0, 0.0}; },
          [](Vec2, double) { return 1.0; }};
}

void RunConfig::validate() const {
  params.validate();
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be > 0");
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  if (record == RecordPolicy::every_m_steps && record_every < 1)
    throw std::invalid_argument("record_every must be >= 1");
}

State advance(const State& state_n, const State* state_nm1,
              const RunConfig& config, const TaggedMesh& mesh,
              const DofMap& dofmap) {
  std::vector<double> v_tilde, u_tilde;
  if (state_nm1 != nullptr) {
    std::tie(v_tilde, u_tilde) = extrapolate(state_n, *state_nm1);
  } else {
    v_tilde = state_n.v;  // bootstrap: first-order extrapolation
    u_tilde = state_n.u;
  }

  const double t_new = state_n.t + config.params.k;
  const auto [vel_bc, temp_bc] =
      dirichlet_sets(mesh, config.boundary.at(t_new));

  State next;
  next.t = t_new;

  {
    SparseSystem sys =
        assemble_temperature(state_n, v_tilde, config.params, config.bc.temperature,
                             mesh, dofmap, config.assembly);
    sys = apply_dirichlet(sys, temp_bc);
    next.u = solve_direct(sys.matrix, sys.rhs);
    check_finite(next.u, "temperature solution");
  }

  {
    SparseSystem sys =
        assemble_momentum(state_n, v_tilde, next.u, config.params,
                          config.bc.velocity, mesh, dofmap, config.assembly);
    sys = apply_dirichlet(sys,
                          merge(vel_bc, config.extra_momentum_constraints));
    const auto sol = solve_direct(sys.matrix, sys.rhs);
    check_finite(sol, "momentum solution");
    next.v.assign(sol.begin(), sol.begin() + dofmap.n_velocity);
    next.p.assign(sol.begin() + dofmap.n_velocity, sol.end());
  }
  return next;
}

TransientResult run_transient(const State& initial, const RunConfig& config,
                              const TaggedMesh& mesh, const DofMap& dofmap) {
  config.validate();
  RunConfig cfg = config;
  cfg.params.k = config.t_end / config.n_steps;

  TransientResult result;
  State prev;  // state at n-1, valid from the second step on
  State curr = initial;
  for (int step = 0; step < config.n_steps; ++step) {
    State next;
    try {
      next = advance(curr, step == 0 ? nullptr : &prev, cfg, mesh, dofmap);
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "time step " << step + 1 << " (t = " << curr.t + cfg.params.k
          << ") failed: " << e.what();
      throw std::runtime_error(msg.str());
    }
    prev = std::move(curr);
    curr = std::move(next);
    if (config.record == RecordPolicy::every_m_steps &&
        (step + 1) % config.record_every == 0)
      result.recorded.push_back(curr);
  }
  if (config.record == RecordPolicy::final_only) result.recorded.push_back(curr);

  std::ostringstream meta;
  meta << "re=" << config.params.re << " gr=" << config.params.gr
       << " pr=" << config.params.pr << " t_end=" << config.t_end
       << " n_steps=" << config.n_steps << " bc=" << config.bc.name()
       << " mesh_vertices=" << mesh.n_vertices()
       << " mesh_triangles=" << mesh.n_triangles()
       << " p2_nodes=" << mesh.n_nodes()
       << " init=quiescent(v=0,p=0,u=0;dirichlet-from-t0)";
  result.metadata = meta.str();
  result.final_state = std::move(curr);
  return result;
}

State quiescent_state(const RunConfig& config, const TaggedMesh& mesh,
                      const DofMap& dofmap, double t0) {
  State s;
  s.t = t0;
  s.v.assign(dofmap.n_velocity, 0.0);
  s.p.assign(dofmap.n_pressure, 0.0);
  s.u.assign(dofmap.n_scalar, 0.0);
  const auto [vel_bc, temp_bc] = dirichlet_sets(mesh, config.boundary.at(t0));
  for (int i = 0; i < vel_bc.size(); ++i) s.v[vel_bc.dofs[i]] = vel_bc.values[i];
  for (int i = 0; i < temp_bc.size(); ++i) s.u[temp_bc.dofs[i]] = temp_bc.values[i];
  return s;
}

double velocity_l2_norm(const State& state, const TaggedMesh& mesh,
                        const DofMap& dofmap) {
  const CsrMatrix m = assemble_p2_mass(mesh, dofmap);
  double sum = 0.0;
  for (int c = 0; c < 2; ++c) {
    std::vector<double> comp(dofmap.n_scalar);
    for (int i = 0; i < dofmap.n_scalar; ++i)
      comp[i] = state.v[DofMap::vdof(i, c)];
    const auto mc = matvec(m, comp);
    for (int i = 0; i < dofmap.n_scalar; ++i) sum += comp[i] * mc[i];
  }
  return std::sqrt(sum);
}

}  // namespace boussq
