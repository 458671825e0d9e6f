#ifndef BOUSSQ_TIMESTEPPER_HPP
#define BOUSSQ_TIMESTEPPER_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "boussq/assembly.hpp"
#include "boussq/boundary.hpp"
#include "boussq/spaces.hpp"

namespace boussq {

/// Time-dependent strong boundary data; each function receives (point, time).
/// The benchmark uses constants (v = 0, u = 1), the manufactured-solution
/// studies need the full time dependence.
struct TransientBoundaryValues {
  std::function<Vec2(Vec2, double)> velocity;
  std::function<double(Vec2, double)> temperature;

  BoundaryValues at(double t) const;
  static TransientBoundaryValues benchmark();
};

enum class RecordPolicy { final_only, every_m_steps };

struct RunConfig {
  Params params;
  double t_end = 1.0;
  int n_steps = 100;
  BcCombo bc;
  RecordPolicy record = RecordPolicy::final_only;
  int record_every = 1;
  AssemblyOptions assembly;
  TransientBoundaryValues boundary = TransientBoundaryValues::benchmark();
  /// Extra constraints appended to the momentum system (full momentum
  /// numbering: velocity dofs then pressure dofs). Used to pin the pressure
  /// level when no open boundary is present.
  DirichletSet extra_momentum_constraints;

  void validate() const;
};

/// One step of the decoupled scheme: extrapolate, solve the temperature
/// system with ṽⁿ⁺¹, then the momentum/continuity system with the fresh
/// temperature. `state_nm1 == nullptr` selects the bootstrap extrapolation
/// ṽ¹ = v⁰, ũ¹ = u⁰. Dirichlet dofs of the result hold their prescribed
/// values exactly; non-finite solutions raise an error.
State advance(const State& state_n, const State* state_nm1,
              const RunConfig& config, const TaggedMesh& mesh,
              const DofMap& dofmap);

struct TransientResult {
  State final_state;
  std::vector<State> recorded;
  std::string metadata;  // config echo and mesh counts, one line
};

/// March n_steps from `initial` (with k = t_end / n_steps). Solver failures
/// carry the step index.
TransientResult run_transient(const State& initial, const RunConfig& config,
                              const TaggedMesh& mesh, const DofMap& dofmap);

/// Quiescent start: v = 0, p = 0, u = 0 in the interior with the Dirichlet
/// values of `config.boundary` at time t0 imposed on the constrained dofs.
State quiescent_state(const RunConfig& config, const TaggedMesh& mesh,
                      const DofMap& dofmap, double t0 = 0.0);

/// L2 norm of the velocity coefficients' field, ∫|v_h|² via the mass matrix.
double velocity_l2_norm(const State& state, const TaggedMesh& mesh,
                        const DofMap& dofmap);

}  // namespace boussq

#endif
