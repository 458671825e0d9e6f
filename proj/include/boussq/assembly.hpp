#ifndef BOUSSQ_ASSEMBLY_HPP
#define BOUSSQ_ASSEMBLY_HPP

#include <functional>
#include <span>
#include <vector>

#include "boussq/boundary.hpp"
#include "boussq/linalg.hpp"
#include "boussq/mesh.hpp"
#include "boussq/spaces.hpp"

namespace boussq {

/// Dimensionless problem constants and the time-step size. The buoyancy
/// direction is fixed to e = (0,1).
struct Params {
  double re = 3.0;
  double pr = 1.0;
  double gr = 1000.0;
  double k = 1e-2;

  void validate() const;
};

/// One time level of the coupled fields. Dirichlet dofs hold their
/// prescribed values exactly.
struct State {
  std::vector<double> v;  // velocity, interleaved components, size 2*n_scalar
  std::vector<double> p;  // pressure, size n_pressure
  std::vector<double> u;  // temperature, size n_scalar
  double t = 0.0;
};

/// One linear solve: CSR matrix plus right-hand side.
struct SparseSystem {
  CsrMatrix matrix;
  std::vector<double> rhs;
};

/// Which reading of the linearized weak form supplies the explicit
/// transport velocity: the semi-discrete equations use vⁿ, the displayed
/// weak form repeats the extrapolation ṽⁿ⁺¹.
enum class WeakForm { semidiscrete, paper_literal };

/// Time level of the temperature driving the buoyancy term.
enum class BuoyancyLevel { trapezoid, implicit };

/// Switches for dropping whole terms (Stokes / pure-conduction studies).
struct TermFlags {
  bool convection = true;
  bool buoyancy = true;
  bool open_boundary = true;  // C_v and C_u contributions
};

/// Volume forcing, evaluated at physical points and a time.
struct Forcing {
  std::function<Vec2(Vec2, double)> momentum;  // null means zero
  std::function<double(Vec2, double)> heat;
};

struct AssemblyOptions {
  WeakForm weak_form = WeakForm::semidiscrete;
  BuoyancyLevel buoyancy_level = BuoyancyLevel::trapezoid;
  TermFlags terms;
  Forcing forcing;
};

/// Linear extrapolations 2xⁿ - xⁿ⁻¹ of velocity and temperature.
/// Throws on layout mismatch.
std::pair<std::vector<double>, std::vector<double>> extrapolate(
    const State& state_n, const State& state_nm1);

/// Temperature step system in uⁿ⁺¹ (size n_scalar), before Dirichlet
/// constraints:
///   (2/k)(u,y) + (ṽ·∇u, y) + (∇u,∇y)/(Re Pr) - C_u(u, ṽ, y)
///     = (2/k)(uⁿ,y) - (w·∇uⁿ, y) - (∇uⁿ,∇y)/(Re Pr) + C_u(uⁿ, vⁿ, y)
///       + (g₂ⁿ⁺¹ + g₂ⁿ, y),
/// with w = vⁿ or ṽ per WeakForm and C_u from the temperature condition.
/// Throws if bc_u is N_β without a β spec.
SparseSystem assemble_temperature(const State& state_n,
                                  std::span<const double> v_tilde,
                                  const Params& params, const TemperatureBc& bc_u,
                                  const TaggedMesh& mesh, const DofMap& dofmap,
                                  const AssemblyOptions& options = {});

/// Coupled momentum/continuity step system in (vⁿ⁺¹, pⁿ⁺¹)
/// (size 2*n_scalar + n_pressure), before Dirichlet constraints:
///   (2/k)(v,y) + (ṽ·∇v, y) + (∇v,∇y)/Re - (p, div y) - C_v(v, ṽ, y)
///     + (div v, q)
///     = (2/k)(vⁿ,y) - (w·∇vⁿ, y) - (∇vⁿ,∇y)/Re + (pⁿ, div y)
///       + (Gr/Re²)(ū e, y) + C_v(vⁿ, vⁿ, y) + (g₁ⁿ⁺¹ + g₁ⁿ, y),
/// with ū = (uⁿ⁺¹+uⁿ)/2 or uⁿ⁺¹ per BuoyancyLevel and C_v the DDN backflow
/// term (zero for DN).
SparseSystem assemble_momentum(const State& state_n,
                               std::span<const double> v_tilde,
                               std::span<const double> u_np1,
                               const Params& params, VelocityBc bc_v,
                               const TaggedMesh& mesh, const DofMap& dofmap,
                               const AssemblyOptions& options = {});

/// Constrained rows become identity rows with the prescribed value on the
/// right-hand side; constrained columns are eliminated with a right-hand
/// side lift. Throws on out-of-range dof ids.
SparseSystem apply_dirichlet(const SparseSystem& system,
                             const DirichletSet& constraints);

/// Standalone forms, shared by the step assemblers and the invariant tests.

/// P2 scalar mass matrix ∫ φ_j φ_i.
CsrMatrix assemble_p2_mass(const TaggedMesh& mesh, const DofMap& dofmap);

/// P2 scalar stiffness matrix ∫ ∇φ_j·∇φ_i.
CsrMatrix assemble_p2_stiffness(const TaggedMesh& mesh, const DofMap& dofmap);

/// P2 scalar convection matrix ∫ (w·∇φ_j) φ_i for a velocity field w.
CsrMatrix assemble_p2_convection(const TaggedMesh& mesh, const DofMap& dofmap,
                                 std::span<const double> w);

/// Divergence coupling ∫ ψ_j ∂φ_i/∂x_c, indexed [velocity dof, pressure dof];
/// its transpose applied to velocity coefficients yields (div v, ψ_j).
CsrMatrix assemble_divergence(const TaggedMesh& mesh, const DofMap& dofmap);

/// Heat open-boundary matrix ∫_{Γ_o} φ_j β(w·n)(w·n) φ_i dσ (C_u Gram).
CsrMatrix assemble_heat_open_boundary(const TaggedMesh& mesh,
                                      const DofMap& dofmap,
                                      std::span<const double> w,
                                      const BetaSpec& beta);

/// DDN backflow matrix ½ ∫_{Γ_o} φ_j φ_i (w·n)_- dσ on one velocity
/// component (C_v Gram); (s)_- = min(s, 0).
CsrMatrix assemble_ddn_open_boundary(const TaggedMesh& mesh,
                                     const DofMap& dofmap,
                                     std::span<const double> w);

}  // namespace boussq

#endif
