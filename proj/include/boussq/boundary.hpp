#ifndef BOUSSQ_BOUNDARY_HPP
#define BOUSSQ_BOUNDARY_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace boussq {

/// Open-boundary condition for the velocity: plain do-nothing (DN) or the
/// directional variant (DDN) that penalizes backflow with -1/2 v (v·n)_-.
enum class VelocityBc { dn, ddn };

/// β function of the coupled heat-transfer condition, bounded and continuous
/// except possibly at the origin.
struct BetaSpec {
  enum class Kind { beta1, beta2, custom };
  Kind kind = Kind::beta1;
  std::function<double(double)> fn;  // used for Kind::custom
  double bound = 1.0;                // declared sup norm

  double operator()(double s) const;

  static BetaSpec make_beta1();
  static BetaSpec make_beta2();
  static BetaSpec make_custom(std::function<double(double)> fn, double bound);
};

/// Temperature condition on Γ_o: homogeneous Neumann (N) or the coupled
/// condition N_β with a β spec.
struct TemperatureBc {
  enum class Kind { neumann, n_beta };
  Kind kind = Kind::neumann;
  std::optional<BetaSpec> beta;

  static TemperatureBc n() { return {}; }
  static TemperatureBc n_beta(BetaSpec b) {
    return {Kind::n_beta, std::move(b)};
  }
};

/// One of the six benchmark combinations (velocity x temperature condition).
struct BcCombo {
  VelocityBc velocity = VelocityBc::dn;
  TemperatureBc temperature = TemperatureBc::n();

  std::string name() const;  // e.g. "ddn-n_beta1"
};

/// β₁(s) = 1/2 - arctan(100 s)/π; smooth, strictly decreasing, range (0,1).
double beta1(double s);

/// β₂(s) = 1/2 for s < 0, 0 otherwise.
double beta2(double s);

/// Flux density u β(v·n) (v·n) of the coupled heat-transfer condition.
double heat_flux_integrand(double u_val, double v_normal, const BetaSpec& beta);

/// Config names: bc_v in {dn, ddn}; bc_u in {n, n_beta1, n_beta2}.
VelocityBc parse_velocity_bc(const std::string& name);
TemperatureBc parse_temperature_bc(const std::string& name);
std::string to_string(VelocityBc bc);
std::string to_string(const TemperatureBc& bc);

/// The six benchmark combinations in table order:
/// dn-n, ddn-n, dn-n_beta1, ddn-n_beta1, dn-n_beta2, ddn-n_beta2.
std::vector<BcCombo> benchmark_combos();

}  // namespace boussq

#endif
