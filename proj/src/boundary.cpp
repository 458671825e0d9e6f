#include "boussq/boundary.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace boussq {

double beta1(double s) {
  return 0.5 - std::atan(100.0 * s) / std::numbers::pi;
}

double beta2(double s) { return s < 0.0 ? 0.5 : 0.0; }

double BetaSpec::operator()(double s) const {
  switch (kind) {
    case Kind::beta1: return beta1(s);
    case Kind::beta2: return beta2(s);
    case Kind::custom: return fn(s);
  }
  return 0.0;
}

BetaSpec BetaSpec::make_beta1() { return {Kind::beta1, {}, 1.0}; }

BetaSpec BetaSpec::make_beta2() { return {Kind::beta2, {}, 0.5}; }

BetaSpec BetaSpec::make_custom(std::function<double(double)> fn, double bound) {
  if (!fn) throw std::invalid_argument("custom beta requires a callable");
  if (!(bound >= 0.0)) throw std::invalid_argument("beta bound must be >= 0");
  return {Kind::custom, std::move(fn), bound};
}

double heat_flux_integrand(double u_val, double v_normal, const BetaSpec& beta) {
  return u_val * beta(v_normal) * v_normal;
}

std::string BcCombo::name() const {
  return to_string(velocity) + "-" + to_string(temperature);
}

VelocityBc parse_velocity_bc(const std::string& name) {
  if (name == "dn") return VelocityBc::dn;
  if (name == "ddn") return VelocityBc::ddn;
  throw std::invalid_argument("unknown velocity bc '" + name +
                              "' (expected dn or ddn)");
}

TemperatureBc parse_temperature_bc(const std::string& name) {
  if (name == "n") return TemperatureBc::n();
  if (name == "n_beta1") return TemperatureBc::n_beta(BetaSpec::make_beta1());
  if (name == "n_beta2") return TemperatureBc::n_beta(BetaSpec::make_beta2());
  throw std::invalid_argument("unknown temperature bc '" + name +
                              "' (expected n, n_beta1 or n_beta2)");
}

std::string to_string(VelocityBc bc) {
  return bc == VelocityBc::dn ? "dn" : "ddn";
}

std::string to_string(const TemperatureBc& bc) {
  if (bc.kind == TemperatureBc::Kind::neumann) return "n";
  if (!bc.beta) return "n_beta";
  switch (bc.beta->kind) {
    case BetaSpec::Kind::beta1: return "n_beta1";
    case BetaSpec::Kind::beta2: return "n_beta2";
    case BetaSpec::Kind::custom: return "n_beta_custom";
  }
  return "n_beta";
}

std::vector<BcCombo> benchmark_combos() {
  std::vector<BcCombo> combos;
  for (const auto& temp :
       {TemperatureBc::n(), TemperatureBc::n_beta(BetaSpec::make_beta1()),
        TemperatureBc::n_beta(BetaSpec::make_beta2())}) {
    combos.push_back({VelocityBc::dn, temp});
    combos.push_back({VelocityBc::ddn, temp});
  }
  return combos;
}

}  // namespace boussq
