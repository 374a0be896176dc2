#include <algorithm>
#include <cmath>
#include <string>

#include "gup/error.hpp"
#include "gup/models.hpp"

namespace gup::models {

namespace {

constexpr double kNearDegenerate = 1e-8;
constexpr double kAsinSlack = 1e-12;

void validate(const AlphaDecayParams& p) {
  if (p.Z <= 0) throw InvalidArgumentError("Z must be a positive proton count");
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidArgumentError(std::string(name) + " must be finite and > 0");
  };
  positive(p.r1, "r1");
  positive(p.energy, "energy");
  positive(p.mass, "mass");
  positive(p.charge, "elementary charge");
  positive(p.eps0, "eps0");
  positive(p.hbar, "hbar");
}

double clamped_asin_argument(double r1, double r2) {
  const double arg = (2.0 * r1 - r2) / r2;
  if (std::abs(arg) > 1.0 + kAsinSlack)
    throw DomainError("arcsin argument (2 r1 - r2) / r2 outside [-1, 1]");
  return std::clamp(arg, -1.0, 1.0);
}

}  // namespace

double AlphaDecayParams::coulomb_strength() const {
  return 2.0 * Z * charge * charge / (4.0 * constants::pi * eps0);
}

wkb::Potential alpha_potential(const AlphaDecayParams& params) {
  const double k = params.coulomb_strength();
  return [k](double r) { return k / r; };
}

double alpha_r2_of_energy(const AlphaDecayParams& params) {
  validate(params);
  const double r2 = params.coulomb_strength() / params.energy;
  if (!(r2 > params.r1))
    throw DegenerateBarrierError("energy at or above the barrier top: r2 <= r1");
  return r2;
}

double alpha_gamma_closed(const AlphaDecayParams& params) {
  const double r2 = alpha_r2_of_energy(params);
  const double r1 = params.r1;
  const double bracket = -0.5 * r2 * std::asin(clamped_asin_argument(r1, r2)) +
                         constants::pi * r2 / 4.0 - std::sqrt(r1 * (r2 - r1));
  return std::sqrt(2.0 * params.mass * params.energy) / params.hbar * bracket;
}

bool alpha_is_near_degenerate(const AlphaDecayParams& params) {
  const double r2 = alpha_r2_of_energy(params);
  return r2 - params.r1 < kNearDegenerate * params.r1;
}

double alpha_g(const AlphaDecayParams& params) {
  const double r2 = alpha_r2_of_energy(params);
  const double r1 = params.r1;
  const double width = r2 - r1;
  if (width < kNearDegenerate * r1) return 0.0;
  return -6.0 * r2 * std::asin(clamped_asin_argument(r1, r2)) + 3.0 * constants::pi * r2 -
         4.0 * (r1 + 2.0 * r2) * std::sqrt(width / r1);
}

double alpha_delta_gamma(const AlphaDecayParams& params, GupParameter beta) {
  const double g = alpha_g(params);
  if (beta.beta() == 0.0) return 0.0;
  const double p = std::sqrt(2.0 * params.mass * params.energy);
  return p * p * p / (12.0 * params.hbar) * beta.beta() * g;
}

double alpha_reference_momentum(const AlphaDecayParams& params) {
  alpha_r2_of_energy(params);
  const double excess = params.coulomb_strength() / params.r1 - params.energy;
  return std::sqrt(2.0 * params.mass * excess);
}

BarrierProblem alpha_problem(const AlphaDecayParams& params) {
  BarrierProblem problem;
  problem.potential = alpha_potential(params);
  problem.mass = params.mass;
  problem.hbar = params.hbar;
  problem.energy = params.energy;
  problem.x_lo = params.r1;
  problem.x_hi = alpha_r2_of_energy(params);
  problem.singular_hi = true;
  return problem;
}

TunnelingReport alpha_report(const AlphaDecayParams& params, GupParameter beta) {
  const double gamma = alpha_gamma_closed(params);
  const double delta = alpha_delta_gamma(params, beta);
  if (gamma + delta < 0.0)
    throw DomainError("first-order GUP shift exceeds gamma; beta is outside the "
                      "perturbative regime");
  return wkb::make_report(gamma, gamma + delta, delta, wkb::Method::ClosedForm);
}

}  // namespace gup::models
