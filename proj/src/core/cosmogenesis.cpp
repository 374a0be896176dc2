#include <cmath>

#include "gup/error.hpp"
#include "gup/models.hpp"

namespace gup::models {

namespace {

void validate(const CosmogenesisParams& p) {
  if (!(p.G > 0.0) || !std::isfinite(p.G)) throw InvalidArgumentError("G must be finite and > 0");
  if (!(p.rho_vac > 0.0) || !std::isfinite(p.rho_vac))
    throw InvalidArgumentError("rho_vac must be finite and > 0");
}

// a0^2 = 3 / lambda without a sqrt round trip.
double a0_squared(const CosmogenesisParams& p) { return 3.0 / p.lambda(); }

double coupling(const CosmogenesisParams& p) { return 3.0 * constants::pi / (2.0 * p.G); }

}  // namespace

double CosmogenesisParams::lambda() const {
  validate(*this);
  return 8.0 * constants::pi * G * rho_vac;
}

double CosmogenesisParams::a0() const { return std::sqrt(a0_squared(*this)); }

CosmogenesisParams CosmogenesisParams::a0_squared_equals_g(double G) {
  CosmogenesisParams p;
  p.G = G;
  p.rho_vac = 3.0 / (8.0 * constants::pi * G * G);
  validate(p);
  return p;
}

wkb::Potential cosmo_potential(const CosmogenesisParams& params) {
  const double c = coupling(params);
  const double c2 = c * c;
  const double a0sq = a0_squared(params);
  return [c2, a0sq](double a) { return c2 * a * a * (1.0 - a * a / a0sq); };
}

double cosmo_gamma(const CosmogenesisParams& params) {
  return constants::pi * a0_squared(params) / (2.0 * params.G);
}

double cosmo_delta(const CosmogenesisParams& params) {
  validate(params);
  const double x = 3.0 / (8.0 * params.G * params.G * params.rho_vac);
  return 9.0 * constants::pi / (70.0 * params.G) * x * x;
}

double cosmo_delta_gamma(const CosmogenesisParams& params, GupParameter beta) {
  const double delta = cosmo_delta(params);
  if (beta.beta() == 0.0) return 0.0;
  return -0.5 * beta.beta() * delta;
}

double cosmo_reference_momentum(const CosmogenesisParams& params) {
  // max V at a = a0 / sqrt(2); 2m = 1.
  const double c = coupling(params);
  const double vmax = c * c * a0_squared(params) / 4.0;
  return std::sqrt(2.0 * kCosmoMass * vmax);
}

BarrierProblem cosmo_problem(const CosmogenesisParams& params) {
  BarrierProblem problem;
  problem.potential = cosmo_potential(params);
  problem.mass = kCosmoMass;
  problem.hbar = kCosmoHbar;
  problem.energy = 0.0;
  problem.x_lo = 0.0;
  problem.x_hi = params.a0();
  problem.singular_hi = true;
  return problem;
}

TunnelingReport cosmo_report(const CosmogenesisParams& params, GupParameter beta) {
  const double gamma = cosmo_gamma(params);
  const double delta = cosmo_delta_gamma(params, beta);
  if (gamma + delta < 0.0)
    throw DomainError("first-order GUP shift exceeds gamma; beta is outside the "
                      "perturbative regime");
  return wkb::make_report(gamma, gamma + delta, delta, wkb::Method::ClosedForm);
}

}  // namespace gup::models
