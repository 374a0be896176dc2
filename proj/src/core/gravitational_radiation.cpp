#include <cmath>
#include <string>

#include "gup/error.hpp"
#include "gup/models.hpp"

namespace gup::models {

namespace {

constexpr double kPoleGuard = 1e-12;

// m sqrt(2 G M2): V - E = (this)^2 / (2m) * (1/(R2 - beta2) - 1/(R2 - r)).
double momentum_scale(const GravRadParams& p) { return p.m * std::sqrt(2.0 * p.G * p.M2); }

}  // namespace

void GravRadParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw DomainError(std::string(name) + " must be finite and > 0");
  };
  positive(G, "G");
  positive(m, "m");
  positive(M2, "M2");
  positive(R_H, "R_H");
  positive(R2, "R2");
  positive(beta2_turn, "beta2");
  positive(hbar, "hbar");
  if (beta2_turn < R_H) throw DomainError("turning radius beta2 must be >= R_H");
  if (!(beta2_turn < R2)) throw DomainError("turning radius beta2 must be < R2");
  if (R2 - beta2_turn < kPoleGuard * R2)
    throw DomainError("turning radius too close to R2: energy diverges");
}

wkb::Potential gravrad_potential(const GravRadParams& params) {
  params.validate();
  const double k = params.G * params.m * params.M2;
  const double r2 = params.R2;
  return [k, r2](double r) { return -k / (r2 - r); };
}

double gravrad_energy(const GravRadParams& params) {
  params.validate();
  return -params.G * params.m * params.M2 / (params.R2 - params.beta2_turn);
}

double gravrad_gamma_closed(const GravRadParams& params) {
  params.validate();
  const double outer = params.R2 - params.R_H;
  const double width = params.beta2_turn - params.R_H;
  const double gap = params.R2 - params.beta2_turn;
  // ln((sqrt(outer) + sqrt(width)) / sqrt(gap)) == asinh(sqrt(width / gap)) as outer = gap + width.
  const double braces =
      std::sqrt(outer * width / gap) - std::sqrt(gap) * std::asinh(std::sqrt(width / gap));
  return momentum_scale(params) / params.hbar * braces;
}

double gravrad_F(double k1, double k2) {
  if (!std::isfinite(k1) || !std::isfinite(k2) || k1 < 1.0 || !(k2 > k1))
    throw DomainError("F(k1, k2) requires 1 < k1 < k2");
  const double gap = k2 - k1;
  const double width = k1 - 1.0;
  const double outer = k2 - 1.0;
  const double log_term = std::asinh(std::sqrt(width / gap));
  return -3.0 / std::sqrt(gap) * log_term +
         std::sqrt(outer * width) / (gap * std::sqrt(gap)) * (1.0 + 2.0 * gap / outer);
}

double gravrad_delta_gamma(const GravRadParams& params, GupParameter beta) {
  params.validate();
  const double f = gravrad_F(params.k1(), params.k2());
  if (beta.beta() == 0.0) return 0.0;
  const double s = momentum_scale(params);
  return -beta.beta() * s * s * s / (3.0 * params.hbar * std::sqrt(params.R_H)) * f;
}

double gravrad_reference_momentum(const GravRadParams& params) {
  params.validate();
  const double s = momentum_scale(params);
  const double excess = 1.0 / (params.R2 - params.beta2_turn) - 1.0 / (params.R2 - params.R_H);
  return s * std::sqrt(excess);
}

BarrierProblem gravrad_problem(const GravRadParams& params) {
  BarrierProblem problem;
  problem.potential = gravrad_potential(params);
  problem.mass = params.m;
  problem.hbar = params.hbar;
  problem.energy = gravrad_energy(params);
  problem.x_lo = params.R_H;
  problem.x_hi = params.beta2_turn;
  problem.singular_hi = true;
  return problem;
}

TunnelingReport gravrad_report(const GravRadParams& params, GupParameter beta) {
  const double gamma = gravrad_gamma_closed(params);
  const double delta = gravrad_delta_gamma(params, beta);
  if (gamma + delta < 0.0)
    throw DomainError("first-order GUP shift exceeds gamma; beta is outside the "
                      "perturbative regime");
  return wkb::make_report(gamma, gamma + delta, delta, wkb::Method::ClosedForm);
}

HawkingPower hawking_power_ratio(double radiated_power, double log_T) {
  if (!(radiated_power > 0.0) || !std::isfinite(radiated_power))
    throw InvalidArgumentError("radiated power must be finite and > 0");
  if (!(log_T <= 0.0) || !std::isfinite(log_T))
    throw InvalidArgumentError("log_T must be finite and <= 0 (T in (0, 1])");
  const double log_power = std::log(radiated_power) - log_T;
  return {std::exp(log_power), log_power};
}

}  // namespace gup::models
