#pragma once

#include "gup/constants.hpp"
#include "gup/wkb.hpp"

namespace gup::models {

using wkb::BarrierProblem;
using wkb::GupParameter;
using wkb::TunnelingReport;

// ---------------------------------------------------------------------------
// Alpha decay: Coulomb barrier V(r) = 2 Z e^2 / (4 pi eps0 r) between the
// nuclear radius r1 and the outer turning point r2. SI units.
// ---------------------------------------------------------------------------

struct AlphaDecayParams {
  int Z = 90;
  double r1 = 9.3e-15;
  double energy = 4.2 * constants::mev;
  double mass = constants::alpha_particle_mass;
  double charge = constants::elementary_charge;
  double eps0 = constants::vacuum_permittivity;
  double hbar = constants::hbar;

  /// 2 Z e^2 / (4 pi eps0), so that V(r) = coulomb_strength() / r.
  double coulomb_strength() const;
};

wkb::Potential alpha_potential(const AlphaDecayParams& params);

/// Outer turning point 2 Z e^2 / (4 pi eps0 E). Throws DegenerateBarrierError
/// when r2 <= r1.
double alpha_r2_of_energy(const AlphaDecayParams& params);

double alpha_gamma_closed(const AlphaDecayParams& params);

/// True when r2 - r1 < 1e-8 r1; alpha_g() then returns its limit 0.
bool alpha_is_near_degenerate(const AlphaDecayParams& params);

/// g(E), equal to -4 times the integral of (r2/r - 1)^(3/2) over [r1, r2].
/// The three 1/sqrt(r2 - r1) terms are merged into -4 (r1 + 2 r2) sqrt((r2 - r1)/r1),
/// which is finite as r2 -> r1.
double alpha_g(const AlphaDecayParams& params);

/// (2mE)^(3/2) / (12 hbar) * beta * g.
double alpha_delta_gamma(const AlphaDecayParams& params, GupParameter beta);

/// sqrt(2m (V(r1) - E)), the largest under-barrier momentum.
double alpha_reference_momentum(const AlphaDecayParams& params);

BarrierProblem alpha_problem(const AlphaDecayParams& params);

TunnelingReport alpha_report(const AlphaDecayParams& params, GupParameter beta);

// ---------------------------------------------------------------------------
// Quantum cosmogenesis in Planck units with hbar = 1 and mass 1/2:
// V(a) = (3 pi / 2G)^2 a^2 (1 - a^2 / a0^2), tunnelling from a = 0 to a0 at E = 0.
// ---------------------------------------------------------------------------

inline constexpr double kCosmoMass = 0.5;
inline constexpr double kCosmoHbar = 1.0;

struct CosmogenesisParams {
  double G = 1.0;
  double rho_vac = 3.0 / (8.0 * constants::pi);

  double lambda() const;  ///< 8 pi G rho_vac
  double a0() const;      ///< sqrt(3 / lambda)

  /// The a0^2 = G scenario: rho_vac = 3 / (8 pi G^2).
  static CosmogenesisParams a0_squared_equals_g(double G = 1.0);
};

wkb::Potential cosmo_potential(const CosmogenesisParams& params);

/// pi a0^2 / (2G); exp(-2 gamma) = exp(-3 / (8 G^2 rho_vac)).
double cosmo_gamma(const CosmogenesisParams& params);

/// (9 pi / 70 G) (3 / (8 G^2 rho_vac))^2, so that T_GUP = T exp(beta delta).
double cosmo_delta(const CosmogenesisParams& params);

double cosmo_delta_gamma(const CosmogenesisParams& params, GupParameter beta);

double cosmo_reference_momentum(const CosmogenesisParams& params);

BarrierProblem cosmo_problem(const CosmogenesisParams& params);

TunnelingReport cosmo_report(const CosmogenesisParams& params, GupParameter beta);

// ---------------------------------------------------------------------------
// Gravitational tunnelling radiation: particle of mass m leaving a black hole
// of radius R_H through V(r) = -G m M2 / (R2 - r) from a second body at R2.
// The outer turning point is beta2_turn (a radius, unrelated to GUP beta).
// ---------------------------------------------------------------------------

struct GravRadParams {
  double G = constants::newton_g;
  double m = 0.0;
  double M2 = 0.0;
  double R_H = 0.0;
  double R2 = 0.0;
  double beta2_turn = 0.0;
  double hbar = constants::hbar;

  double k1() const { return beta2_turn / R_H; }
  double k2() const { return R2 / R_H; }

  /// Positive masses and radii with R_H <= beta2_turn < R2, and R2 - beta2_turn
  /// at least 1e-12 R2. Throws DomainError otherwise.
  void validate() const;
};

wkb::Potential gravrad_potential(const GravRadParams& params);

/// -G m M2 / (R2 - beta2_turn).
double gravrad_energy(const GravRadParams& params);

double gravrad_gamma_closed(const GravRadParams& params);

/// Shape factor of the first-order shift; positive for 1 < k1 < k2.
double gravrad_F(double k1, double k2);

/// -beta (m sqrt(2 G M2))^3 / (3 hbar sqrt(R_H)) * F(k1, k2).
double gravrad_delta_gamma(const GravRadParams& params, GupParameter beta);

double gravrad_reference_momentum(const GravRadParams& params);

BarrierProblem gravrad_problem(const GravRadParams& params);

TunnelingReport gravrad_report(const GravRadParams& params, GupParameter beta);

struct HawkingPower {
  double power;
  double log_power;
};

/// P_SH = P_R / T evaluated as exp(ln P_R - log_T). Requires P_R > 0 and
/// log_T <= 0.
HawkingPower hawking_power_ratio(double radiated_power, double log_T);

}  // namespace gup::models
