#pragma once

#include <functional>
#include <string_view>

#include "gup/quadrature.hpp"

namespace gup::wkb {

using Potential = std::function<double(double)>;
using quadrature::IntegrationConfig;

/// A one-dimensional barrier in its own consistent unit system. The integration
/// runs over [x_lo, x_hi]; the singular flags mark ends where V - E vanishes
/// like a square root (classical turning points).
struct BarrierProblem {
  Potential potential;
  double mass = 1.0;
  double hbar = 1.0;
  double energy = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
  bool singular_lo = false;
  bool singular_hi = false;

  /// Checks mass, hbar > 0, finite limits with x_lo <= x_hi and a callable
  /// potential. Interior V >= E is checked lazily during integration.
  void validate() const;
};

/// GUP deformation strength, in 1/momentum^2 of the problem's unit system.
class GupParameter {
 public:
  constexpr GupParameter() = default;
  explicit GupParameter(double beta);

  /// beta = beta_tilde / p_ref^2 for a dimensionless strength beta_tilde.
  static GupParameter from_dimensionless(double beta_tilde, double p_ref);

  double beta() const noexcept { return beta_; }

 private:
  double beta_ = 0.0;
};

/// Below this the GUP path returns the classic result unchanged.
inline constexpr double kBetaFloor = 1e-30;

enum class Method { ExactQuadrature, FirstOrder, ClosedForm };

std::string_view to_string(Method method) noexcept;

struct TunnelingReport {
  double gamma = 0.0;
  double gamma_gup = 0.0;
  double delta_gamma = 0.0;
  double log_T = 0.0;
  double log_T_gup = 0.0;
  double T = 1.0;
  double T_gup = 1.0;
  double ratio_gup = 1.0;
  Method method = Method::ExactQuadrature;
};

struct Transmission {
  double T;
  double log_T;
};

/// log_T = -2 gamma; T = exp(log_T), flushed to zero below the normal range.
Transmission transmission(double gamma);

/// Fills the derived fields. ratio_gup is evaluated as exp(2(gamma - gamma_gup))
/// so it stays finite when T and T_gup both underflow.
TunnelingReport make_report(double gamma, double gamma_gup, double delta_gamma,
                            Method method);

/// (1/hbar) * integral of sqrt(2m(V - E)) over the barrier.
double gamma_classic(const BarrierProblem& problem, const IntegrationConfig& cfg = {});

/// (1/hbar) * integral of arctan(sqrt(beta) |p|) / sqrt(beta).
double gamma_gup_exact(const BarrierProblem& problem, GupParameter beta,
                       const IntegrationConfig& cfg = {});

/// First-order shift -(beta / 3 hbar) * integral of (2m(V - E))^(3/2); never positive.
double delta_gamma_first_order(const BarrierProblem& problem, GupParameter beta,
                               const IntegrationConfig& cfg = {});

/// gamma, exact gamma_GUP and the first-order shift from quadrature. The
/// shift is NaN when its integral does not converge (e.g. a 1/x wall).
TunnelingReport report_exact(const BarrierProblem& problem, GupParameter beta,
                             const IntegrationConfig& cfg = {});

/// gamma and gamma + delta_gamma from quadrature.
TunnelingReport report_first_order(const BarrierProblem& problem, GupParameter beta,
                                   const IntegrationConfig& cfg = {});

/// sqrt(2m * max(V - E)) sampled over the interior of the barrier.
double reference_momentum(const BarrierProblem& problem);

struct TurningPoints {
  double x_lo;
  double x_hi;
  bool lo_is_root;  ///< false when the barrier runs into the search edge
  bool hi_is_root;
};

/// Locates the first barrier region (V > E) in [search_lo, search_hi] on a
/// 1024-interval scan and refines its edges by bisection to |dx| <= tol.
/// A search edge that is already inside the barrier, or where V is not finite
/// (a pole), is returned as a wall instead of a root.
TurningPoints find_turning_points(const Potential& potential, double energy,
                                  double search_lo, double search_hi, double tol);

}  // namespace gup::wkb
