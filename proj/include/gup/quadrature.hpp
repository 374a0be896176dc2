#pragma once

#include <functional>

namespace gup::quadrature {

using Integrand = std::function<double(double)>;

struct IntegrationConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;

  /// Throws InvalidArgumentError unless rel_tol > 0, abs_tol >= 0 and
  /// max_subdivisions >= 1.
  void validate() const;
};

struct IntegralEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions_used = 0;
  bool converged = false;
};

/// Adaptive 15-point Gauss-Kronrod with bisection of the worst interval.
///
/// The endpoints are never sampled. A NaN or infinity returned by `f` at any
/// node raises NonFiniteError; running out of subdivisions returns the best
/// estimate with `converged == false`.
IntegralEstimate integrate(const Integrand& f, double lo, double hi,
                           const IntegrationConfig& cfg = {});

/// Same as integrate(), but first removes square-root behaviour at flagged
/// endpoints with the substitution x = endpoint -/+ t^2. When both ends are
/// flagged the interval is split at its midpoint.
IntegralEstimate integrate_with_sqrt_endpoints(const Integrand& f, double lo,
                                               double hi, bool singular_lo,
                                               bool singular_hi,
                                               const IntegrationConfig& cfg = {});

}  // namespace gup::quadrature
