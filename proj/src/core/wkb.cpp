#include "gup/wkb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "gup/error.hpp"

namespace gup::wkb {

namespace {

constexpr int kScanIntervals = 1024;
constexpr int kValidityScanPoints = 64;
constexpr double kBarrierTolerance = 1e-12;

// Scan of the barrier interior: the roundoff floor for V - E and the largest
// under-barrier momentum, used to make every integral dimensionless.
struct BarrierScan {
  double floor;
  double p_max;
};

BarrierScan scan_barrier(const BarrierProblem& problem) {
  double scale = std::abs(problem.energy);
  double excess = 0.0;
  const double width = problem.x_hi - problem.x_lo;
  for (int i = 1; i < kValidityScanPoints; ++i) {
    const double x = problem.x_lo + width * i / kValidityScanPoints;
    const double v = problem.potential(x);
    if (!std::isfinite(v)) continue;
    scale = std::max(scale, std::abs(v));
    excess = std::max(excess, v - problem.energy);
  }
  if (!(excess > 0.0)) excess = scale > 0.0 ? scale : 1.0;
  return {kBarrierTolerance * scale, std::sqrt(2.0 * problem.mass * excess)};
}

// Returns a callable producing 2m(V(x) - E) >= 0, rejecting real wells.
auto momentum_squared(const BarrierProblem& problem, double floor) {
  return [&problem, floor](double x) {
    const double v = problem.potential(x);
    if (!std::isfinite(v)) throw NonFiniteError(x);
    const double diff = v - problem.energy;
    if (diff < -floor) throw NegativeBarrierError(x, diff);
    return 2.0 * problem.mass * std::max(diff, 0.0);
  };
}

// Integrates f over the barrier in the unit variable u = (x - x_lo) / width
// with f divided by `magnitude`, so tolerances act on an O(1) quantity
// whatever the unit system.
double integrate_barrier(const BarrierProblem& problem, const quadrature::Integrand& f,
                         double magnitude, const IntegrationConfig& cfg) {
  const double lo = problem.x_lo;
  const double width = problem.x_hi - problem.x_lo;
  const quadrature::Integrand unit = [&](double u) { return f(lo + width * u) / magnitude; };
  const auto est = quadrature::integrate_with_sqrt_endpoints(unit, 0.0, 1.0, problem.singular_lo,
                                                             problem.singular_hi, cfg);
  if (!est.converged)
    throw BudgetExhaustedError(est.value * magnitude * width,
                               est.error_estimate * magnitude * width);
  return est.value * magnitude * width;
}

// p - arctan(s p)/s with s = sqrt(beta), always >= 0.
double arctan_deficit(double p, double sqrt_beta) {
  const double z = sqrt_beta * p;
  if (z < 0.1) {
    // 1 - arctan(z)/z = sum_k (-1)^(k+1) z^(2k) / (2k + 1); nine terms reach 1e-18.
    const double z2 = z * z;
    double sum = 0.0;
    for (int k = 9; k >= 1; --k) sum = 1.0 / (2 * k + 1) - z2 * sum;
    return p * z2 * sum;
  }
  return p - std::atan(z) / sqrt_beta;
}

void check_config(const BarrierProblem& problem, const IntegrationConfig& cfg) {
  problem.validate();
  cfg.validate();
}

}  // namespace

void BarrierProblem::validate() const {
  if (!potential) throw InvalidArgumentError("barrier problem has no potential");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidArgumentError("mass must be > 0");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw InvalidArgumentError("hbar must be > 0");
  if (!std::isfinite(energy)) throw InvalidArgumentError("energy must be finite");
  if (!std::isfinite(x_lo) || !std::isfinite(x_hi))
    throw InvalidArgumentError("barrier limits must be finite");
  if (x_lo > x_hi) throw InvalidArgumentError("barrier limits must satisfy x_lo <= x_hi");
}

GupParameter::GupParameter(double beta) : beta_(beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw InvalidArgumentError("GUP parameter beta must be finite and >= 0");
}

GupParameter GupParameter::from_dimensionless(double beta_tilde, double p_ref) {
  if (!(p_ref > 0.0) || !std::isfinite(p_ref))
    throw InvalidArgumentError("reference momentum must be finite and > 0");
  if (!(beta_tilde >= 0.0) || !std::isfinite(beta_tilde))
    throw InvalidArgumentError("dimensionless beta must be finite and >= 0");
  return GupParameter(beta_tilde / (p_ref * p_ref));
}

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::ExactQuadrature: return "exact-quadrature";
    case Method::FirstOrder: return "first-order";
    case Method::ClosedForm: return "closed-form";
  }
  return "unknown";
}

Transmission transmission(double gamma) {
  if (!std::isfinite(gamma)) throw InvalidArgumentError("gamma must be finite");
  const double log_t = -2.0 * gamma;
  double t = std::exp(log_t);
  if (t < std::numeric_limits<double>::min()) t = 0.0;
  return {t, log_t};
}

TunnelingReport make_report(double gamma, double gamma_gup, double delta_gamma,
                            Method method) {
  TunnelingReport r;
  r.gamma = gamma;
  r.gamma_gup = gamma_gup;
  r.delta_gamma = delta_gamma;
  r.method = method;
  const auto classic = transmission(gamma);
  const auto gup = transmission(gamma_gup);
  r.T = classic.T;
  r.log_T = classic.log_T;
  r.T_gup = gup.T;
  r.log_T_gup = gup.log_T;
  r.ratio_gup = std::exp(2.0 * (gamma - gamma_gup));
  return r;
}

double gamma_classic(const BarrierProblem& problem, const IntegrationConfig& cfg) {
  check_config(problem, cfg);
  if (problem.x_lo == problem.x_hi) return 0.0;
  const auto scan = scan_barrier(problem);
  const auto p2 = momentum_squared(problem, scan.floor);
  const double integral = integrate_barrier(
      problem, [&p2](double x) { return std::sqrt(p2(x)); }, scan.p_max, cfg);
  return integral / problem.hbar;
}

double gamma_gup_exact(const BarrierProblem& problem, GupParameter beta,
                       const IntegrationConfig& cfg) {
  const double gamma = gamma_classic(problem, cfg);
  if (beta.beta() < kBetaFloor || gamma == 0.0) return gamma;
  // Integrating the nonnegative deficit p - arctan(sqrt(beta) p)/sqrt(beta)
  // keeps gamma_GUP <= gamma independent of quadrature noise.
  const double sqrt_beta = std::sqrt(beta.beta());
  const auto scan = scan_barrier(problem);
  const auto p2 = momentum_squared(problem, scan.floor);
  const double deficit = integrate_barrier(
      problem, [&](double x) { return arctan_deficit(std::sqrt(p2(x)), sqrt_beta); },
      arctan_deficit(scan.p_max, sqrt_beta), cfg);
  return std::max(gamma - deficit / problem.hbar, 0.0);
}

double delta_gamma_first_order(const BarrierProblem& problem, GupParameter beta,
                               const IntegrationConfig& cfg) {
  check_config(problem, cfg);
  if (beta.beta() == 0.0 || problem.x_lo == problem.x_hi) return 0.0;
  const auto scan = scan_barrier(problem);
  const auto p2 = momentum_squared(problem, scan.floor);
  const double integral = integrate_barrier(
      problem,
      [&p2](double x) {
        const double q = p2(x);
        return q * std::sqrt(q);
      },
      scan.p_max * scan.p_max * scan.p_max, cfg);
  return -beta.beta() * integral / (3.0 * problem.hbar);
}

TunnelingReport report_exact(const BarrierProblem& problem, GupParameter beta,
                             const IntegrationConfig& cfg) {
  const double gamma = gamma_classic(problem, cfg);
  const double gamma_gup = gamma_gup_exact(problem, beta, cfg);
  // The first-order shift is informational here. Near a pole wall the
  // integral of p^3 diverges while the exact integrand stays bounded.
  double delta = std::numeric_limits<double>::quiet_NaN();
  try {
    delta = delta_gamma_first_order(problem, beta, cfg);
  } catch (const NonFiniteError&) {
  } catch (const BudgetExhaustedError&) {
  }
  return make_report(gamma, gamma_gup, delta, Method::ExactQuadrature);
}

TunnelingReport report_first_order(const BarrierProblem& problem, GupParameter beta,
                                   const IntegrationConfig& cfg) {
  const double gamma = gamma_classic(problem, cfg);
  const double delta = delta_gamma_first_order(problem, beta, cfg);
  if (gamma + delta < 0.0)
    throw DomainError("first-order GUP shift exceeds gamma; beta is outside the "
                      "perturbative regime");
  return make_report(gamma, gamma + delta, delta, Method::FirstOrder);
}

double reference_momentum(const BarrierProblem& problem) {
  problem.validate();
  const double width = problem.x_hi - problem.x_lo;
  if (width == 0.0) throw DegenerateBarrierError("zero-width barrier has no reference momentum");

  auto excess = [&](double x) {
    const double v = problem.potential(x);
    return std::isfinite(v) ? v - problem.energy : -std::numeric_limits<double>::infinity();
  };

  int best_i = 1;
  double best = excess(problem.x_lo + width / kScanIntervals);
  for (int i = 2; i < kScanIntervals; ++i) {
    const double d = excess(problem.x_lo + width * i / kScanIntervals);
    if (d > best) {
      best = d;
      best_i = i;
    }
  }

  // Golden-section refinement inside the bracketing scan cell pair.
  const double step = width / kScanIntervals;
  double a = problem.x_lo + step * std::max(best_i - 1, 1);
  double b = problem.x_lo + step * std::min(best_i + 1, kScanIntervals - 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = excess(c);
  double fd = excess(d);
  for (int it = 0; it < 80 && (b - a) > 1e-15 * std::abs(b); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = excess(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = excess(d);
    }
  }
  best = std::max({best, fc, fd});
  if (!(best > 0.0) || !std::isfinite(best))
    throw NoBarrierError("potential never exceeds the energy inside the barrier limits");
  return std::sqrt(2.0 * problem.mass * best);
}

namespace {

// V - E at x; nullopt when V is not finite or raises NonFinite.
std::optional<double> excess_at(const Potential& potential, double energy, double x) {
  try {
    const double v = potential(x);
    if (!std::isfinite(v)) return std::nullopt;
    return v - energy;
  } catch (const NonFiniteError&) {
    return std::nullopt;
  }
}

double bisect(const Potential& potential, double energy, double below, double above,
              double tol) {
  // Invariant: V(below) <= E < V(above); the two may be in either order.
  for (int it = 0; it < 400 && std::abs(above - below) > tol; ++it) {
    const double mid = 0.5 * (below + above);
    if (mid == below || mid == above) break;
    const auto d = excess_at(potential, energy, mid);
    if (!d) throw NonFiniteError(mid);
    if (*d > 0.0) above = mid; else below = mid;
  }
  return 0.5 * (below + above);
}

}  // namespace

TurningPoints find_turning_points(const Potential& potential, double energy,
                                  double search_lo, double search_hi, double tol) {
  if (!potential) throw InvalidArgumentError("no potential supplied");
  if (!std::isfinite(search_lo) || !std::isfinite(search_hi) || !(search_lo < search_hi))
    throw InvalidArgumentError("search interval must satisfy lo < hi");
  if (!(tol > 0.0)) throw InvalidArgumentError("turning-point tolerance must be > 0");

  const double width = search_hi - search_lo;
  auto grid = [&](int i) {
    return i == kScanIntervals ? search_hi : search_lo + width * i / kScanIntervals;
  };
  // Inside the barrier: V > E, or a pole on a search edge.
  auto inside = [&](int i) {
    const double x = grid(i);
    const auto d = excess_at(potential, energy, x);
    if (!d) {
      if (i == 0 || i == kScanIntervals) return true;
      throw NonFiniteError(x);
    }
    return *d > 0.0;
  };

  int first = -1;
  for (int i = 0; i <= kScanIntervals; ++i) {
    if (inside(i)) {
      first = i;
      break;
    }
  }
  if (first < 0) throw NoBarrierError("V - E never changes sign on the search interval");

  int last = kScanIntervals;
  bool hi_root = false;
  for (int i = first + 1; i <= kScanIntervals; ++i) {
    if (!inside(i)) {
      last = i;
      hi_root = true;
      break;
    }
  }
  const bool lo_root = first > 0;
  if (!lo_root && !hi_root)
    throw NoBarrierError("V - E never changes sign on the search interval");

  TurningPoints tp{};
  tp.lo_is_root = lo_root;
  tp.hi_is_root = hi_root;
  tp.x_lo = lo_root ? bisect(potential, energy, grid(first - 1), grid(first), tol) : search_lo;
  tp.x_hi = hi_root ? bisect(potential, energy, grid(last), grid(last - 1), tol) : search_hi;
  return tp;
}

}  // namespace gup::wkb
