#include "gup/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "gup/error.hpp"

namespace gup::quadrature {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule. Odd indices of kNodes
// are the Gauss abscissae.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
};

double sample(const Integrand& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) throw NonFiniteError(x);
  return y;
}

Segment kronrod15(const Integrand& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  std::array<double, 7> left{};
  std::array<double, 7> right{};
  const double fc = sample(f, center);
  double gauss = fc * kGaussWeights[3];
  double kronrod = fc * kKronrodWeights[7];
  double abs_sum = std::abs(kronrod);

  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    left[j] = sample(f, center - dx);
    right[j] = sample(f, center + dx);
    const double pair = left[j] + right[j];
    kronrod += kKronrodWeights[j] * pair;
    abs_sum += kKronrodWeights[j] * (std::abs(left[j]) + std::abs(right[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }

  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j)
    asc += kKronrodWeights[j] * (std::abs(left[j] - mean) + std::abs(right[j] - mean));

  const double width = std::abs(half);
  const double result = kronrod * half;
  abs_sum *= width;
  asc *= width;
  double err = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0)
    err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  if (abs_sum > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * abs_sum, err);
  return {lo, hi, result, err};
}

bool by_error(const Segment& a, const Segment& b) { return a.error < b.error; }

bool splittable(const Segment& s) {
  const double mid = 0.5 * (s.lo + s.hi);
  const double scale = std::max(std::abs(s.lo), std::abs(s.hi));
  return mid > s.lo && mid < s.hi && (s.hi - s.lo) > 64.0 * kEps * scale;
}

IntegralEstimate combine(const IntegralEstimate& a, const IntegralEstimate& b,
                         const IntegrationConfig& cfg) {
  IntegralEstimate out;
  out.value = a.value + b.value;
  out.error_estimate = a.error_estimate + b.error_estimate;
  out.subdivisions_used = a.subdivisions_used + b.subdivisions_used;
  out.converged = a.converged && b.converged &&
                  out.error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value));
  return out;
}

}  // namespace

void IntegrationConfig::validate() const {
  if (!(rel_tol > 0.0)) throw InvalidArgumentError("rel_tol must be > 0");
  if (!(abs_tol >= 0.0)) throw InvalidArgumentError("abs_tol must be >= 0");
  if (max_subdivisions < 1) throw InvalidArgumentError("max_subdivisions must be >= 1");
}

IntegralEstimate integrate(const Integrand& f, double lo, double hi,
                           const IntegrationConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw InvalidArgumentError("integration interval must satisfy lo < hi");

  std::vector<Segment> heap;
  heap.reserve(static_cast<std::size_t>(cfg.max_subdivisions) + 1);
  heap.push_back(kronrod15(f, lo, hi));
  double total = heap.front().value;
  double total_err = heap.front().error;

  auto tolerance = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };

  while (total_err > tolerance() &&
         static_cast<int>(heap.size()) < cfg.max_subdivisions) {
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Segment worst = heap.back();
    if (!splittable(worst)) {
      std::push_heap(heap.begin(), heap.end(), by_error);
      break;
    }
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Segment left = kronrod15(f, worst.lo, mid);
    const Segment right = kronrod15(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
  }

  // Re-sum from the partition so the running updates leave no drift.
  std::sort(heap.begin(), heap.end(),
            [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  IntegralEstimate out;
  double compensation = 0.0;
  for (const Segment& s : heap) {
    const double y = s.value - compensation;
    const double t = out.value + y;
    compensation = (t - out.value) - y;
    out.value = t;
    out.error_estimate += s.error;
  }
  out.subdivisions_used = static_cast<int>(heap.size());
  out.converged = out.error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value));
  return out;
}

IntegralEstimate integrate_with_sqrt_endpoints(const Integrand& f, double lo,
                                               double hi, bool singular_lo,
                                               bool singular_hi,
                                               const IntegrationConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw InvalidArgumentError("integration interval must satisfy lo < hi");

  // x = lo + t^2, dx = 2t dt
  auto from_lo = [&](double a, double b) {
    const Integrand g = [&f, a](double t) { return 2.0 * t * f(a + t * t); };
    return integrate(g, 0.0, std::sqrt(b - a), cfg);
  };
  // x = hi - t^2, dx = -2t dt
  auto from_hi = [&](double a, double b) {
    const Integrand g = [&f, b](double t) { return 2.0 * t * f(b - t * t); };
    return integrate(g, 0.0, std::sqrt(b - a), cfg);
  };

  if (singular_lo && singular_hi) {
    const double mid = 0.5 * (lo + hi);
    return combine(from_lo(lo, mid), from_hi(mid, hi), cfg);
  }
  if (singular_lo) return from_lo(lo, hi);
  if (singular_hi) return from_hi(lo, hi);
  return integrate(f, lo, hi, cfg);
}

}  // namespace gup::quadrature
