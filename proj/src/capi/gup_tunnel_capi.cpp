#include "gup_tunnel/gup_tunnel.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <string>
#include <utility>

#include "gup/error.hpp"
#include "gup/models.hpp"
#include "gup/potential_dsl.hpp"
#include "gup/wkb.hpp"

struct gt_params {
  gup::dsl::ParameterTable table;
};

struct gt_expr {
  gup::dsl::Expr tree;
};

struct gt_problem {
  gup::wkb::BarrierProblem problem;
};

namespace {

thread_local std::string last_error;

gt_status to_status(gup::ErrorCode code) {
  using gup::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return GT_ERR_INVALID_ARGUMENT;
    case ErrorCode::NonFinite: return GT_ERR_NON_FINITE;
    case ErrorCode::BudgetExhausted: return GT_ERR_BUDGET_EXHAUSTED;
    case ErrorCode::NegativeBarrier: return GT_ERR_NEGATIVE_BARRIER;
    case ErrorCode::NoBarrier: return GT_ERR_NO_BARRIER;
    case ErrorCode::DegenerateBarrier: return GT_ERR_DEGENERATE_BARRIER;
    case ErrorCode::Domain: return GT_ERR_DOMAIN;
    case ErrorCode::Lex: return GT_ERR_LEX;
    case ErrorCode::Parse: return GT_ERR_PARSE;
    case ErrorCode::UnboundParameter: return GT_ERR_UNBOUND_PARAMETER;
  }
  return GT_ERR_INTERNAL;
}

gt_status fail(gt_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <class Body>
gt_status guarded(Body&& body) noexcept {
  try {
    body();
    last_error.clear();
    return GT_OK;
  } catch (const gup::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(GT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GT_ERR_INTERNAL, "unknown exception");
  }
}

template <class... Ptr>
bool any_null(const Ptr*... ptrs) {
  return ((ptrs == nullptr) || ...);
}

gt_status null_argument() { return fail(GT_ERR_INVALID_ARGUMENT, "null pointer argument"); }

gup::quadrature::IntegrationConfig to_cpp(const gt_integration_config* cfg) {
  if (cfg == nullptr) return {};
  return {cfg->rel_tol, cfg->abs_tol, cfg->max_subdivisions};
}

gup::models::AlphaDecayParams to_cpp(const gt_alpha_params& p) {
  return {p.Z, p.r1, p.energy, p.mass, p.charge, p.eps0, p.hbar};
}

gup::models::CosmogenesisParams to_cpp(const gt_cosmo_params& p) { return {p.G, p.rho_vac}; }

gup::models::GravRadParams to_cpp(const gt_gravrad_params& p) {
  return {p.G, p.m, p.M2, p.R_H, p.R2, p.beta2_turn, p.hbar};
}

gt_method to_c(gup::wkb::Method m) {
  switch (m) {
    case gup::wkb::Method::ExactQuadrature: return GT_METHOD_EXACT_QUADRATURE;
    case gup::wkb::Method::FirstOrder: return GT_METHOD_FIRST_ORDER;
    case gup::wkb::Method::ClosedForm: return GT_METHOD_CLOSED_FORM;
  }
  return GT_METHOD_EXACT_QUADRATURE;
}

gt_report to_c(const gup::wkb::TunnelingReport& r) {
  return {r.gamma, r.gamma_gup, r.delta_gamma, r.log_T, r.log_T_gup,
          r.T,     r.T_gup,     r.ratio_gup,   to_c(r.method)};
}

gup::wkb::GupParameter beta_of(double beta) { return gup::wkb::GupParameter(beta); }

}  // namespace

extern "C" {

GT_API const char* gt_status_name(gt_status status) {
  switch (status) {
    case GT_OK: return "ok";
    case GT_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case GT_ERR_NON_FINITE: return "NonFinite";
    case GT_ERR_BUDGET_EXHAUSTED: return "BudgetExhausted";
    case GT_ERR_NEGATIVE_BARRIER: return "NegativeBarrier";
    case GT_ERR_NO_BARRIER: return "NoBarrier";
    case GT_ERR_DEGENERATE_BARRIER: return "DegenerateBarrier";
    case GT_ERR_DOMAIN: return "DomainError";
    case GT_ERR_LEX: return "LexError";
    case GT_ERR_PARSE: return "ParseError";
    case GT_ERR_UNBOUND_PARAMETER: return "UnboundParameter";
    case GT_ERR_INTERNAL: return "InternalError";
  }
  return "unknown";
}

GT_API const char* gt_last_error(void) { return last_error.c_str(); }

GT_API const char* gt_version(void) { return GT_VERSION_STRING; }

GT_API gt_status gt_constant(const char* name, double* out) {
  if (any_null(name, out)) return null_argument();
  const auto table = gup::dsl::codata_parameters();
  const auto it = table.find(std::string_view(name));
  if (it == table.end()) return fail(GT_ERR_INVALID_ARGUMENT, std::string("unknown constant '") + name + "'");
  *out = it->second;
  last_error.clear();
  return GT_OK;
}

GT_API gt_integration_config gt_integration_config_default(void) {
  const gup::quadrature::IntegrationConfig cfg;
  return {cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions};
}

GT_API const char* gt_method_name(gt_method method) {
  switch (method) {
    case GT_METHOD_EXACT_QUADRATURE: return "exact-quadrature";
    case GT_METHOD_FIRST_ORDER: return "first-order";
    case GT_METHOD_CLOSED_FORM: return "closed-form";
  }
  return "unknown";
}

GT_API gt_status gt_transmission(double gamma, double* T, double* log_T) {
  if (any_null(T, log_T)) return null_argument();
  return guarded([&] {
    const auto t = gup::wkb::transmission(gamma);
    *T = t.T;
    *log_T = t.log_T;
  });
}

GT_API gt_status gt_hawking_power(double radiated_power, double log_T, double* power,
                                  double* log_power) {
  if (any_null(power, log_power)) return null_argument();
  return guarded([&] {
    const auto p = gup::models::hawking_power_ratio(radiated_power, log_T);
    *power = p.power;
    *log_power = p.log_power;
  });
}

// ---- alpha ----------------------------------------------------------------

GT_API gt_alpha_params gt_alpha_params_default(void) {
  const gup::models::AlphaDecayParams p;
  return {p.Z, p.r1, p.energy, p.mass, p.charge, p.eps0, p.hbar};
}

GT_API gt_status gt_alpha_r2(const gt_alpha_params* p, double* r2) {
  if (any_null(p, r2)) return null_argument();
  return guarded([&] { *r2 = gup::models::alpha_r2_of_energy(to_cpp(*p)); });
}

GT_API gt_status gt_alpha_gamma(const gt_alpha_params* p, double* gamma) {
  if (any_null(p, gamma)) return null_argument();
  return guarded([&] { *gamma = gup::models::alpha_gamma_closed(to_cpp(*p)); });
}

GT_API gt_status gt_alpha_g(const gt_alpha_params* p, double* g) {
  if (any_null(p, g)) return null_argument();
  return guarded([&] { *g = gup::models::alpha_g(to_cpp(*p)); });
}

GT_API gt_status gt_alpha_delta_gamma(const gt_alpha_params* p, double beta,
                                      double* delta_gamma) {
  if (any_null(p, delta_gamma)) return null_argument();
  return guarded([&] { *delta_gamma = gup::models::alpha_delta_gamma(to_cpp(*p), beta_of(beta)); });
}

GT_API gt_status gt_alpha_reference_momentum(const gt_alpha_params* p, double* p_ref) {
  if (any_null(p, p_ref)) return null_argument();
  return guarded([&] { *p_ref = gup::models::alpha_reference_momentum(to_cpp(*p)); });
}

GT_API gt_status gt_alpha_report(const gt_alpha_params* p, double beta, gt_report* out) {
  if (any_null(p, out)) return null_argument();
  return guarded([&] { *out = to_c(gup::models::alpha_report(to_cpp(*p), beta_of(beta))); });
}

// ---- cosmogenesis ---------------------------------------------------------

GT_API gt_cosmo_params gt_cosmo_params_default(void) {
  const gup::models::CosmogenesisParams p;
  return {p.G, p.rho_vac};
}

GT_API gt_status gt_cosmo_params_a0sq_eq_G(double G, gt_cosmo_params* out) {
  if (any_null(out)) return null_argument();
  return guarded([&] {
    const auto p = gup::models::CosmogenesisParams::a0_squared_equals_g(G);
    *out = {p.G, p.rho_vac};
  });
}

GT_API gt_status gt_cosmo_a0(const gt_cosmo_params* p, double* a0) {
  if (any_null(p, a0)) return null_argument();
  return guarded([&] { *a0 = to_cpp(*p).a0(); });
}

GT_API gt_status gt_cosmo_gamma(const gt_cosmo_params* p, double* gamma) {
  if (any_null(p, gamma)) return null_argument();
  return guarded([&] { *gamma = gup::models::cosmo_gamma(to_cpp(*p)); });
}

GT_API gt_status gt_cosmo_delta(const gt_cosmo_params* p, double* delta) {
  if (any_null(p, delta)) return null_argument();
  return guarded([&] { *delta = gup::models::cosmo_delta(to_cpp(*p)); });
}

GT_API gt_status gt_cosmo_delta_gamma(const gt_cosmo_params* p, double beta,
                                      double* delta_gamma) {
  if (any_null(p, delta_gamma)) return null_argument();
  return guarded([&] { *delta_gamma = gup::models::cosmo_delta_gamma(to_cpp(*p), beta_of(beta)); });
}

GT_API gt_status gt_cosmo_reference_momentum(const gt_cosmo_params* p, double* p_ref) {
  if (any_null(p, p_ref)) return null_argument();
  return guarded([&] { *p_ref = gup::models::cosmo_reference_momentum(to_cpp(*p)); });
}

GT_API gt_status gt_cosmo_report(const gt_cosmo_params* p, double beta, gt_report* out) {
  if (any_null(p, out)) return null_argument();
  return guarded([&] { *out = to_c(gup::models::cosmo_report(to_cpp(*p), beta_of(beta))); });
}

// ---- gravitational radiation ---------------------------------------------

GT_API gt_gravrad_params gt_gravrad_params_default(void) {
  const gup::models::GravRadParams p;
  return {p.G, p.m, p.M2, p.R_H, p.R2, p.beta2_turn, p.hbar};
}

GT_API gt_status gt_gravrad_energy(const gt_gravrad_params* p, double* energy) {
  if (any_null(p, energy)) return null_argument();
  return guarded([&] { *energy = gup::models::gravrad_energy(to_cpp(*p)); });
}

GT_API gt_status gt_gravrad_gamma(const gt_gravrad_params* p, double* gamma) {
  if (any_null(p, gamma)) return null_argument();
  return guarded([&] { *gamma = gup::models::gravrad_gamma_closed(to_cpp(*p)); });
}

GT_API gt_status gt_gravrad_F(double k1, double k2, double* F) {
  if (any_null(F)) return null_argument();
  return guarded([&] { *F = gup::models::gravrad_F(k1, k2); });
}

GT_API gt_status gt_gravrad_delta_gamma(const gt_gravrad_params* p, double beta,
                                        double* delta_gamma) {
  if (any_null(p, delta_gamma)) return null_argument();
  return guarded([&] { *delta_gamma = gup::models::gravrad_delta_gamma(to_cpp(*p), beta_of(beta)); });
}

GT_API gt_status gt_gravrad_reference_momentum(const gt_gravrad_params* p, double* p_ref) {
  if (any_null(p, p_ref)) return null_argument();
  return guarded([&] { *p_ref = gup::models::gravrad_reference_momentum(to_cpp(*p)); });
}

GT_API gt_status gt_gravrad_report(const gt_gravrad_params* p, double beta, gt_report* out) {
  if (any_null(p, out)) return null_argument();
  return guarded([&] { *out = to_c(gup::models::gravrad_report(to_cpp(*p), beta_of(beta))); });
}

// ---- parameters and expressions ------------------------------------------

GT_API gt_status gt_params_create(int with_codata, gt_params** out) {
  if (any_null(out)) return null_argument();
  return guarded([&] {
    auto* params = new gt_params;
    if (with_codata != 0) params->table = gup::dsl::codata_parameters();
    *out = params;
  });
}

GT_API void gt_params_destroy(gt_params* params) { delete params; }

GT_API gt_status gt_params_set(gt_params* params, const char* name, double value) {
  if (any_null(params, name)) return null_argument();
  if (*name == '\0') return fail(GT_ERR_INVALID_ARGUMENT, "parameter name is empty");
  return guarded([&] { params->table.insert_or_assign(std::string(name), value); });
}

GT_API gt_status gt_params_get(const gt_params* params, const char* name, double* value) {
  if (any_null(params, name, value)) return null_argument();
  const auto it = params->table.find(std::string_view(name));
  if (it == params->table.end()) return fail(GT_ERR_UNBOUND_PARAMETER, std::string("unbound parameter '") + name + "'");
  *value = it->second;
  last_error.clear();
  return GT_OK;
}

GT_API gt_status gt_expr_parse(const char* source, const char* variable, gt_expr** out,
                               size_t* error_offset) {
  if (any_null(source, variable, out)) return null_argument();
  try {
    auto tree = gup::dsl::parse(std::string_view(source), std::string_view(variable));
    *out = new gt_expr{std::move(tree)};
    last_error.clear();
    return GT_OK;
  } catch (const gup::LexError& e) {
    if (error_offset != nullptr) *error_offset = e.position();
    return fail(GT_ERR_LEX, e.what());
  } catch (const gup::ParseError& e) {
    if (error_offset != nullptr) *error_offset = e.position();
    return fail(GT_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return fail(GT_ERR_INTERNAL, e.what());
  }
}

GT_API void gt_expr_destroy(gt_expr* expr) { delete expr; }

GT_API gt_status gt_expr_print(const gt_expr* expr, char* buffer, size_t capacity,
                               size_t* needed) {
  if (any_null(expr)) return null_argument();
  return guarded([&] {
    const std::string text = gup::dsl::print(expr->tree);
    if (needed != nullptr) *needed = text.size() + 1;
    if (buffer != nullptr && capacity > 0) {
      const size_t n = std::min(capacity - 1, text.size());
      std::memcpy(buffer, text.data(), n);
      buffer[n] = '\0';
    }
  });
}

GT_API gt_status gt_expr_evaluate(const gt_expr* expr, double x, const gt_params* params,
                                  double* out) {
  if (any_null(expr, out)) return null_argument();
  return guarded([&] {
    static const gup::dsl::ParameterTable kEmpty;
    *out = gup::dsl::evaluate(expr->tree, x, params != nullptr ? params->table : kEmpty);
  });
}

// ---- problems -------------------------------------------------------------

GT_API gt_status gt_problem_from_expr(const gt_expr* expr, const gt_params* params,
                                      double mass, double hbar, double energy, double lo,
                                      double hi, gt_limits limits, double turning_tol,
                                      gt_problem** out) {
  if (any_null(expr, out)) return null_argument();
  return guarded([&] {
    static const gup::dsl::ParameterTable kEmpty;
    gup::wkb::BarrierProblem problem;
    problem.potential = gup::dsl::make_potential(expr->tree, params != nullptr ? params->table : kEmpty);
    problem.mass = mass;
    problem.hbar = hbar;
    problem.energy = energy;
    if (limits == GT_LIMITS_FIXED) {
      problem.x_lo = lo;
      problem.x_hi = hi;
      problem.singular_lo = true;
      problem.singular_hi = true;
    } else if (limits == GT_LIMITS_SEARCH) {
      const double tol = turning_tol > 0.0 ? turning_tol : 1e-13 * (hi - lo);
      const auto tp = gup::wkb::find_turning_points(problem.potential, energy, lo, hi, tol);
      problem.x_lo = tp.x_lo;
      problem.x_hi = tp.x_hi;
      // Roots vanish like a square root; walls may be poles. The substitution suits both.
      problem.singular_lo = true;
      problem.singular_hi = true;
    } else {
      throw gup::InvalidArgumentError("unknown limits mode");
    }
    problem.validate();
    *out = new gt_problem{std::move(problem)};
  });
}

GT_API gt_status gt_problem_alpha(const gt_alpha_params* p, gt_problem** out) {
  if (any_null(p, out)) return null_argument();
  return guarded([&] { *out = new gt_problem{gup::models::alpha_problem(to_cpp(*p))}; });
}

GT_API gt_status gt_problem_cosmo(const gt_cosmo_params* p, gt_problem** out) {
  if (any_null(p, out)) return null_argument();
  return guarded([&] { *out = new gt_problem{gup::models::cosmo_problem(to_cpp(*p))}; });
}

GT_API gt_status gt_problem_gravrad(const gt_gravrad_params* p, gt_problem** out) {
  if (any_null(p, out)) return null_argument();
  return guarded([&] { *out = new gt_problem{gup::models::gravrad_problem(to_cpp(*p))}; });
}

GT_API void gt_problem_destroy(gt_problem* problem) { delete problem; }

GT_API gt_status gt_problem_limits(const gt_problem* problem, double* x_lo, double* x_hi) {
  if (any_null(problem, x_lo, x_hi)) return null_argument();
  *x_lo = problem->problem.x_lo;
  *x_hi = problem->problem.x_hi;
  last_error.clear();
  return GT_OK;
}

GT_API gt_status gt_problem_gamma_classic(const gt_problem* problem,
                                          const gt_integration_config* cfg, double* out) {
  if (any_null(problem, out)) return null_argument();
  return guarded([&] { *out = gup::wkb::gamma_classic(problem->problem, to_cpp(cfg)); });
}

GT_API gt_status gt_problem_gamma_gup_exact(const gt_problem* problem, double beta,
                                            const gt_integration_config* cfg, double* out) {
  if (any_null(problem, out)) return null_argument();
  return guarded([&] {
    *out = gup::wkb::gamma_gup_exact(problem->problem, beta_of(beta), to_cpp(cfg));
  });
}

GT_API gt_status gt_problem_delta_gamma(const gt_problem* problem, double beta,
                                        const gt_integration_config* cfg, double* out) {
  if (any_null(problem, out)) return null_argument();
  return guarded([&] {
    *out = gup::wkb::delta_gamma_first_order(problem->problem, beta_of(beta), to_cpp(cfg));
  });
}

GT_API gt_status gt_problem_reference_momentum(const gt_problem* problem, double* p_ref) {
  if (any_null(problem, p_ref)) return null_argument();
  return guarded([&] { *p_ref = gup::wkb::reference_momentum(problem->problem); });
}

GT_API gt_status gt_problem_report(const gt_problem* problem, double beta, gt_method method,
                                   const gt_integration_config* cfg, gt_report* out) {
  if (any_null(problem, out)) return null_argument();
  return guarded([&] {
    switch (method) {
      case GT_METHOD_EXACT_QUADRATURE:
        *out = to_c(gup::wkb::report_exact(problem->problem, beta_of(beta), to_cpp(cfg)));
        return;
      case GT_METHOD_FIRST_ORDER:
        *out = to_c(gup::wkb::report_first_order(problem->problem, beta_of(beta), to_cpp(cfg)));
        return;
      case GT_METHOD_CLOSED_FORM:
        break;
    }
    throw gup::InvalidArgumentError("a generic problem has no closed form; use exact or first-order");
  });
}

}  // extern "C"
