/*
 * gup_tunnel: WKB tunnelling probabilities with generalized-uncertainty-
 * principle (GUP) corrections.
 *
 * Every function returns a gt_status. On failure the thread-local message of
 * gt_last_error() describes the cause; output arguments are left untouched.
 * Objects behind opaque handles are immutable once built and may be shared
 * across threads; gt_params is the exception and must not be mutated while
 * another thread reads it.
 */
#ifndef GUP_TUNNEL_H
#define GUP_TUNNEL_H

#include <stddef.h>

#if defined(GT_BUILDING_LIBRARY)
#define GT_API __attribute__((visibility("default")))
#else
#define GT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gt_status {
  GT_OK = 0,
  GT_ERR_INVALID_ARGUMENT = 1,
  GT_ERR_NON_FINITE = 2,
  GT_ERR_BUDGET_EXHAUSTED = 3,
  GT_ERR_NEGATIVE_BARRIER = 4,
  GT_ERR_NO_BARRIER = 5,
  GT_ERR_DEGENERATE_BARRIER = 6,
  GT_ERR_DOMAIN = 7,
  GT_ERR_LEX = 8,
  GT_ERR_PARSE = 9,
  GT_ERR_UNBOUND_PARAMETER = 10,
  GT_ERR_INTERNAL = 99
} gt_status;

GT_API const char* gt_status_name(gt_status status);

/* Message of the most recent failure on the calling thread ("" if none). */
GT_API const char* gt_last_error(void);

GT_API const char* gt_version(void);

/* Looks up a CODATA constant by its DSL name (pi, e, eps0, hbar, G, c,
 * m_alpha, MeV). */
GT_API gt_status gt_constant(const char* name, double* out);

/* ---- quadrature ------------------------------------------------------- */

typedef struct gt_integration_config {
  double rel_tol;
  double abs_tol;
  int max_subdivisions;
} gt_integration_config;

GT_API gt_integration_config gt_integration_config_default(void);

/* ---- reports ---------------------------------------------------------- */

typedef enum gt_method {
  GT_METHOD_EXACT_QUADRATURE = 0,
  GT_METHOD_FIRST_ORDER = 1,
  GT_METHOD_CLOSED_FORM = 2
} gt_method;

GT_API const char* gt_method_name(gt_method method);

typedef struct gt_report {
  double gamma;
  double gamma_gup;
  double delta_gamma; /* first-order shift, <= 0 */
  double log_T;
  double log_T_gup;
  double T;
  double T_gup;
  double ratio_gup; /* T_gup / T, >= 1 */
  gt_method method;
} gt_report;

/* log_T = -2 gamma; T = exp(log_T) or 0 on underflow. */
GT_API gt_status gt_transmission(double gamma, double* T, double* log_T);

/* P_SH = P_R / T from log_T, underflow safe. */
GT_API gt_status gt_hawking_power(double radiated_power, double log_T,
                                  double* power, double* log_power);

/* ---- alpha decay (SI) ------------------------------------------------- */

typedef struct gt_alpha_params {
  int Z;
  double r1;
  double energy;
  double mass;
  double charge;
  double eps0;
  double hbar;
} gt_alpha_params;

GT_API gt_alpha_params gt_alpha_params_default(void);
GT_API gt_status gt_alpha_r2(const gt_alpha_params* p, double* r2);
GT_API gt_status gt_alpha_gamma(const gt_alpha_params* p, double* gamma);
GT_API gt_status gt_alpha_g(const gt_alpha_params* p, double* g);
GT_API gt_status gt_alpha_delta_gamma(const gt_alpha_params* p, double beta,
                                      double* delta_gamma);
GT_API gt_status gt_alpha_reference_momentum(const gt_alpha_params* p, double* p_ref);
GT_API gt_status gt_alpha_report(const gt_alpha_params* p, double beta, gt_report* out);

/* ---- quantum cosmogenesis (Planck units, hbar = 1, m = 1/2) ----------- */

typedef struct gt_cosmo_params {
  double G;
  double rho_vac;
} gt_cosmo_params;

GT_API gt_cosmo_params gt_cosmo_params_default(void);
/* rho_vac = 3 / (8 pi G^2), i.e. a0^2 = G. */
GT_API gt_status gt_cosmo_params_a0sq_eq_G(double G, gt_cosmo_params* out);
GT_API gt_status gt_cosmo_a0(const gt_cosmo_params* p, double* a0);
GT_API gt_status gt_cosmo_gamma(const gt_cosmo_params* p, double* gamma);
GT_API gt_status gt_cosmo_delta(const gt_cosmo_params* p, double* delta);
GT_API gt_status gt_cosmo_delta_gamma(const gt_cosmo_params* p, double beta,
                                      double* delta_gamma);
GT_API gt_status gt_cosmo_reference_momentum(const gt_cosmo_params* p, double* p_ref);
GT_API gt_status gt_cosmo_report(const gt_cosmo_params* p, double beta, gt_report* out);

/* ---- gravitational tunnelling radiation (SI) -------------------------- */

typedef struct gt_gravrad_params {
  double G;
  double m;
  double M2;
  double R_H;
  double R2;
  double beta2_turn; /* turning radius, not the GUP beta */
  double hbar;
} gt_gravrad_params;

/* G and hbar set to CODATA values, everything else zero. */
GT_API gt_gravrad_params gt_gravrad_params_default(void);
GT_API gt_status gt_gravrad_energy(const gt_gravrad_params* p, double* energy);
GT_API gt_status gt_gravrad_gamma(const gt_gravrad_params* p, double* gamma);
GT_API gt_status gt_gravrad_F(double k1, double k2, double* F);
GT_API gt_status gt_gravrad_delta_gamma(const gt_gravrad_params* p, double beta,
                                        double* delta_gamma);
GT_API gt_status gt_gravrad_reference_momentum(const gt_gravrad_params* p, double* p_ref);
GT_API gt_status gt_gravrad_report(const gt_gravrad_params* p, double beta, gt_report* out);

/* ---- potential expressions -------------------------------------------- */

typedef struct gt_params gt_params; /* name -> value table */
typedef struct gt_expr gt_expr;     /* parsed V(x) */

/* with_codata != 0 seeds the table with the constants of gt_constant(). */
GT_API gt_status gt_params_create(int with_codata, gt_params** out);
GT_API void gt_params_destroy(gt_params* params);
GT_API gt_status gt_params_set(gt_params* params, const char* name, double value);
GT_API gt_status gt_params_get(const gt_params* params, const char* name, double* value);

/* `variable` names the integration variable (e.g. "r", "a", "x"). On a lex or
 * parse failure *error_offset (if non-NULL) receives the byte offset. */
GT_API gt_status gt_expr_parse(const char* source, const char* variable,
                               gt_expr** out, size_t* error_offset);
GT_API void gt_expr_destroy(gt_expr* expr);
/* Fully parenthesised form. Writes at most `capacity` bytes including the
 * terminator and stores the required size (with terminator) in *needed. */
GT_API gt_status gt_expr_print(const gt_expr* expr, char* buffer, size_t capacity,
                               size_t* needed);
GT_API gt_status gt_expr_evaluate(const gt_expr* expr, double x, const gt_params* params,
                                  double* out);

/* ---- barrier problems ------------------------------------------------- */

typedef struct gt_problem gt_problem;

typedef enum gt_limits {
  /* search [lo, hi] for the barrier's turning points */
  GT_LIMITS_SEARCH = 0,
  /* integrate over [lo, hi] as given */
  GT_LIMITS_FIXED = 1
} gt_limits;

/* Binds `expr` against `params` (copied) and builds a barrier for a particle
 * of the given mass and energy. turning_tol <= 0 selects 1e-13 (hi - lo). */
GT_API gt_status gt_problem_from_expr(const gt_expr* expr, const gt_params* params,
                                      double mass, double hbar, double energy, double lo,
                                      double hi, gt_limits limits, double turning_tol,
                                      gt_problem** out);
GT_API gt_status gt_problem_alpha(const gt_alpha_params* p, gt_problem** out);
GT_API gt_status gt_problem_cosmo(const gt_cosmo_params* p, gt_problem** out);
GT_API gt_status gt_problem_gravrad(const gt_gravrad_params* p, gt_problem** out);
GT_API void gt_problem_destroy(gt_problem* problem);

GT_API gt_status gt_problem_limits(const gt_problem* problem, double* x_lo, double* x_hi);

/* cfg may be NULL for defaults. */
GT_API gt_status gt_problem_gamma_classic(const gt_problem* problem,
                                          const gt_integration_config* cfg, double* out);
GT_API gt_status gt_problem_gamma_gup_exact(const gt_problem* problem, double beta,
                                            const gt_integration_config* cfg, double* out);
GT_API gt_status gt_problem_delta_gamma(const gt_problem* problem, double beta,
                                        const gt_integration_config* cfg, double* out);
GT_API gt_status gt_problem_reference_momentum(const gt_problem* problem, double* p_ref);
/* method: GT_METHOD_EXACT_QUADRATURE or GT_METHOD_FIRST_ORDER. */
GT_API gt_status gt_problem_report(const gt_problem* problem, double beta, gt_method method,
                                   const gt_integration_config* cfg, gt_report* out);

#ifdef __cplusplus
}
#endif

#endif /* GUP_TUNNEL_H */
