/* Compiles the public header as C and drives a few calls. */
#include <math.h>
#include <stdio.h>

#include "gup_tunnel/gup_tunnel.h"

static int failures = 0;

#define EXPECT(cond)                                             \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                \
    }                                                            \
  } while (0)

int main(void) {
  gt_cosmo_params p;
  gt_report r;
  gt_expr* expr = NULL;
  gt_params* params = NULL;
  size_t offset = 0;
  double v = 0.0;

  EXPECT(gt_cosmo_params_a0sq_eq_G(1.0, &p) == GT_OK);
  EXPECT(gt_cosmo_report(&p, 0.01, &r) == GT_OK);
  EXPECT(fabs(r.ratio_gup - 1.0406704957541997) < 1e-12);

  EXPECT(gt_expr_parse("2 $ x", "x", &expr, &offset) == GT_ERR_LEX);
  EXPECT(offset == 2);
  EXPECT(gt_expr_parse("sqrt(x) * k", "x", &expr, NULL) == GT_OK);
  EXPECT(gt_params_create(0, &params) == GT_OK);
  EXPECT(gt_params_set(params, "k", 3.0) == GT_OK);
  EXPECT(gt_expr_evaluate(expr, 4.0, params, &v) == GT_OK);
  EXPECT(v == 6.0);
  gt_expr_destroy(expr);
  gt_params_destroy(params);

  if (failures == 0) printf("ok\n");
  return failures == 0 ? 0 : 1;
}
