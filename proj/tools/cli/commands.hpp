#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gup_tunnel/gup_tunnel.h"
#include "records.hpp"

namespace gup::cli {

// Bad flags or grids; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A failure reported by the library; exit code 1. what() is the library's
// message verbatim.
struct ComputeError : std::runtime_error {
  ComputeError(gt_status status, const std::string& message)
      : std::runtime_error(message), status(status) {}
  gt_status status;
};

// Throws ComputeError carrying gt_last_error() unless status is GT_OK.
void check(gt_status status);

// A barrier scenario the CLI can evaluate at any beta. Immutable once built,
// so sweeps share one instance across threads.
class Model {
 public:
  virtual ~Model() = default;
  // Input columns describing the scenario.
  virtual void echo(Record& r) const = 0;
  virtual double reference_momentum() const = 0;
  virtual gt_report report(double beta, gt_method method, const gt_integration_config& cfg) const = 0;
  virtual gt_method default_method() const = 0;
};

std::unique_ptr<Model> make_alpha(const gt_alpha_params& p);
std::unique_ptr<Model> make_cosmo(const gt_cosmo_params& p);
std::unique_ptr<Model> make_gravrad(const gt_gravrad_params& p);

struct CustomSpec {
  std::string variable = "x";
  std::string potential;
  std::vector<std::pair<std::string, double>> params;
  bool codata = true;
  double energy = 0.0;
  double mass = 0.0;
  double hbar = 0.0;
  double lo = 0.0;
  double hi = 100.0;
  bool fixed_limits = false;
  double turning_tol = 0.0;
};
std::unique_ptr<Model> make_custom(const CustomSpec& spec);

// Exactly one of the two is set; neither means beta = 0.
struct BetaChoice {
  std::optional<double> beta;
  std::optional<double> beta_tilde;
};

struct RunOptions {
  std::optional<gt_method> method;
  gt_integration_config cfg = gt_integration_config_default();
};

// Echo, beta columns and the report for one beta.
Record evaluate(const Model& model, const BetaChoice& beta, const RunOptions& opts);

// One record per entry in input order, computed in parallel. Failed rows
// carry status "error: ..." and NaN results. Second member counts failures.
std::pair<std::vector<Record>, int> sweep(const Model& model, const std::vector<BetaChoice>& betas,
                                          const RunOptions& opts);

struct GOfEGrid {
  int Z = 92;
  double r1 = 9.3e-15;
  double e_max = 44.8e-13;
  int points = 200;
};
std::vector<Record> figure_g_of_e(const GOfEGrid& grid);

struct FGrid {
  double k1_max = 5.0;
  double k2_max = 10.0;
  int n1 = 50;
  int n2 = 50;
};
std::vector<Record> figure_f_grid(const FGrid& grid);

}  // namespace gup::cli
