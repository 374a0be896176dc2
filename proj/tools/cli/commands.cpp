#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace gup::cli {

void check(gt_status status) {
  if (status != GT_OK)
    throw ComputeError(status, std::string(gt_status_name(status)) + ": " + gt_last_error());
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class Fn>
double get(Fn&& fn) {
  double out = 0.0;
  check(fn(&out));
  return out;
}

struct ExprDeleter {
  void operator()(gt_expr* e) const { gt_expr_destroy(e); }
};
struct ParamsDeleter {
  void operator()(gt_params* p) const { gt_params_destroy(p); }
};
struct ProblemDeleter {
  void operator()(gt_problem* p) const { gt_problem_destroy(p); }
};
using ProblemPtr = std::unique_ptr<gt_problem, ProblemDeleter>;

// Closed form from the model, otherwise the generic pipeline on its barrier.
template <class ClosedReport, class MakeProblem>
gt_report model_report(double beta, gt_method method, const gt_integration_config& cfg,
                       ClosedReport&& closed, MakeProblem&& make_problem) {
  gt_report r{};
  if (method == GT_METHOD_CLOSED_FORM) {
    check(closed(beta, &r));
    return r;
  }
  gt_problem* raw = nullptr;
  check(make_problem(&raw));
  ProblemPtr problem(raw);
  check(gt_problem_report(problem.get(), beta, method, &cfg, &r));
  return r;
}

class AlphaModel final : public Model {
 public:
  explicit AlphaModel(const gt_alpha_params& p) : p_(p) {
    r2_ = get([&](double* o) { return gt_alpha_r2(&p_, o); });
  }
  void echo(Record& r) const override {
    double mev = 0.0;
    check(gt_constant("MeV", &mev));
    r.add("Z", std::int64_t{p_.Z});
    r.add("r1", p_.r1);
    r.add("E_J", p_.energy);
    r.add("E_MeV", p_.energy / mev);
    r.add("r2", r2_);
    r.add("mass", p_.mass);
  }
  double reference_momentum() const override {
    return get([&](double* o) { return gt_alpha_reference_momentum(&p_, o); });
  }
  gt_report report(double beta, gt_method method, const gt_integration_config& cfg) const override {
    return model_report(
        beta, method, cfg, [&](double b, gt_report* r) { return gt_alpha_report(&p_, b, r); },
        [&](gt_problem** out) { return gt_problem_alpha(&p_, out); });
  }
  gt_method default_method() const override { return GT_METHOD_CLOSED_FORM; }

 private:
  gt_alpha_params p_;
  double r2_;
};

class CosmoModel final : public Model {
 public:
  explicit CosmoModel(const gt_cosmo_params& p) : p_(p) {
    a0_ = get([&](double* o) { return gt_cosmo_a0(&p_, o); });
    delta_ = get([&](double* o) { return gt_cosmo_delta(&p_, o); });
  }
  void echo(Record& r) const override {
    r.add("G", p_.G);
    r.add("rho_vac", p_.rho_vac);
    r.add("a0", a0_);
    r.add("delta", delta_);
  }
  double reference_momentum() const override {
    return get([&](double* o) { return gt_cosmo_reference_momentum(&p_, o); });
  }
  gt_report report(double beta, gt_method method, const gt_integration_config& cfg) const override {
    return model_report(
        beta, method, cfg, [&](double b, gt_report* r) { return gt_cosmo_report(&p_, b, r); },
        [&](gt_problem** out) { return gt_problem_cosmo(&p_, out); });
  }
  gt_method default_method() const override { return GT_METHOD_CLOSED_FORM; }

 private:
  gt_cosmo_params p_;
  double a0_;
  double delta_;
};

class GravradModel final : public Model {
 public:
  explicit GravradModel(const gt_gravrad_params& p) : p_(p) {
    energy_ = get([&](double* o) { return gt_gravrad_energy(&p_, o); });
    F_ = get([&](double* o) { return gt_gravrad_F(p_.beta2_turn / p_.R_H, p_.R2 / p_.R_H, o); });
  }
  void echo(Record& r) const override {
    r.add("G", p_.G);
    r.add("m", p_.m);
    r.add("M2", p_.M2);
    r.add("R_H", p_.R_H);
    r.add("R2", p_.R2);
    r.add("beta2", p_.beta2_turn);
    r.add("k1", p_.beta2_turn / p_.R_H);
    r.add("k2", p_.R2 / p_.R_H);
    r.add("hbar", p_.hbar);
    r.add("E", energy_);
    r.add("F", F_);
  }
  double reference_momentum() const override {
    return get([&](double* o) { return gt_gravrad_reference_momentum(&p_, o); });
  }
  gt_report report(double beta, gt_method method, const gt_integration_config& cfg) const override {
    return model_report(
        beta, method, cfg, [&](double b, gt_report* r) { return gt_gravrad_report(&p_, b, r); },
        [&](gt_problem** out) { return gt_problem_gravrad(&p_, out); });
  }
  gt_method default_method() const override { return GT_METHOD_CLOSED_FORM; }

 private:
  gt_gravrad_params p_;
  double energy_;
  double F_;
};

class CustomModel final : public Model {
 public:
  explicit CustomModel(const CustomSpec& spec) : spec_(spec) {
    gt_params* params = nullptr;
    check(gt_params_create(spec.codata ? 1 : 0, &params));
    std::unique_ptr<gt_params, ParamsDeleter> owned_params(params);
    for (const auto& [name, value] : spec.params) check(gt_params_set(params, name.c_str(), value));

    gt_expr* expr = nullptr;
    check(gt_expr_parse(spec.potential.c_str(), spec.variable.c_str(), &expr, nullptr));
    std::unique_ptr<gt_expr, ExprDeleter> owned_expr(expr);

    gt_problem* problem = nullptr;
    check(gt_problem_from_expr(expr, params, spec.mass, spec.hbar, spec.energy, spec.lo, spec.hi,
                               spec.fixed_limits ? GT_LIMITS_FIXED : GT_LIMITS_SEARCH,
                               spec.turning_tol, &problem));
    problem_.reset(problem);
    check(gt_problem_limits(problem, &x_lo_, &x_hi_));
  }
  void echo(Record& r) const override {
    r.add("variable", spec_.variable);
    r.add("potential", spec_.potential);
    for (const auto& [name, value] : spec_.params) r.add("param:" + name, value);
    r.add("E", spec_.energy);
    r.add("mass", spec_.mass);
    r.add("hbar", spec_.hbar);
    r.add("x_lo", x_lo_);
    r.add("x_hi", x_hi_);
  }
  double reference_momentum() const override {
    return get([&](double* o) { return gt_problem_reference_momentum(problem_.get(), o); });
  }
  gt_report report(double beta, gt_method method, const gt_integration_config& cfg) const override {
    gt_report r{};
    check(gt_problem_report(problem_.get(), beta, method, &cfg, &r));
    return r;
  }
  gt_method default_method() const override { return GT_METHOD_EXACT_QUADRATURE; }

 private:
  CustomSpec spec_;
  ProblemPtr problem_;
  double x_lo_ = 0.0;
  double x_hi_ = 0.0;
};

void add_report(Record& r, const gt_report& rep) {
  r.add("gamma", rep.gamma);
  r.add("gamma_gup", rep.gamma_gup);
  r.add("delta_gamma", rep.delta_gamma);
  r.add("log_T", rep.log_T);
  r.add("log_T_gup", rep.log_T_gup);
  r.add("T", rep.T);
  r.add("T_gup", rep.T_gup);
  r.add("ratio", rep.ratio_gup);
  r.add("method", std::string(gt_method_name(rep.method)));
  r.add("version", std::string(gt_version()));
}

// beta and beta_tilde columns; returns the physical beta.
double resolve_beta(const Model& model, const BetaChoice& choice, Record& r) {
  double beta = 0.0;
  double tilde = kNaN;
  if (choice.beta_tilde) {
    tilde = *choice.beta_tilde;
    if (!(tilde >= 0.0)) throw UsageError("--beta-tilde must be >= 0");
    const double p_ref = model.reference_momentum();
    beta = tilde == 0.0 ? 0.0 : tilde / (p_ref * p_ref);
  } else if (choice.beta) {
    beta = *choice.beta;
    if (!(beta >= 0.0)) throw UsageError("--beta must be >= 0");
  }
  r.add("beta", beta);
  r.add("beta_tilde", tilde);
  return beta;
}

}  // namespace

std::unique_ptr<Model> make_alpha(const gt_alpha_params& p) { return std::make_unique<AlphaModel>(p); }
std::unique_ptr<Model> make_cosmo(const gt_cosmo_params& p) { return std::make_unique<CosmoModel>(p); }
std::unique_ptr<Model> make_gravrad(const gt_gravrad_params& p) {
  return std::make_unique<GravradModel>(p);
}
std::unique_ptr<Model> make_custom(const CustomSpec& spec) { return std::make_unique<CustomModel>(spec); }

Record evaluate(const Model& model, const BetaChoice& choice, const RunOptions& opts) {
  Record r;
  model.echo(r);
  const double beta = resolve_beta(model, choice, r);
  add_report(r, model.report(beta, opts.method.value_or(model.default_method()), opts.cfg));
  return r;
}

std::pair<std::vector<Record>, int> sweep(const Model& model, const std::vector<BetaChoice>& betas,
                                          const RunOptions& opts) {
  std::vector<Record> rows(betas.size());
  std::atomic<std::size_t> next{0};
  std::atomic<int> failures{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < betas.size(); i = next++) {
      Record r;
      try {
        r = evaluate(model, betas[i], opts);
        r.fields.insert(r.fields.end() - 1, {"status", std::string("ok")});
      } catch (const std::exception& e) {
        ++failures;
        r = Record{};
        model.echo(r);
        r.add("beta", betas[i].beta.value_or(kNaN));
        r.add("beta_tilde", betas[i].beta_tilde.value_or(kNaN));
        for (const char* name :
             {"gamma", "gamma_gup", "delta_gamma", "log_T", "log_T_gup", "T", "T_gup", "ratio"})
          r.add(name, kNaN);
        r.add("method", std::string(gt_method_name(opts.method.value_or(model.default_method()))));
        r.add("status", std::string("error: ") + e.what());
        r.add("version", std::string(gt_version()));
      }
      rows[i] = std::move(r);
    }
  };
  const std::size_t n_threads =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(betas.size(), 1));
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return {std::move(rows), failures.load()};
}

std::vector<Record> figure_g_of_e(const GOfEGrid& grid) {
  if (grid.points < 1) throw UsageError("--points must be >= 1");
  if (!(grid.e_max > 0.0) || !std::isfinite(grid.e_max)) throw UsageError("--e-max must be > 0");
  if (!(grid.r1 > 0.0)) throw UsageError("--r1 must be > 0");
  gt_alpha_params p = gt_alpha_params_default();
  p.Z = grid.Z;
  p.r1 = grid.r1;
  p.energy = grid.e_max;
  double r2 = 0.0;
  if (gt_alpha_r2(&p, &r2) != GT_OK)
    throw UsageError(std::string("--e-max: ") + gt_last_error());
  double mev = 0.0;
  check(gt_constant("MeV", &mev));

  std::vector<Record> rows;
  rows.reserve(grid.points);
  for (int i = 1; i <= grid.points; ++i) {
    p.energy = grid.e_max * i / grid.points;
    Record r;
    r.add("E_J", p.energy);
    r.add("E_MeV", p.energy / mev);
    r.add("r2", get([&](double* o) { return gt_alpha_r2(&p, o); }));
    r.add("g", get([&](double* o) { return gt_alpha_g(&p, o); }));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<Record> figure_f_grid(const FGrid& grid) {
  if (grid.n1 < 1 || grid.n2 < 1) throw UsageError("--n1 and --n2 must be >= 1");
  if (!(grid.k1_max > 1.0)) throw UsageError("--k1-max must be > 1");
  if (!(grid.k2_max > grid.k1_max)) throw UsageError("--k2-max must exceed --k1-max");
  std::vector<Record> rows;
  rows.reserve(static_cast<std::size_t>(grid.n1) * grid.n2);
  for (int i = 1; i <= grid.n1; ++i) {
    const double k1 = 1.0 + (grid.k1_max - 1.0) * i / grid.n1;
    for (int j = 1; j <= grid.n2; ++j) {
      const double k2 = k1 + (grid.k2_max - k1) * j / grid.n2;
      Record r;
      r.add("k1", k1);
      r.add("k2", k2);
      r.add("F", get([&](double* o) { return gt_gravrad_F(k1, k2, o); }));
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

}  // namespace gup::cli
