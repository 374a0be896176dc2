#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "records.hpp"

namespace gup::cli {
namespace {

const std::map<std::string, Format> kFormats{
    {"csv", Format::Csv}, {"json", Format::Json}, {"human", Format::Human}};

const std::map<std::string, gt_method> kMethods{{"closed-form", GT_METHOD_CLOSED_FORM},
                                                {"first-order", GT_METHOD_FIRST_ORDER},
                                                {"exact", GT_METHOD_EXACT_QUADRATURE}};

struct Common {
  std::string format = "human";
  std::string output;
  std::string config;
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
};

struct BetaInputs {
  std::optional<double> beta;
  std::optional<double> beta_tilde;
};

struct AlphaInputs {
  int Z = 90;
  double r1 = 9.3e-15;
  std::optional<double> energy;
  std::optional<double> energy_mev;
  std::optional<double> mass;
};

struct CosmoInputs {
  double G = 1.0;
  std::optional<double> rho_vac;
  bool a0sq_eq_G = false;
};

struct GravradInputs {
  gt_gravrad_params p = gt_gravrad_params_default();
  std::optional<double> R2, k2, beta2, k1;
};

struct CustomInputs {
  CustomSpec spec;
  std::vector<std::string> params;
  bool no_codata = false;
};

void add_method(CLI::App* app, std::string& method) {
  app->add_option("--method", method, "closed-form | first-order | exact")
      ->check(CLI::IsMember({"closed-form", "first-order", "exact"}));
}

void add_beta(CLI::App* app, BetaInputs& b) {
  auto* beta = app->add_option("--beta", b.beta, "GUP parameter in the model's units (default 0)");
  auto* tilde = app->add_option("--beta-tilde", b.beta_tilde,
                                "dimensionless GUP parameter, beta * p_ref^2");
  beta->excludes(tilde);
}

void add_alpha(CLI::App* app, AlphaInputs& in) {
  app->add_option("--Z", in.Z, "daughter nucleus charge number")->capture_default_str();
  app->add_option("--r1", in.r1, "nuclear radius [m]")->capture_default_str();
  auto* e = app->add_option("--E", in.energy, "alpha kinetic energy [J]");
  auto* mev = app->add_option("--E-mev", in.energy_mev, "alpha kinetic energy [MeV] (default 4.2)");
  e->excludes(mev);
  app->add_option("--mass", in.mass, "alpha mass [kg]");
}

void add_cosmo(CLI::App* app, CosmoInputs& in) {
  app->add_option("--G", in.G, "Newton constant, Planck units")->capture_default_str();
  auto* rho = app->add_option("--rho-vac", in.rho_vac, "vacuum energy density (default 3/(8 pi))");
  auto* flag = app->add_flag("--a0sq-eq-G", in.a0sq_eq_G, "choose rho_vac so that a0^2 = G");
  rho->excludes(flag);
}

void add_gravrad(CLI::App* app, GravradInputs& in) {
  app->add_option("--G", in.p.G, "Newton constant [SI]")->capture_default_str();
  app->add_option("--m", in.p.m, "radiated particle mass [kg]")->required();
  app->add_option("--M2", in.p.M2, "second body mass [kg]")->required();
  app->add_option("--RH", in.p.R_H, "horizon radius [m]")->required();
  auto* r2 = app->add_option("--R2", in.R2, "second body position [m]");
  auto* k2 = app->add_option("--k2", in.k2, "R2 / R_H");
  auto* b2 = app->add_option("--beta2", in.beta2, "outer turning radius [m]");
  auto* k1 = app->add_option("--k1", in.k1, "beta2 / R_H");
  r2->excludes(k2);
  b2->excludes(k1);
  app->add_option("--hbar", in.p.hbar, "reduced Planck constant")->capture_default_str();
}

void add_custom(CLI::App* app, CustomInputs& in) {
  auto& s = in.spec;
  app->add_option("--var", s.variable, "integration variable name")->capture_default_str();
  app->add_option("--potential", s.potential, "V(var) expression")->required();
  app->add_option("--param", in.params, "NAME=VALUE parameter binding (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app->add_flag("--no-codata", in.no_codata, "do not predefine pi, e, eps0, hbar, G, c, m_alpha, MeV");
  app->add_option("--E", s.energy, "particle energy")->required();
  app->add_option("--mass", s.mass, "particle mass")->required();
  app->add_option("--hbar", s.hbar, "reduced Planck constant in the same units")->required();
  app->add_option("--lo", s.lo, "lower end of the turning-point search")->capture_default_str();
  app->add_option("--hi", s.hi, "upper end of the turning-point search")->capture_default_str();
  app->add_flag("--fixed-limits", s.fixed_limits, "integrate over [lo, hi] without searching");
  app->add_option("--turning-tol", s.turning_tol, "turning-point tolerance (default 1e-13 (hi - lo))");
}

std::unique_ptr<Model> build_alpha(const AlphaInputs& in) {
  gt_alpha_params p = gt_alpha_params_default();
  p.Z = in.Z;
  p.r1 = in.r1;
  if (in.energy) p.energy = *in.energy;
  if (in.energy_mev) {
    double mev = 0.0;
    check(gt_constant("MeV", &mev));
    p.energy = *in.energy_mev * mev;
  }
  if (in.mass) p.mass = *in.mass;
  return make_alpha(p);
}

std::unique_ptr<Model> build_cosmo(const CosmoInputs& in) {
  gt_cosmo_params p = gt_cosmo_params_default();
  p.G = in.G;
  if (in.a0sq_eq_G) check(gt_cosmo_params_a0sq_eq_G(in.G, &p));
  if (in.rho_vac) p.rho_vac = *in.rho_vac;
  return make_cosmo(p);
}

std::unique_ptr<Model> build_gravrad(GravradInputs in) {
  auto& p = in.p;
  if (!in.R2 && !in.k2) throw UsageError("gravrad: one of --R2 or --k2 is required");
  if (!in.beta2 && !in.k1) throw UsageError("gravrad: one of --beta2 or --k1 is required");
  p.R2 = in.R2 ? *in.R2 : *in.k2 * p.R_H;
  p.beta2_turn = in.beta2 ? *in.beta2 : *in.k1 * p.R_H;
  return make_gravrad(p);
}

std::unique_ptr<Model> build_custom(CustomInputs in) {
  // Later bindings of the same name win, so flags override the config file.
  std::map<std::string, double> bound;
  std::vector<std::string> order;
  for (const auto& item : in.params) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects NAME=VALUE, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    double value = 0.0;
    if (!CLI::detail::lexical_cast(item.substr(eq + 1), value))
      throw UsageError("--param " + name + ": '" + item.substr(eq + 1) + "' is not a number");
    if (!bound.count(name)) order.push_back(name);
    bound[name] = value;
  }
  for (const auto& name : order) in.spec.params.emplace_back(name, bound[name]);
  in.spec.codata = !in.no_codata;
  return make_custom(in.spec);
}

std::vector<BetaChoice> sweep_betas(const std::vector<double>& betas,
                                    const std::vector<double>& tildes, const std::string& range,
                                    bool unordered) {
  std::vector<BetaChoice> out;
  std::vector<double> values;
  const int given = !betas.empty() + !tildes.empty() + !range.empty();
  if (given != 1) throw UsageError("sweep: give exactly one of --betas, --betas-tilde, --beta-range");
  if (!range.empty()) {
    double lo = 0, hi = 0;
    long n = 0;
    std::vector<std::string> parts;
    std::stringstream ss(range);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3 || !CLI::detail::lexical_cast(parts[0], lo) ||
        !CLI::detail::lexical_cast(parts[1], hi) || !CLI::detail::lexical_cast(parts[2], n) || n < 1)
      throw UsageError("--beta-range expects LO:HI:N with N >= 1, got '" + range + "'");
    for (long i = 0; i < n; ++i) values.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  } else {
    values = betas.empty() ? tildes : betas;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0)) throw UsageError("sweep: beta values must be >= 0");
    if (!unordered && i > 0 && values[i] < values[i - 1])
      throw UsageError("sweep: beta values must be ascending (pass --unordered to allow any order)");
    BetaChoice c;
    if (tildes.empty())
      c.beta = values[i];
    else
      c.beta_tilde = values[i];
    out.push_back(c);
  }
  return out;
}

// ---- config file --------------------------------------------------------

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
    s = s.substr(1, s.size() - 2);
  return s;
}

std::optional<std::string> config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

CLI::Option* find_option(CLI::App* app, const std::string& name) {
  for (; app != nullptr; app = app->get_parent())
    if (auto* opt = app->get_option_no_throw(name)) return opt;
  return nullptr;
}

// Expands `key = value` lines into --key=value tokens placed right after the
// subcommand path, so flags given on the command line take precedence.
std::vector<std::string> inject_config(CLI::App& app, const std::vector<std::string>& args) {
  const auto path = config_path(args);
  if (!path) return args;
  std::ifstream in(*path);
  if (!in) throw UsageError("cannot read config file '" + *path + "'");

  std::size_t split = 0;
  CLI::App* target = &app;
  while (split < args.size() && !args[split].empty() && args[split][0] != '-') {
    auto* sub = target->get_subcommand_no_throw(args[split]);
    if (sub == nullptr) break;
    target = sub;
    ++split;
  }

  std::set<std::string> given;
  for (const auto& a : args) {
    if (a.rfind("--", 0) != 0) continue;
    given.insert(a.substr(0, a.find('=')));
  }

  std::vector<std::string> injected;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(*path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string flag = "--" + key;
    auto* opt = find_option(target, flag);
    if (opt == nullptr || key == "config")
      throw UsageError(*path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");

    const bool repeatable = opt->get_multi_option_policy() == CLI::MultiOptionPolicy::TakeAll &&
                            opt->get_type_size() != 0 && key == "param";
    if (!repeatable && given.count(flag)) continue;
    bool excluded = false;
    for (const auto* other : opt->get_excludes())
      for (const auto& name : other->get_lnames()) excluded = excluded || given.count("--" + name);
    if (excluded) continue;

    if (opt->get_type_size() == 0) {
      bool on = false;
      if (!CLI::detail::lexical_cast(value, on))
        throw UsageError(*path + ":" + std::to_string(lineno) + ": '" + key + "' expects true or false");
      if (on) injected.push_back(flag);
    } else {
      injected.push_back(flag + "=" + value);
    }
  }
  std::vector<std::string> out(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(split));
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), args.begin() + static_cast<std::ptrdiff_t>(split), args.end());
  return out;
}

std::filesystem::path output_path(const std::string& output) {
  std::filesystem::path p(output);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("GUP_TUNNEL_OUTPUT_DIR"); dir != nullptr && *dir != '\0')
      p = std::filesystem::path(dir) / p;
  }
  return p;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"WKB tunnelling probabilities with GUP corrections", "gup-tunnel"};
  app.set_version_flag("--version", std::string(gt_version()));
  app.require_subcommand(1);

  Common common;
  app.add_option("--format", common.format, "csv | json | human")
      ->check(CLI::IsMember({"csv", "json", "human"}));
  app.add_option("--output", common.output, "write to this file instead of standard output");
  app.add_option("--config", common.config, "key = value file mirroring the flags");
  app.add_option("--rel-tol", common.rel_tol, "quadrature relative tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--abs-tol", common.abs_tol, "quadrature absolute tolerance (scaled units)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--max-subdivisions", common.max_subdivisions, "quadrature subdivision budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string method;
  BetaInputs beta;
  AlphaInputs alpha;
  CosmoInputs cosmo;
  GravradInputs gravrad;
  CustomInputs custom;

  auto* alpha_cmd = app.add_subcommand("alpha", "alpha decay through a Coulomb barrier")->fallthrough();
  add_alpha(alpha_cmd, alpha);
  add_beta(alpha_cmd, beta);
  add_method(alpha_cmd, method);

  auto* cosmo_cmd = app.add_subcommand("cosmo", "universe nucleating from nothing")->fallthrough();
  add_cosmo(cosmo_cmd, cosmo);
  add_beta(cosmo_cmd, beta);
  add_method(cosmo_cmd, method);

  auto* gravrad_cmd = app.add_subcommand("gravrad", "radiation tunnelling out of a black hole")->fallthrough();
  add_gravrad(gravrad_cmd, gravrad);
  add_beta(gravrad_cmd, beta);
  add_method(gravrad_cmd, method);

  auto* custom_cmd = app.add_subcommand("custom", "user-defined barrier V(x)")->fallthrough();
  add_custom(custom_cmd, custom);
  add_beta(custom_cmd, beta);
  add_method(custom_cmd, method);

  std::string which;
  GOfEGrid g_grid;
  FGrid f_grid;
  auto* figure_cmd = app.add_subcommand("figure", "figure data as CSV")->fallthrough();
  figure_cmd->add_option("--which", which, "g-of-e | f-grid")
      ->required()
      ->check(CLI::IsMember({"g-of-e", "f-grid"}));
  figure_cmd->add_option("--Z", g_grid.Z, "g-of-e: daughter charge number")->capture_default_str();
  figure_cmd->add_option("--r1", g_grid.r1, "g-of-e: nuclear radius [m]")->capture_default_str();
  figure_cmd->add_option("--e-max", g_grid.e_max, "g-of-e: top of the energy grid [J]")->capture_default_str();
  figure_cmd->add_option("--points", g_grid.points, "g-of-e: grid size")->capture_default_str();
  figure_cmd->add_option("--k1-max", f_grid.k1_max, "f-grid: largest k1")->capture_default_str();
  figure_cmd->add_option("--k2-max", f_grid.k2_max, "f-grid: largest k2")->capture_default_str();
  figure_cmd->add_option("--n1", f_grid.n1, "f-grid: k1 steps")->capture_default_str();
  figure_cmd->add_option("--n2", f_grid.n2, "f-grid: k2 steps per k1")->capture_default_str();

  std::vector<double> betas, betas_tilde;
  std::string beta_range;
  bool unordered = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "one model over a list of beta values")->fallthrough();
  sweep_cmd->require_subcommand(1);
  sweep_cmd->add_option("--betas", betas, "comma-separated beta values")->delimiter(',');
  sweep_cmd->add_option("--betas-tilde", betas_tilde, "comma-separated dimensionless values")->delimiter(',');
  sweep_cmd->add_option("--beta-range", beta_range, "LO:HI:N, N evenly spaced beta values");
  sweep_cmd->add_flag("--unordered", unordered, "allow beta values in any order");
  auto* sweep_alpha = sweep_cmd->add_subcommand("alpha", "alpha decay")->fallthrough();
  add_alpha(sweep_alpha, alpha);
  add_method(sweep_alpha, method);
  auto* sweep_cosmo = sweep_cmd->add_subcommand("cosmo", "cosmogenesis")->fallthrough();
  add_cosmo(sweep_cosmo, cosmo);
  add_method(sweep_cosmo, method);
  auto* sweep_gravrad = sweep_cmd->add_subcommand("gravrad", "gravitational radiation")->fallthrough();
  add_gravrad(sweep_gravrad, gravrad);
  add_method(sweep_gravrad, method);
  auto* sweep_custom = sweep_cmd->add_subcommand("custom", "user-defined barrier")->fallthrough();
  add_custom(sweep_custom, custom);
  add_method(sweep_custom, method);

  try {
    auto argv = inject_config(app, args);
    std::reverse(argv.begin(), argv.end());  // CLI11 consumes from the back
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << gt_version() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "gup-tunnel: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "gup-tunnel: " << e.what() << '\n';
    return 2;
  }

  try {
    RunOptions opts;
    if (!method.empty()) opts.method = kMethods.at(method);
    opts.cfg.rel_tol = common.rel_tol;
    opts.cfg.abs_tol = common.abs_tol;
    opts.cfg.max_subdivisions = common.max_subdivisions;
    Format format = kFormats.at(common.format);

    std::vector<Record> records;
    int failures = 0;
    auto pick = [&](CLI::App* a, CLI::App* c, CLI::App* g, CLI::App* u) -> std::unique_ptr<Model> {
      if (a->parsed()) return build_alpha(alpha);
      if (c->parsed()) return build_cosmo(cosmo);
      if (g->parsed()) return build_gravrad(gravrad);
      if (u->parsed()) {
        if (opts.method == GT_METHOD_CLOSED_FORM)
          throw UsageError("custom: closed-form is unavailable; use exact or first-order");
        return build_custom(custom);
      }
      return nullptr;
    };

    if (figure_cmd->parsed()) {
      if (app.count("--format") > 0 && format != Format::Csv)
        throw UsageError("figure: only --format csv is supported");
      format = Format::Csv;
      records = which == "g-of-e" ? figure_g_of_e(g_grid) : figure_f_grid(f_grid);
    } else if (sweep_cmd->parsed()) {
      const auto choices = sweep_betas(betas, betas_tilde, beta_range, unordered);
      const auto model = pick(sweep_alpha, sweep_cosmo, sweep_gravrad, sweep_custom);
      std::tie(records, failures) = sweep(*model, choices, opts);
    } else {
      const auto model = pick(alpha_cmd, cosmo_cmd, gravrad_cmd, custom_cmd);
      records.push_back(evaluate(*model, {beta.beta, beta.beta_tilde}, opts));
    }

    if (common.output.empty()) {
      write(out, format, records);
    } else {
      const auto path = output_path(common.output);
      std::ofstream file(path);
      if (!file) throw ComputeError(GT_ERR_INVALID_ARGUMENT, "cannot open '" + path.string() + "' for writing");
      write(file, format, records);
      if (!file) throw ComputeError(GT_ERR_INVALID_ARGUMENT, "failed writing '" + path.string() + "'");
    }
    if (failures > 0) {
      err << "gup-tunnel: " << failures << " of " << records.size() << " sweep rows failed\n";
      return 1;
    }
    return 0;
  } catch (const UsageError& e) {
    err << "gup-tunnel: " << e.what() << '\n';
    return 2;
  } catch (const ComputeError& e) {
    err << "gup-tunnel: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace gup::cli
