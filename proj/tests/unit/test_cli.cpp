#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "cli/cli.hpp"
#include "doctest.h"
#include "gup_tunnel/gup_tunnel.h"
#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = gup::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct Csv {
  std::string comment;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    FAIL("missing column " << name);
    return 0;
  }
  double num(std::size_t row, const std::string& name) const {
    const auto& cell = rows.at(row).at(col(name));
    if (cell == "nan") return std::nan("");
    double v = 0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    REQUIRE(res.ec == std::errc{});
    return v;
  }
};

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, sep);) out.push_back(cell);
  return out;
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::stringstream ss(text);
  std::getline(ss, csv.comment);
  std::string line;
  std::getline(ss, line);
  csv.header = split(line, ',');
  while (std::getline(ss, line)) csv.rows.push_back(split(line, ','));
  return csv;
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("gup_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("cosmo enhancement as JSON") {
  const auto r = run_cli({"cosmo", "--a0sq-eq-G", "--beta", "0.01", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["tool"] == "gup-tunnel");
  CHECK(doc["version"] == gt_version());
  REQUIRE(doc["records"].size() == 1);
  const auto& rec = doc["records"][0];
  CHECK(rec["ratio"].get<double>() == doctest::Approx(1.0407).epsilon(1e-4));
  CHECK(rec["delta"].get<double>() == doctest::Approx(9 * std::pow(std::numbers::pi, 3) / 70).epsilon(1e-12));
  CHECK(rec["method"] == "closed-form");
  CHECK(rec["beta_tilde"].is_null());
}

TEST_CASE("alpha at beta = 0") {
  const auto r = run_cli({"alpha", "--Z", "90", "--r1", "9.3e-15", "--E-mev", "4.2", "--beta", "0",
                          "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 1);
  CHECK(csv.num(0, "ratio") == 1.0);
  CHECK(csv.num(0, "gamma") > 0.0);
  CHECK(csv.rows[0][csv.col("Z")] == "90");
}

TEST_CASE("custom barrier equals the hand-built problem") {
  const auto r = run_cli({"custom", "--var", "r", "--potential", "1/r", "--E", "0.5", "--mass", "1",
                          "--hbar", "1", "--beta", "0.01", "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto csv = parse_csv(r.out);
  const double gamma = csv.num(0, "gamma");

  gt_expr* e = nullptr;
  REQUIRE(gt_expr_parse("1/r", "r", &e, nullptr) == GT_OK);
  gt_problem* p = nullptr;
  REQUIRE(gt_problem_from_expr(e, nullptr, 1.0, 1.0, 0.5, 0.0, 2.0, GT_LIMITS_FIXED, 0.0, &p) == GT_OK);
  gt_report rep;
  REQUIRE(gt_problem_report(p, 0.01, GT_METHOD_EXACT_QUADRATURE, nullptr, &rep) == GT_OK);
  gt_problem_destroy(p);
  gt_expr_destroy(e);

  CHECK(std::abs(gamma - rep.gamma) / rep.gamma <= 1e-8);
  CHECK(std::abs(gamma - std::numbers::pi) / std::numbers::pi <= 1e-8);
  CHECK(std::abs(csv.num(0, "gamma_gup") - rep.gamma_gup) / rep.gamma_gup <= 1e-8);
  CHECK(csv.rows[0][csv.col("method")] == "exact-quadrature");
}

TEST_CASE("custom Coulomb barrier matches the alpha subcommand") {
  const auto builtin = run_cli({"alpha", "--E-mev", "4.2", "--format", "csv"});
  const auto custom = run_cli({"custom", "--var", "r", "--potential", "2*Z*e^2/(4*pi*eps0*r)", "--param",
                               "Z=90", "--E", "6.7291418628e-13", "--mass", "6.6446573357e-27",
                               "--hbar", "1.054571817e-34", "--lo", "9.3e-15", "--hi", "1e-12",
                               "--format", "csv"});
  REQUIRE(builtin.code == 0);
  REQUIRE(custom.code == 0);
  const double a = parse_csv(builtin.out).num(0, "gamma");
  const double c = parse_csv(custom.out).num(0, "gamma");
  CHECK(std::abs(a - c) / a <= 1e-8);
}

TEST_CASE("g(E) figure") {
  const auto r = run_cli({"figure", "--which", "g-of-e", "--points", "100"});
  REQUIRE(r.code == 0);
  const auto csv = parse_csv(r.out);
  CHECK(csv.comment == std::string("# gup-tunnel v") + gt_version());
  CHECK(csv.header == std::vector<std::string>{"E_J", "E_MeV", "r2", "g"});
  REQUIRE(csv.rows.size() == 100);
  double max_g = -INFINITY;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) max_g = std::max(max_g, csv.num(i, "g"));
  CHECK(max_g < 0.0);
  CHECK(csv.num(99, "E_J") == doctest::Approx(44.8e-13).epsilon(1e-15));
}

TEST_CASE("F(k1, k2) figure") {
  const auto r = run_cli({"figure", "--which", "f-grid"});
  REQUIRE(r.code == 0);
  const auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 2500);
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    CHECK(csv.num(i, "F") > 0.0);
    CHECK(csv.num(i, "k1") > 1.0);
    CHECK(csv.num(i, "k2") > csv.num(i, "k1"));
    CHECK(csv.num(i, "k2") <= 10.0);
  }
  const auto spot = parse_csv(run_cli({"figure", "--which", "f-grid", "--n1", "4", "--n2", "8"}).out);
  bool found = false;
  for (std::size_t i = 0; i < spot.rows.size(); ++i) {
    if (spot.num(i, "k1") == 2.0 && spot.num(i, "k2") == 3.0) {
      found = true;
      CHECK(std::abs(spot.num(i, "F") - 0.184306) <= 1e-5);
    }
  }
  CHECK(found);
}

TEST_CASE("figure grid validation") {
  CHECK(run_cli({"figure", "--which", "f-grid", "--k1-max", "1"}).code == 2);
  CHECK(run_cli({"figure", "--which", "f-grid", "--k1-max", "11"}).code == 2);
  CHECK(run_cli({"figure", "--which", "g-of-e", "--points", "0"}).code == 2);
  CHECK(run_cli({"figure", "--which", "g-of-e", "--e-max", "1e-11"}).code == 2);
  CHECK(run_cli({"figure", "--which", "g-of-e", "--format", "json"}).code == 2);
  CHECK(run_cli({"figure", "--which", "nope"}).code == 2);
}

TEST_CASE("sweep") {
  SUBCASE("single zero") {
    const auto r = run_cli({"sweep", "--betas", "0", "cosmo", "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 1);
    CHECK(csv.num(0, "ratio") == 1.0);
    CHECK(csv.rows[0][csv.col("status")] == "ok");
  }
  SUBCASE("cosmo ratios") {
    const auto r = run_cli({"sweep", "cosmo", "--betas", "0.0,0.005,0.01", "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 3);
    CHECK(csv.num(0, "ratio") == 1.0);
    CHECK(csv.num(1, "ratio") == doctest::Approx(1.0201).epsilon(1e-4));
    CHECK(csv.num(2, "ratio") == doctest::Approx(1.0407).epsilon(1e-4));
  }
  SUBCASE("descending input") {
    const auto r = run_cli({"sweep", "cosmo", "--betas", "0.01,0.005"});
    CHECK(r.code == 2);
    CHECK(r.err.find("ascending") != std::string::npos);
    CHECK(run_cli({"sweep", "cosmo", "--betas", "0.01,0.005", "--unordered"}).code == 0);
    CHECK(run_cli({"sweep", "cosmo", "--betas", "-1"}).code == 2);
    CHECK(run_cli({"sweep", "cosmo"}).code == 2);
    CHECK(run_cli({"sweep", "--betas", "0"}).code == 2);
  }
  SUBCASE("gamma_gup non-increasing along a range") {
    const auto r = run_cli({"sweep", "custom", "--potential", "1 - x^2", "--lo", "-2", "--hi", "2",
                            "--E", "0", "--mass", "1", "--hbar", "1", "--beta-range", "0:5:40",
                            "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 40);
    for (std::size_t i = 1; i < csv.rows.size(); ++i)
      CHECK(csv.num(i, "gamma_gup") <= csv.num(i - 1, "gamma_gup"));
  }
  SUBCASE("rows keep input order") {
    const std::vector<std::string> betas{"0.3", "0.01", "0.2", "0", "0.05", "0.1", "0.02", "0.4"};
    std::string list;
    for (const auto& b : betas) list += (list.empty() ? "" : ",") + b;
    const auto r = run_cli({"sweep", "--unordered", "--betas", list, "cosmo", "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == betas.size());
    for (std::size_t i = 0; i < betas.size(); ++i) {
      const auto single = parse_csv(run_cli({"cosmo", "--beta", betas[i], "--format", "csv"}).out);
      CHECK(csv.rows[i][csv.col("ratio")] == single.rows[0][single.col("ratio")]);
    }
  }
  SUBCASE("row-level failures") {
    const auto r = run_cli({"sweep", "--betas", "0,1e6", "cosmo", "--method", "first-order", "--format", "csv"});
    CHECK(r.code == 1);
    const auto csv = parse_csv(r.out);
    REQUIRE(csv.rows.size() == 2);
    CHECK(csv.rows[0][csv.col("status")] == "ok");
    CHECK(csv.rows[1][csv.col("status")].rfind("error: DomainError", 0) == 0);
    CHECK(std::isnan(csv.num(1, "gamma")));
  }
}

TEST_CASE("CSV output is deterministic") {
  const std::vector<std::string> args{"sweep", "--beta-range", "0:0.05:16", "gravrad", "--m", "1e-27",
                                      "--M2", "2e30", "--RH", "3e3", "--k1", "2", "--k2", "3",
                                      "--method", "exact", "--format", "csv"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("JSON and CSV carry identical values") {
  const std::vector<std::vector<std::string>> runs{
      {"alpha", "--E-mev", "5", "--beta-tilde", "0.01"},
      {"cosmo", "--G", "0.7", "--rho-vac", "0.2", "--beta", "0.03", "--method", "exact"},
      {"gravrad", "--m", "1e-27", "--M2", "2e30", "--RH", "3e3", "--k1", "2", "--k2", "3", "--beta", "1e-60"},
      {"custom", "--potential", "k*(1 - x^2)", "--param", "k=2", "--E", "0.5", "--mass", "1", "--hbar",
       "1", "--lo", "-2", "--hi", "2", "--beta", "0.1"}};
  for (auto args : runs) {
    CAPTURE(args[0]);
    auto json_args = args;
    json_args.insert(json_args.end(), {"--format", "json"});
    args.insert(args.end(), {"--format", "csv"});
    const auto csv_run = run_cli(args);
    const auto json_run = run_cli(json_args);
    REQUIRE(csv_run.code == 0);
    REQUIRE(json_run.code == 0);
    const auto csv = parse_csv(csv_run.out);
    const auto rec = nlohmann::ordered_json::parse(json_run.out)["records"][0];
    REQUIRE(rec.size() == csv.header.size());
    std::size_t i = 0;
    for (const auto& [key, value] : rec.items()) {
      CAPTURE(key);
      CHECK(key == csv.header[i]);
      if (value.is_number_float()) {
        CHECK(value.get<double>() == csv.num(0, key));
      } else if (value.is_null()) {
        CHECK(std::isnan(csv.num(0, key)));
      } else if (value.is_number_integer()) {
        CHECK(std::to_string(value.get<long long>()) == csv.rows[0][i]);
      } else {
        CHECK(value.get<std::string>() == csv.rows[0][i]);
      }
      ++i;
    }
  }
}

TEST_CASE("config file") {
  const auto dir = temp_dir();
  const auto cfg = dir / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "# cosmogenesis bundle\n"
         "a0sq-eq-G = true\n"
         "beta = 0.01\n"
         "format = csv\n";
  }
  auto r = run_cli({"cosmo", "--config", cfg.string()});
  REQUIRE(r.code == 0);
  auto csv = parse_csv(r.out);
  CHECK(csv.num(0, "beta") == 0.01);
  CHECK(csv.num(0, "a0") == doctest::Approx(1.0));

  r = run_cli({"cosmo", "--config", cfg.string(), "--beta", "0.005"});
  REQUIRE(r.code == 0);
  CHECK(parse_csv(r.out).num(0, "beta") == 0.005);

  // a flag excluding a file key wins over it
  r = run_cli({"cosmo", "--config", cfg.string(), "--beta-tilde", "0.1"});
  REQUIRE(r.code == 0);
  CHECK(parse_csv(r.out).num(0, "beta_tilde") == 0.1);

  {
    std::ofstream f(dir / "custom.cfg");
    f << "potential = k*(1 - x^2)\nparam = k=2\nE = 0.5\nmass = 1\nhbar = 1\nlo = -2\nhi = 2\n";
  }
  r = run_cli({"custom", "--config", (dir / "custom.cfg").string(), "--param", "k=3", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(parse_csv(r.out).num(0, "param:k") == 3.0);

  {
    std::ofstream f(dir / "bad.cfg");
    f << "no-such-flag = 1\n";
  }
  r = run_cli({"cosmo", "--config", (dir / "bad.cfg").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("no-such-flag") != std::string::npos);
  CHECK(run_cli({"cosmo", "--config", (dir / "missing.cfg").string()}).code == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("exit codes and messages") {
  auto r = run_cli({"alpha", "--Z"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--Z") != std::string::npos);
  r = run_cli({"alpha", "--frobnicate", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--frobnicate") != std::string::npos);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"cosmo", "--beta", "0.1", "--beta-tilde", "0.1"}).code == 2);
  CHECK(run_cli({"cosmo", "--beta", "-0.1"}).code == 2);
  CHECK(run_cli({"cosmo", "--format", "xml"}).code == 2);
  CHECK(run_cli({"gravrad", "--m", "1", "--M2", "1", "--RH", "1", "--k1", "2"}).code == 2);
  CHECK(run_cli({"custom", "--potential", "x", "--E", "0", "--mass", "1", "--hbar", "1", "--method",
                 "closed-form"})
            .code == 2);

  r = run_cli({"alpha", "--E-mev", "40"});
  CHECK(r.code == 1);
  CHECK(r.err.find("DegenerateBarrier") != std::string::npos);
  r = run_cli({"custom", "--potential", "2 $ x", "--E", "0", "--mass", "1", "--hbar", "1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("offset 2") != std::string::npos);
  r = run_cli({"custom", "--potential", "k*x", "--E", "0", "--mass", "1", "--hbar", "1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("'k'") != std::string::npos);

  r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("sweep") != std::string::npos);
  r = run_cli({"--version"});
  CHECK(r.code == 0);
  CHECK(r.out == std::string(gt_version()) + "\n");
}

TEST_CASE("output directory from the environment") {
  const auto dir = temp_dir();
  ::setenv("GUP_TUNNEL_OUTPUT_DIR", dir.c_str(), 1);
  const auto r = run_cli({"cosmo", "--format", "csv", "--output", "out.csv"});
  ::unsetenv("GUP_TUNNEL_OUTPUT_DIR");
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(dir / "out.csv");
  REQUIRE(f.good());
  std::string first;
  std::getline(f, first);
  CHECK(first == std::string("# gup-tunnel v") + gt_version());
  std::filesystem::remove_all(dir);
}
