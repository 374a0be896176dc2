#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "gup/error.hpp"
#include "gup/models.hpp"
#include "gup/potential_dsl.hpp"

using namespace gup::dsl;

namespace {

std::vector<std::string> lexemes(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.lexeme);
  return out;
}

double eval_text(std::string_view s, double x = 0.0, const ParameterTable& p = {}) {
  return evaluate(parse(s, "x"), x, p);
}

// Random grammatical source text over x, a parameter k and all functions.
std::string random_source(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
  static const char* functions[] = {"sqrt", "ln", "exp", "sin", "cos", "arctan", "abs"};
  static const char* ops[] = {"+", "-", "*", "/", "^"};
  switch (pick(rng)) {
    case 0: {
      std::uniform_real_distribution<double> v(0.0, 100.0);
      std::uniform_int_distribution<int> form(0, 2);
      const double value = v(rng);
      switch (form(rng)) {
        case 0: return std::to_string(static_cast<int>(value));
        case 1: return std::to_string(value);
        default: {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.6e", value);
          return buf;
        }
      }
    }
    case 1: return "x";
    case 2: return "k";
    case 3: return "-" + random_source(rng, depth - 1);
    case 4: return "(" + random_source(rng, depth - 1) + ")";
    case 5: {
      std::uniform_int_distribution<int> f(0, 6);
      return std::string(functions[f(rng)]) + "(" + random_source(rng, depth - 1) + ")";
    }
    default: {
      std::uniform_int_distribution<int> o(0, 4);
      return random_source(rng, depth - 1) + " " + ops[o(rng)] + " " + random_source(rng, depth - 1);
    }
  }
}

}  // namespace

TEST_CASE("tokenize") {
  const auto t = tokenize("2*x + 1");
  CHECK(lexemes(t) == std::vector<std::string>{"2", "*", "x", "+", "1"});
  CHECK(t[0].kind == TokenKind::Number);
  CHECK(t[2].kind == TokenKind::Identifier);
  CHECK(t[3].position == 4);

  const auto c = tokenize("4*pi*eps0");
  CHECK(c[2].kind == TokenKind::Identifier);
  CHECK(c[2].lexeme == "pi");
  CHECK(c[4].lexeme == "eps0");

  CHECK(lexemes(tokenize("9.3e-15*r")) == std::vector<std::string>{"9.3e-15", "*", "r"});
  CHECK(lexemes(tokenize(".5E+3")) == std::vector<std::string>{".5E+3"});

  SUBCASE("illegal character") {
    try {
      tokenize("2 $ x");
      FAIL("expected LexError");
    } catch (const gup::LexError& e) {
      CHECK(e.position() == 2);
      CHECK(e.offending() == "$");
    }
  }
  SUBCASE("implicit multiplication is rejected") {
    CHECK_THROWS_AS(tokenize("2x"), gup::LexError);
    CHECK_THROWS_AS(tokenize("1.2.3"), gup::LexError);
  }
  SUBCASE("unicode minus") {
    const auto m = tokenize("1 \xE2\x88\x92 x");
    CHECK(m[1].lexeme == "-");
    CHECK(m[2].position == 6);
  }
  SUBCASE("positions strictly increase") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
      const auto tokens = tokenize(random_source(rng, 5));
      for (std::size_t j = 1; j < tokens.size(); ++j) CHECK(tokens[j].position > tokens[j - 1].position);
      for (const auto& tok : tokens) CHECK(!tok.lexeme.empty());
    }
  }
}

TEST_CASE("parse precedence") {
  CHECK(eval_text("2^3^2") == 512.0);
  CHECK(eval_text("-2^2") == -4.0);
  CHECK(eval_text("2^-1") == 0.5);
  CHECK(eval_text("1 - 2 - 3") == -4.0);
  CHECK(eval_text("8 / 4 / 2") == 1.0);
  CHECK(eval_text("1 + 2 * 3") == 7.0);
  CHECK(eval_text("(1 + 2) * 3") == 9.0);
}

TEST_CASE("parse errors") {
  try {
    parse("2*(x+", "x");
    FAIL("expected ParseError");
  } catch (const gup::ParseError& e) {
    CHECK(e.position() == 5);
    CHECK(!e.expected().empty());
  }
  CHECK_THROWS_AS(parse("", "x"), gup::ParseError);
  CHECK_THROWS_AS(parse("1 2", "x"), gup::ParseError);
  CHECK_THROWS_AS(parse("sqrt x", "x"), gup::ParseError);
  CHECK_THROWS_AS(parse("foo(x)", "x"), gup::ParseError);
  CHECK_THROWS_AS(parse("(x))", "x"), gup::ParseError);
  CHECK_THROWS_AS(parse("x,", "x"), gup::ParseError);
}

TEST_CASE("evaluate") {
  CHECK(eval_text("x", 3.0) == 3.0);
  CHECK(eval_text("arctan(sqrt(2))") == doctest::Approx(0.95531661812450927816).epsilon(1e-15));
  CHECK(eval_text("ln(exp(2)) + abs(-1) + sin(0) + cos(0)") == doctest::Approx(4.0).epsilon(1e-15));

  const auto pole = parse("1/(R2 - r)", "r");
  try {
    evaluate(pole, 3.0, {{"R2", 3.0}});
    FAIL("expected NonFiniteError");
  } catch (const gup::NonFiniteError& e) {
    CHECK(e.sample_point() == 3.0);
  }
  CHECK_THROWS_AS(eval_text("sqrt(-1)"), gup::NonFiniteError);
  CHECK_THROWS_AS(eval_text("ln(0)"), gup::NonFiniteError);

  try {
    evaluate(pole, 1.0, {});
    FAIL("expected UnboundParameterError");
  } catch (const gup::UnboundParameterError& e) {
    CHECK(e.name() == "R2");
  }
  CHECK_THROWS_AS(bind(pole, {}), gup::UnboundParameterError);
}

TEST_CASE("Coulomb barrier expression matches the built-in potential") {
  auto params = codata_parameters();
  params["Z"] = 90;
  const auto expr = parse("2*Z*e^2/(4*pi*eps0*r)", "r");
  const gup::models::AlphaDecayParams alpha;
  const auto builtin = gup::models::alpha_potential(alpha);
  for (double r : {9.3e-15, 1e-14, 3e-14, 6.17e-14}) {
    const double v = evaluate(expr, r, params);
    CHECK(std::abs(v - builtin(r)) / builtin(r) <= 1e-12);
  }
}

TEST_CASE("Coulomb barrier through the full pipeline") {
  auto params = codata_parameters();
  params["Z"] = 90;
  gup::models::AlphaDecayParams alpha;
  alpha.energy = 4.2 * gup::constants::mev;
  auto problem = gup::models::alpha_problem(alpha);
  const double builtin = gup::wkb::gamma_classic(problem);
  problem.potential = make_potential(parse("2*Z*e^2/(4*pi*eps0*r)", "r"), params);
  const double from_text = gup::wkb::gamma_classic(problem);
  CHECK(std::abs(from_text - builtin) / builtin <= 1e-8);
}

TEST_CASE("print round trip") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const std::string source = random_source(rng, 6);
    CAPTURE(source);
    const Expr first = parse(source, "x");
    const std::string printed = print(first);
    CAPTURE(printed);
    CHECK(parse(printed, "x") == first);
  }
  CHECK(print(parse("1e-300 * x", "x")) == "(1e-300*x)");
}

TEST_CASE("expressions without the variable are constant") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  int checked = 0;
  for (int i = 0; i < 2000 && checked < 200; ++i) {
    const Expr e = parse(random_source(rng, 5), "x");
    if (contains_variable(e)) continue;
    double first;
    try {
      first = evaluate(e, 0.0, {{"k", 1.5}});
    } catch (const gup::NonFiniteError&) {
      continue;
    }
    ++checked;
    for (int j = 0; j < 5; ++j) CHECK(evaluate(e, u(rng), {{"k", 1.5}}) == first);
  }
  CHECK(checked > 50);
}
