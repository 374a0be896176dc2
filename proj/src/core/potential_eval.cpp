#include <charconv>
#include <cmath>
#include <memory>

#include "gup/constants.hpp"
#include "gup/error.hpp"
#include "gup/potential_dsl.hpp"

namespace gup::dsl {


namespace {

char op_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Subtract: return '-';
    case BinaryOp::Multiply: return '*';
    case BinaryOp::Divide: return '/';
    case BinaryOp::Power: return '^';
  }
  return '?';
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double apply(Function f, double v) {
  switch (f) {
    case Function::Sqrt: return std::sqrt(v);
    case Function::Ln: return std::log(v);
    case Function::Exp: return std::exp(v);
    case Function::Sin: return std::sin(v);
    case Function::Cos: return std::cos(v);
    case Function::Arctan: return std::atan(v);
    case Function::Abs: return std::abs(v);
  }
  return std::nan("");
}

double apply(BinaryOp op, double a, double b) {
  switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Subtract: return a - b;
    case BinaryOp::Multiply: return a * b;
    case BinaryOp::Divide: return a / b;
    case BinaryOp::Power: return std::pow(a, b);
  }
  return std::nan("");
}

double eval_node(const Expr& e, double x, const ParameterTable& params) {
  double v = 0.0;
  switch (e.kind) {
    case NodeKind::Constant: v = e.value; break;
    case NodeKind::Variable: v = x; break;
    case NodeKind::Parameter: {
      const auto it = params.find(e.name);
      if (it == params.end()) throw UnboundParameterError(e.name);
      v = it->second;
      break;
    }
    case NodeKind::Negate: v = -eval_node(e.args[0], x, params); break;
    case NodeKind::Binary:
      v = apply(e.op, eval_node(e.args[0], x, params), eval_node(e.args[1], x, params));
      break;
    case NodeKind::Call: v = apply(e.function, eval_node(e.args[0], x, params)); break;
  }
  if (!std::isfinite(v)) throw NonFiniteError(x);
  return v;
}

}  // namespace

std::string print(const Expr& e) {
  switch (e.kind) {
    case NodeKind::Constant:
      return e.value < 0.0 ? "(-" + format_number(-e.value) + ")" : format_number(e.value);
    case NodeKind::Variable:
    case NodeKind::Parameter: return e.name;
    case NodeKind::Negate: return "(-" + print(e.args[0]) + ")";
    case NodeKind::Binary:
      return "(" + print(e.args[0]) + op_symbol(e.op) + print(e.args[1]) + ")";
    case NodeKind::Call:
      return std::string(to_string(e.function)) + "(" + print(e.args[0]) + ")";
  }
  return {};
}

double evaluate(const Expr& expr, double x, const ParameterTable& params) {
  return eval_node(expr, x, params);
}

Expr bind(const Expr& expr, const ParameterTable& params) {
  if (expr.kind == NodeKind::Parameter) {
    const auto it = params.find(expr.name);
    if (it == params.end()) throw UnboundParameterError(expr.name);
    Expr c;
    c.kind = NodeKind::Constant;
    c.value = it->second;
    return c;
  }
  Expr out = expr;
  for (auto& child : out.args) child = dsl::bind(child, params);
  return out;
}

wkb::Potential make_potential(const Expr& expr, const ParameterTable& params) {
  auto bound = std::make_shared<const Expr>(dsl::bind(expr, params));
  return [bound](double x) {
    static const ParameterTable kEmpty;
    return eval_node(*bound, x, kEmpty);
  };
}

ParameterTable codata_parameters() {
  return {
      {"pi", constants::pi},
      {"e", constants::elementary_charge},
      {"eps0", constants::vacuum_permittivity},
      {"hbar", constants::hbar},
      {"G", constants::newton_g},
      {"c", constants::speed_of_light},
      {"m_alpha", constants::alpha_particle_mass},
      {"MeV", constants::mev},
  };
}

bool contains_variable(const Expr& expr) {
  if (expr.kind == NodeKind::Variable) return true;
  for (const auto& child : expr.args)
    if (contains_variable(child)) return true;
  return false;
}

}  // namespace gup::dsl
