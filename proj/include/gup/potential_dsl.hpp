#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gup/wkb.hpp"

namespace gup::dsl {

enum class TokenKind { Number, Identifier, Operator, LeftParen, RightParen, Comma };

struct Token {
  TokenKind kind;
  std::string lexeme;
  std::size_t position;  ///< byte offset into the source

  bool operator==(const Token&) const = default;
};

/// Splits `source` into tokens. Numbers are decimal with an optional exponent;
/// a number running straight into a letter ("2x") is rejected. U+2212 is read
/// as '-'. Throws LexError at the first illegal character.
std::vector<Token> tokenize(std::string_view source);

enum class NodeKind { Constant, Variable, Parameter, Negate, Binary, Call };
enum class BinaryOp { Add, Subtract, Multiply, Divide, Power };
enum class Function { Sqrt, Ln, Exp, Sin, Cos, Arctan, Abs };

std::string_view to_string(Function function);

/// Expression tree node. Value type: copying copies the subtree.
struct Expr {
  NodeKind kind = NodeKind::Constant;
  double value = 0.0;  // Constant
  std::string name;    // Variable, Parameter
  BinaryOp op = BinaryOp::Add;
  Function function = Function::Sqrt;
  std::vector<Expr> args;

  bool operator==(const Expr&) const = default;
};

using ParameterTable = std::map<std::string, double, std::less<>>;

/// Recursive-descent parse with precedence ^ > unary minus > * / > + -, where
/// ^ is right-associative. Identifiers equal to `variable` become Variable
/// nodes, any other identifier a Parameter reference.
Expr parse(const std::vector<Token>& tokens, std::string_view variable);

/// tokenize + parse.
Expr parse(std::string_view source, std::string_view variable);

/// Fully parenthesised text that parses back to the same tree.
std::string print(const Expr& expr);

/// Throws UnboundParameterError for a parameter missing from `params` and
/// NonFiniteError(x) when any node evaluates to NaN or infinity.
double evaluate(const Expr& expr, double x, const ParameterTable& params);

/// Replaces every parameter reference by its value from `params`.
/// Throws UnboundParameterError if any is missing.
Expr bind(const Expr& expr, const ParameterTable& params);

/// A bound tree wrapped as a potential for the WKB pipeline.
wkb::Potential make_potential(const Expr& expr, const ParameterTable& params);

/// pi plus the CODATA constants: e, eps0, hbar, G, c, m_alpha, MeV.
ParameterTable codata_parameters();

bool contains_variable(const Expr& expr);

}  // namespace gup::dsl
