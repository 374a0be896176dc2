#include <array>
#include <charconv>
#include <utility>

#include "gup/error.hpp"
#include "gup/potential_dsl.hpp"

namespace gup::dsl {

namespace {

struct FunctionName {
  std::string_view name;
  Function function;
};

constexpr std::array<FunctionName, 7> kFunctions = {{
    {"sqrt", Function::Sqrt},
    {"ln", Function::Ln},
    {"exp", Function::Exp},
    {"sin", Function::Sin},
    {"cos", Function::Cos},
    {"arctan", Function::Arctan},
    {"abs", Function::Abs},
}};

const FunctionName* find_function(std::string_view name) {
  for (const auto& f : kFunctions)
    if (f.name == name) return &f;
  return nullptr;
}

Expr binary(BinaryOp op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = NodeKind::Binary;
  e.op = op;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  return e;
}

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, std::string_view variable)
      : tokens_(tokens), variable_(variable) {
    if (!tokens.empty()) end_ = tokens.back().position + tokens.back().lexeme.size();
  }

  Expr parse_all() {
    Expr e = parse_sum();
    if (!at_end()) fail({"operator", "end of input"});
    return e;
  }

 private:
  bool at_end() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }

  bool peek_operator(char op) const {
    return !at_end() && peek().kind == TokenKind::Operator && peek().lexeme[0] == op;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    if (at_end()) throw ParseError(end_, std::move(expected), "end of input");
    throw ParseError(peek().position, std::move(expected), "'" + peek().lexeme + "'");
  }

  Expr parse_sum() {
    Expr lhs = parse_product();
    while (peek_operator('+') || peek_operator('-')) {
      const BinaryOp op = tokens_[pos_++].lexeme[0] == '+' ? BinaryOp::Add : BinaryOp::Subtract;
      lhs = binary(op, std::move(lhs), parse_product());
    }
    return lhs;
  }

  Expr parse_product() {
    Expr lhs = parse_unary();
    while (peek_operator('*') || peek_operator('/')) {
      const BinaryOp op = tokens_[pos_++].lexeme[0] == '*' ? BinaryOp::Multiply : BinaryOp::Divide;
      lhs = binary(op, std::move(lhs), parse_unary());
    }
    return lhs;
  }

  Expr parse_unary() {
    if (peek_operator('-')) {
      ++pos_;
      Expr e;
      e.kind = NodeKind::Negate;
      e.args.push_back(parse_unary());
      return e;
    }
    return parse_power();
  }

  // The exponent is a unary so that 2^-1 parses and 2^3^2 groups to the right.
  Expr parse_power() {
    Expr base = parse_primary();
    if (peek_operator('^')) {
      ++pos_;
      return binary(BinaryOp::Power, std::move(base), parse_unary());
    }
    return base;
  }

  Expr parse_primary() {
    if (at_end()) fail({"number", "identifier", "'('", "'-'"});
    const Token& tok = peek();
    switch (tok.kind) {
      case TokenKind::Number: {
        ++pos_;
        Expr e;
        e.kind = NodeKind::Constant;
        const char* first = tok.lexeme.data();
        const char* last = first + tok.lexeme.size();
        const auto res = std::from_chars(first, last, e.value);
        if (res.ec != std::errc() || res.ptr != last)
          throw ParseError(tok.position, {"representable number"}, "'" + tok.lexeme + "'");
        return e;
      }
      case TokenKind::Identifier: {
        ++pos_;
        if (const FunctionName* fn = find_function(tok.lexeme)) {
          expect(TokenKind::LeftParen, "'('");
          Expr e;
          e.kind = NodeKind::Call;
          e.function = fn->function;
          e.args.push_back(parse_sum());
          expect(TokenKind::RightParen, "')'");
          return e;
        }
        if (!at_end() && peek().kind == TokenKind::LeftParen) {
          std::vector<std::string> known;
          for (const auto& f : kFunctions) known.emplace_back(f.name);
          throw ParseError(tok.position, std::move(known), "'" + tok.lexeme + "'");
        }
        Expr e;
        e.kind = tok.lexeme == variable_ ? NodeKind::Variable : NodeKind::Parameter;
        e.name = tok.lexeme;
        return e;
      }
      case TokenKind::LeftParen: {
        ++pos_;
        Expr e = parse_sum();
        expect(TokenKind::RightParen, "')'");
        return e;
      }
      default:
        fail({"number", "identifier", "'('", "'-'"});
    }
  }

  void expect(TokenKind kind, const char* what) {
    if (at_end() || peek().kind != kind) fail({what});
    ++pos_;
  }

  const std::vector<Token>& tokens_;
  std::string_view variable_;
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
};

}  // namespace

Expr parse(const std::vector<Token>& tokens, std::string_view variable) {
  return Parser(tokens, variable).parse_all();
}

Expr parse(std::string_view source, std::string_view variable) {
  const auto tokens = tokenize(source);
  if (tokens.empty()) throw ParseError(0, {"expression"}, "end of input");
  return parse(tokens, variable);
}

std::string_view to_string(Function f) {
  for (const auto& entry : kFunctions)
    if (entry.function == f) return entry.name;
  return "?";
}

}  // namespace gup::dsl
