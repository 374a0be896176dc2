#include <cctype>

#include "gup/error.hpp"
#include "gup/potential_dsl.hpp"

namespace gup::dsl {

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";

std::string offending_at(std::string_view source, std::size_t i) {
  // Report a whole UTF-8 sequence rather than a lone lead byte.
  const auto lead = static_cast<unsigned char>(source[i]);
  std::size_t len = 1;
  if (lead >= 0xF0) len = 4;
  else if (lead >= 0xE0) len = 3;
  else if (lead >= 0xC0) len = 2;
  return std::string(source.substr(i, len));
}

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = source.size();
  while (i < n) {
    const char c = source[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_digit(c) || (c == '.' && i + 1 < n && is_digit(source[i + 1]))) {
      while (i < n && is_digit(source[i])) ++i;
      if (i < n && source[i] == '.') {
        ++i;
        while (i < n && is_digit(source[i])) ++i;
      }
      if (i < n && (source[i] == 'e' || source[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < n && (source[j] == '+' || source[j] == '-')) ++j;
        if (j < n && is_digit(source[j])) {
          i = j;
          while (i < n && is_digit(source[i])) ++i;
        }
      }
      // No implicit multiplication: "2x", "3.5e" and "1.2.3" are errors.
      if (i < n && (is_ident_char(source[i]) || source[i] == '.'))
        throw LexError(i, offending_at(source, i));
      tokens.push_back({TokenKind::Number, std::string(source.substr(start, i - start)), start});
      continue;
    }
    if (is_ident_start(c)) {
      while (i < n && is_ident_char(source[i])) ++i;
      tokens.push_back({TokenKind::Identifier, std::string(source.substr(start, i - start)), start});
      continue;
    }
    switch (c) {
      case '+':
      case '-':
      case '*':
      case '/':
      case '^':
        tokens.push_back({TokenKind::Operator, std::string(1, c), start});
        ++i;
        continue;
      case '(':
        tokens.push_back({TokenKind::LeftParen, "(", start});
        ++i;
        continue;
      case ')':
        tokens.push_back({TokenKind::RightParen, ")", start});
        ++i;
        continue;
      case ',':
        tokens.push_back({TokenKind::Comma, ",", start});
        ++i;
        continue;
      default:
        break;
    }
    if (source.substr(i, kUnicodeMinus.size()) == kUnicodeMinus) {
      tokens.push_back({TokenKind::Operator, "-", start});
      i += kUnicodeMinus.size();
      continue;
    }
    throw LexError(i, offending_at(source, i));
  }
  return tokens;
}

}  // namespace gup::dsl
