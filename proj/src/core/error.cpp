#include "gup/error.hpp"

#include <sstream>
#include <utility>

namespace gup {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::NegativeBarrier: return "NegativeBarrier";
    case ErrorCode::NoBarrier: return "NoBarrier";
    case ErrorCode::DegenerateBarrier: return "DegenerateBarrier";
    case ErrorCode::Domain: return "DomainError";
    case ErrorCode::Lex: return "LexError";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::UnboundParameter: return "UnboundParameter";
  }
  return "Unknown";
}

namespace {

std::string format_point(const char* what, double x) {
  std::ostringstream os;
  os.precision(17);
  os << what << x;
  return os.str();
}

}  // namespace

NonFiniteError::NonFiniteError(double x)
    : Error(ErrorCode::NonFinite, format_point("non-finite value at x = ", x)),
      x_(x) {}

BudgetExhaustedError::BudgetExhaustedError(double best_value, double error_estimate)
    : Error(ErrorCode::BudgetExhausted,
            format_point("quadrature did not converge within the subdivision "
                         "budget; best estimate ",
                         best_value) +
                format_point(" +/- ", error_estimate)),
      best_(best_value),
      err_(error_estimate) {}

NegativeBarrierError::NegativeBarrierError(double x, double deficit)
    : Error(ErrorCode::NegativeBarrier,
            format_point("V - E is negative inside the barrier at x = ", x) +
                format_point(" (V - E = ", deficit) + ")"),
      x_(x) {}

LexError::LexError(std::size_t position, std::string offending)
    : Error(ErrorCode::Lex, "unexpected character '" + offending +
                                "' at offset " + std::to_string(position)),
      position_(position),
      offending_(std::move(offending)) {}

namespace {

std::string parse_message(std::size_t position,
                          const std::vector<std::string>& expected,
                          const std::string& found) {
  std::string msg = "parse error at offset " + std::to_string(position) + ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
    msg += expected[i];
  }
  msg += ", found " + found;
  return msg;
}

}  // namespace

ParseError::ParseError(std::size_t position, std::vector<std::string> expected,
                       const std::string& found)
    : Error(ErrorCode::Parse, parse_message(position, expected, found)),
      position_(position),
      expected_(std::move(expected)) {}

UnboundParameterError::UnboundParameterError(std::string name)
    : Error(ErrorCode::UnboundParameter, "unbound parameter '" + name + "'"),
      name_(std::move(name)) {}

}  // namespace gup
