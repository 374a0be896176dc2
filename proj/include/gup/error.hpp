#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gup {

enum class ErrorCode {
  InvalidArgument,
  NonFinite,
  BudgetExhausted,
  NegativeBarrier,
  NoBarrier,
  DegenerateBarrier,
  Domain,
  Lex,
  Parse,
  UnboundParameter,
};

const char* to_string(ErrorCode code) noexcept;

/// Base of every error raised by the library. The C API maps `code()` onto
/// its status enum and forwards `what()` verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& message)
      : Error(ErrorCode::InvalidArgument, message) {}
};

class NonFiniteError : public Error {
 public:
  explicit NonFiniteError(double x);
  double sample_point() const noexcept { return x_; }

 private:
  double x_;
};

class BudgetExhaustedError : public Error {
 public:
  BudgetExhaustedError(double best_value, double error_estimate);
  double best_value() const noexcept { return best_; }
  double error_estimate() const noexcept { return err_; }

 private:
  double best_;
  double err_;
};

class NegativeBarrierError : public Error {
 public:
  NegativeBarrierError(double x, double deficit);
  double sample_point() const noexcept { return x_; }

 private:
  double x_;
};

class NoBarrierError : public Error {
 public:
  explicit NoBarrierError(const std::string& message)
      : Error(ErrorCode::NoBarrier, message) {}
};

class DegenerateBarrierError : public Error {
 public:
  explicit DegenerateBarrierError(const std::string& message)
      : Error(ErrorCode::DegenerateBarrier, message) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message)
      : Error(ErrorCode::Domain, message) {}
};

class LexError : public Error {
 public:
  LexError(std::size_t position, std::string offending);
  std::size_t position() const noexcept { return position_; }
  const std::string& offending() const noexcept { return offending_; }

 private:
  std::size_t position_;
  std::string offending_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::vector<std::string> expected,
             const std::string& found);
  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

class UnboundParameterError : public Error {
 public:
  explicit UnboundParameterError(std::string name);
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

}  // namespace gup
