#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tel {

enum class ErrorKind {
  UnboundVariable,
  SyntaxError,
  UnknownSymbol,
  ZeroConstant,
  ModeMismatch,
  NotQuantifierFree,
  OpenFormula,
  StepLimitExceeded,
  NotExistsRooted,
  NotForallRooted,
  EmptyBlock,
  EmptyWord,
  EmptyWordSet,
  BadIndex,
  MalformedRow,
  NonPositiveTime,
  EmptyFile,
  InvalidArgument,
};

/// Byte range into the input text; attached to parse errors.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  Error(ErrorKind kind, SourceSpan span, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind), span_(span), has_span_(true) {}

  ErrorKind kind() const { return kind_; }
  bool has_span() const { return has_span_; }
  SourceSpan span() const { return span_; }

 private:
  ErrorKind kind_;
  SourceSpan span_{};
  bool has_span_ = false;
};

}  // namespace tel
