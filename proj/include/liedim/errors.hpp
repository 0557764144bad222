#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liedim {

// Base of every error raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LIEDIM_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

LIEDIM_DEFINE_ERROR(DimensionMismatch);
LIEDIM_DEFINE_ERROR(NotContained);
LIEDIM_DEFINE_ERROR(NotLieElement);
LIEDIM_DEFINE_ERROR(MalformedExpr);
LIEDIM_DEFINE_ERROR(UnknownGenerator);
LIEDIM_DEFINE_ERROR(EmptyBracket);
LIEDIM_DEFINE_ERROR(OutOfRange);
LIEDIM_DEFINE_ERROR(ContextMismatch);
LIEDIM_DEFINE_ERROR(ClassTooSmall);
LIEDIM_DEFINE_ERROR(NotPreabelian);
LIEDIM_DEFINE_ERROR(BadParameters);

#undef LIEDIM_DEFINE_ERROR

// Parse failure with a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace liedim
