#pragma once

#include <stdexcept>
#include <string>

namespace hypergpd {

// Every failure surfaces as one of these; the CLI maps them to exit codes.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define HYPERGPD_ERROR(Name, tag)                                        \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(tag, what) {}         \
  };

HYPERGPD_ERROR(ArgumentError, "argument-error")
HYPERGPD_ERROR(InsufficientData, "insufficient-data")
HYPERGPD_ERROR(ValidationError, "validation-error")
HYPERGPD_ERROR(WindowOverflow, "window-overflow")
HYPERGPD_ERROR(CoverInvalid, "cover-invalid")
HYPERGPD_ERROR(DescentInvalid, "descent-invalid")
HYPERGPD_ERROR(DegenerateInput, "degenerate-input")
HYPERGPD_ERROR(GroebnerCapExceeded, "groebner-cap")

#undef HYPERGPD_ERROR

// Parse failures carry a position so the CLI can report line:column.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("parse-error", what), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace hypergpd
