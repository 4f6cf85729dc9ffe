#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace latkit {

enum class ErrorKind {
  Syntax,
  Cycle,
  NotALattice,
  NoBottom,
  TooLarge,
  UnknownElement,
  MixedLattice,
  NotAnIdeal,
  FullLattice,
  ZeroElement,
  TrivialLattice,
  NotDecomposable,
  UnknownTheorem,
  BadSpec,
  Overflow,
  CapExceeded,
  BadArgument,
  Parse,
  TypeMismatch,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::Cycle: return "CycleError";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::NoBottom: return "NoBottom";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::MixedLattice: return "MixedLattice";
    case ErrorKind::NotAnIdeal: return "NotAnIdeal";
    case ErrorKind::FullLattice: return "FullLattice";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::TrivialLattice: return "TrivialLattice";
    case ErrorKind::NotDecomposable: return "NotDecomposable";
    case ErrorKind::UnknownTheorem: return "UnknownTheorem";
    case ErrorKind::BadSpec: return "BadSpec";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::BadArgument: return "BadArgument";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
  }
  return "Error";
}

/// Every failure raised by latkit. The kind is what callers dispatch on; the
/// message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when some pair of elements has no unique glb or lub.
class NotALatticeError : public Error {
 public:
  NotALatticeError(std::string first, std::string second, const std::string& what)
      : Error(ErrorKind::NotALattice, "pair (" + first + ", " + second + ") has no " + what),
        first_(std::move(first)),
        second_(std::move(second)) {}

  const std::string& first() const noexcept { return first_; }
  const std::string& second() const noexcept { return second_; }

 private:
  std::string first_;
  std::string second_;
};

/// Expression errors carry the 1-based column where parsing stopped.
class ParseError : public Error {
 public:
  ParseError(std::size_t column, const std::string& message)
      : Error(ErrorKind::Parse, "column " + std::to_string(column) + ": " + message), column_(column) {}

  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

}  // namespace latkit
