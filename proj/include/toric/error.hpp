#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toric {

enum class ErrorKind {
  NonPrimeCharacteristic,
  ReducibleModulus,
  DegreeMismatch,
  FieldTooLarge,
  DivisionByZero,
  EmptyInput,
  CoordinateOverflow,
  DegeneratePolygon,
  NotApplicable,
  BudgetExceeded,
  PolygonTooLargeForField,
  SupportOutsidePolygon,
  TooLarge,
  FieldTooSmall,
  HypothesisViolated,
  NoDecomposition,
  ParseError,
  InvariantViolation,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace toric
