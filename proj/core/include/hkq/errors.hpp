#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hkq {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  NonUnitLambda,
  Overflow,
  NoConventionFound,
  UncalibratedConvention,
  NotLocallyFree,
  DegenerateStart,
  Diverged,
  AllDiverged,
  ConstructionFailed,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` distinguishes the cases.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when the projection exhausts its iteration budget.
class DivergedError : public Error {
 public:
  DivergedError(const std::string& what, std::vector<double> history)
      : Error(ErrorKind::Diverged, what), history_(std::move(history)) {}

  /// Residual norm after each iteration.
  const std::vector<double>& history() const noexcept { return history_; }

 private:
  std::vector<double> history_;
};

}  // namespace hkq
