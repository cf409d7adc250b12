#pragma once

#include <stdexcept>
#include <string>

namespace polykit {

enum class ErrorKind {
  Syntax,
  UnresolvedReference,
  DimensionMismatch,
  NotComposable,
  NotParallel,
  InvalidMorphism,
  Inconclusive,  // equality search ran out of budget
  BudgetExceeded,
  ContractViolation,
  Verification,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace polykit
