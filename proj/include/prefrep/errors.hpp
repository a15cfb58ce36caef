#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace prefrep {

// Base class of all library errors. kind() is a stable machine-readable tag;
// the CLI prints it in error JSON and derives exit codes from the class.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

// An input file, argument, or candidate failed validation. CLI exit code 1.
class ValidationError : public Error {
public:
  using Error::Error;
};

// A configured enumeration limit was exceeded. CLI exit code 2.
class BudgetError : public Error {
public:
  using Error::Error;
};

// The priority relation has a directed cycle where the requested operation
// needs an acyclic one. CLI exit code 3.
class CyclicPriorityError : public Error {
public:
  explicit CyclicPriorityError(const std::string& message)
      : Error("CyclicPriority", message) {}

protected:
  using Error::Error;
};

// Variant of the cyclic-priority error raised by extension analysis when the
// given priority itself is already cyclic.
class CyclicInputError : public CyclicPriorityError {
public:
  explicit CyclicInputError(const std::string& message)
      : CyclicPriorityError("CyclicInput", message) {}
};

class InputError : public ValidationError {
public:
  explicit InputError(const std::string& message)
      : ValidationError("InvalidInput", message) {}
};

class UnknownTupleIdError : public ValidationError {
public:
  explicit UnknownTupleIdError(const std::string& message)
      : ValidationError("UnknownTupleId", message) {}
};

class AsymmetryViolationError : public ValidationError {
public:
  explicit AsymmetryViolationError(const std::string& message)
      : ValidationError("AsymmetryViolation", message) {}
};

class NonConflictingPairError : public ValidationError {
public:
  explicit NonConflictingPairError(const std::string& message)
      : ValidationError("NonConflictingPair", message) {}
};

class NotARepairError : public ValidationError {
public:
  explicit NotARepairError(const std::string& message)
      : ValidationError("NotARepair", message) {}
};

class PriorityNotTotalError : public ValidationError {
public:
  explicit PriorityNotTotalError(const std::string& message)
      : ValidationError("PriorityNotTotal", message) {}
};

class MalformedFormulaError : public ValidationError {
public:
  explicit MalformedFormulaError(const std::string& message)
      : ValidationError("MalformedFormula", message) {}
};

class SyntaxError : public ValidationError {
public:
  explicit SyntaxError(const std::string& message)
      : ValidationError("SyntaxError", message) {}
};

class ArityMismatchError : public ValidationError {
public:
  explicit ArityMismatchError(const std::string& message)
      : ValidationError("ArityMismatch", message) {}
};

class TypeMismatchError : public ValidationError {
public:
  explicit TypeMismatchError(const std::string& message)
      : ValidationError("TypeMismatch", message) {}
};

class FreeVariableError : public ValidationError {
public:
  explicit FreeVariableError(const std::string& message)
      : ValidationError("FreeVariable", message) {}
};

class InstanceTooLargeError : public BudgetError {
public:
  explicit InstanceTooLargeError(const std::string& message)
      : BudgetError("InstanceTooLarge", message) {}
};

class TooManyVariablesError : public BudgetError {
public:
  explicit TooManyVariablesError(const std::string& message)
      : BudgetError("TooManyVariables", message) {}
};

}  // namespace prefrep
