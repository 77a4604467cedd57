#pragma once

#include <stdexcept>
#include <string>

namespace circdist {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DomainMismatch : public Error {
 public:
  explicit DomainMismatch(const std::string& msg) : Error(msg) {}
};

class OrderUnsupported : public Error {
 public:
  explicit OrderUnsupported(const std::string& msg) : Error(msg) {}
};

class ConvergenceFailure : public Error {
 public:
  explicit ConvergenceFailure(const std::string& msg) : Error(msg) {}
};

class DegenerateMatrix : public Error {
 public:
  explicit DegenerateMatrix(const std::string& msg) : Error(msg) {}
};

class BadK : public Error {
 public:
  explicit BadK(const std::string& msg) : Error(msg) {}
};

class ConditionFailure : public Error {
 public:
  explicit ConditionFailure(const std::string& msg) : Error(msg) {}
};

class MeanNotZero : public Error {
 public:
  explicit MeanNotZero(const std::string& msg) : Error(msg) {}
};

class QuadratureFailure : public Error {
 public:
  explicit QuadratureFailure(const std::string& msg) : Error(msg) {}
};

class SignConditionViolated : public Error {
 public:
  explicit SignConditionViolated(const std::string& msg) : Error(msg) {}
};

class NonConvergentTail : public Error {
 public:
  explicit NonConvergentTail(const std::string& msg) : Error(msg) {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& msg) : Error(msg) {}
};

class StepBoundViolated : public Error {
 public:
  explicit StepBoundViolated(const std::string& msg) : Error(msg) {}
};

class NotStabilizer : public Error {
 public:
  explicit NotStabilizer(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace circdist
