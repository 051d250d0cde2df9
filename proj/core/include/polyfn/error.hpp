#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polyfn {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ring parameters that do not describe a prime power fitting a machine word.
class InvalidRing : public Error {
 public:
  using Error::Error;
};

class NotAUnit : public Error {
 public:
  using Error::Error;
};

// A function table of q^m entries would exceed the configured table limit.
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

// An oracle enumeration would exceed its work budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, double estimated_cost)
      : Error(what), estimated_cost_(estimated_cost) {}

  double estimated_cost() const { return estimated_cost_; }

 private:
  double estimated_cost_;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownGenerator : public Error {
 public:
  using Error::Error;
};

}  // namespace polyfn
