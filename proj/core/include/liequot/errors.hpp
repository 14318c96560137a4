// Exception types shared by every liequot module.
//
// Input problems derive from InputError, exhausted enumeration or search
// budgets derive from BudgetError, and violated internal invariants derive
// from InvariantError. The command-line front end maps these three families
// onto distinct exit codes.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liequot {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class BudgetError : public Error {
 public:
  using Error::Error;
};

class InvariantError : public Error {
 public:
  using Error::Error;
};

// ff
class NonPrime : public InputError {
 public:
  using InputError::InputError;
};
class EvenPrime : public InputError {
 public:
  using InputError::InputError;
};

// matgrp
class CapExceeded : public BudgetError {
 public:
  using BudgetError::BudgetError;
};
class FactorMismatch : public InvariantError {
 public:
  using InvariantError::InvariantError;
};
class NotSubgroup : public InputError {
 public:
  using InputError::InputError;
};
class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

// lietype
class BadQ : public InputError {
 public:
  using InputError::InputError;
};
class MixedDParts : public InputError {
 public:
  using InputError::InputError;
};

// fp
class SyntaxError : public InputError {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};
class UnknownGenerator : public InputError {
 public:
  using InputError::InputError;
};

// phi
class BudgetExceeded : public BudgetError {
 public:
  using BudgetError::BudgetError;
};
class DivisibilityViolation : public InvariantError {
 public:
  using InvariantError::InvariantError;
};
class NotCenterless : public InputError {
 public:
  using InputError::InputError;
};
class Ambiguous : public InvariantError {
 public:
  using InvariantError::InvariantError;
};

}  // namespace liequot
