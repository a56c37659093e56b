#pragma once

#include <stdexcept>
#include <string>

namespace qls {

// Every failure the library reports derives from Error. The CLI maps the
// concrete categories onto exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation
// (invalid magnetic quantum number, negative field, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

class NumericalError : public Error {
public:
  using Error::Error;
};

class InstabilityError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class OutOfRangeError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class DegenerateError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class PrecisionError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class InsufficientDataError : public Error {
public:
  using Error::Error;
};

} // namespace qls
