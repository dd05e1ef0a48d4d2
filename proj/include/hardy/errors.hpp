#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A value violated a documented precondition (y <= 0, lambda <= 0, empty sample list, ...).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// The recursive kernel update produced a denominator below the guard or a non-finite value.
class ConditioningError : public Error {
public:
  using Error::Error;
};

/// A planar point fell outside the region where the map's embedding lands in the upper half-plane.
class DomainError : public Error {
public:
  using Error::Error;
};

}  // namespace hardy
