#pragma once

#include <stdexcept>
#include <string>

namespace tadic {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or configuration (bad prime, k >= d, mismatched variables, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A result would contain digits that the working precision cannot certify.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or memory budget would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A requested mode exists in the mathematics but not in this library.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Always a bug or a falsified theorem.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace tadic
