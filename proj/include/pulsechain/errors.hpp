#pragma once

#include <stdexcept>
#include <string>

namespace pulsechain {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spin count out of range, or two objects of incompatible size.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Spin index outside 1..N, or a repeated index where distinct ones are required.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Malformed argument (unsorted samples, bad grid, invalid router sites, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// The kick protocol is not defined for the requested chain.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// A density matrix failed its physicality checks.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace pulsechain
