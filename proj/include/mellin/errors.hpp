#pragma once

#include <stdexcept>
#include <string>

namespace mellin {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument sits on (or within tolerance of) a Gamma pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Pole of order >= 2, or a non-transverse 2-D intersection.
class UnsupportedPoleError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The two Bromwich discretizations disagree.
class UnreliableInversionError : public Error {
 public:
  using Error::Error;
};

class BranchCrossingError : public Error {
 public:
  using Error::Error;
};

class NoCompatibleConeError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace mellin
