#pragma once

#include <stdexcept>
#include <string>

namespace mbg {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad vertex ids, unreadable files, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A configurable resource guard (enumeration work, solver nodes) was exceeded.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// A strategy or regime was requested outside its hypotheses.
class ApplicabilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace mbg
