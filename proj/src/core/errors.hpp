#pragma once

#include <stdexcept>
#include <string>

namespace schreier {

// Base of every error thrown by the core. The C API maps each subclass to a
// distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: unknown factor ids, bad experiment configs, invalid JSON.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An argument outside an operation's domain (m < 2, identity where a
// nontrivial element is required, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A size or search cap was reached before the computation could finish.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A provider lacks an oracle that an operation requires.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// A machine check on a constructed object failed.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace schreier
