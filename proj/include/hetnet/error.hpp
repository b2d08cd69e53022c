// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace hetnet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter or invariant violation in a domain object.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Special-function argument outside its domain (or a divergent integral).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerical integration did not reach the requested tolerance.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent configuration file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hetnet
