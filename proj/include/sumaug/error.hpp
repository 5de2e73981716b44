// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace sumaug {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration value or combination (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed or invariant-violating input data (CLI exit code 3).
class DataError : public Error {
 public:
  using Error::Error;
};

/// External provider process failed or broke the wire contract (CLI exit code 4).
class ProviderError : public Error {
 public:
  using Error::Error;
};

}  // namespace sumaug
