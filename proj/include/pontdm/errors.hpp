// Copyright 2026 pontdm contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>

namespace pontdm {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid build parameters or an inconsistent instance.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Wavelength, time slot or attachment index outside its domain.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Entity name not present in the topology.
class UnknownEntityError : public Error {
 public:
  using Error::Error;
};

// Malformed config file, table file or traffic spec.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Assignment table rejected by the validator.
class InvalidTableError : public Error {
 public:
  using Error::Error;
};

}  // namespace pontdm
