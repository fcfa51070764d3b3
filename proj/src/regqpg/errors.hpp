// Copyright 2026 The RegQPG Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file errors.hpp
 * Exception hierarchy used by the core library. The C API maps each type
 * onto a status code.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace regqpg {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A gate referencing a qubit outside the register, or a malformed gate.
class InvalidGateError : public Error {
  public:
    using Error::Error;
};

/// Invalid configuration values, shapes or unparsable config text.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// API misuse, e.g. stepping a terminated environment.
class UsageError : public Error {
  public:
    using Error::Error;
};

/// The policy assigns (numerically) zero probability to the requested action.
class DegeneratePolicyError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace regqpg
