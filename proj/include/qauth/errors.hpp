// Copyright 2026 The qauth Authors

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
 * @file
 * Exception types shared by every qauth module.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace qauth {

/// Bad argument supplied by the caller (out-of-range index, non-prime modulus, size cap).
class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Dimension mismatch between states or operators.
class DimensionError : public ParameterError {
  public:
    using ParameterError::ParameterError;
};

/// Input outside the region where a closed-form expression is meaningful.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A structural invariant of a scheme or object does not hold.
class InvariantError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qauth
