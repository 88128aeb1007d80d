// Copyright 2026 The poncelet-grid Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace poncelet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A conic or family is degenerate for the requested operation
/// (parameter too close to -a1^2 or -a2^2, circle family where foci are needed,
/// singular matrix).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Input outside the domain of an operation (line misses the table, point
/// inside the caustic, coordinates out of range).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Root bracketing failed. Carries the residuals at both ends.
class BracketError : public Error {
 public:
  BracketError(const std::string& what, double low_value, double high_value)
      : Error(what), low_value_(low_value), high_value_(high_value) {}

  double low_value() const { return low_value_; }
  double high_value() const { return high_value_; }

 private:
  double low_value_;
  double high_value_;
};

}  // namespace poncelet
