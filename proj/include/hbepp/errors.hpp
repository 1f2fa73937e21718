// Copyright 2026 The hbepp-link Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HBEPP_ERRORS_HPP
#define HBEPP_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace hbepp {

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A computed quantity violated an internal consistency bound
/// (e.g. a probability below -1e-12). Indicates a bug, not bad input.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scenario configuration could not be parsed or validated.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace hbepp

#endif  // HBEPP_ERRORS_HPP
