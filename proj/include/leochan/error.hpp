// SPDX-License-Identifier: Apache-2.0
//
// leochan: LEO satellite-to-ground propagation channel library
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace leochan
{

/// Argument outside the mathematical domain of an operation (e.g. elevation below the floor).
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// Invalid or inconsistent configuration. CLI exit code 2.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or invalid input data (trace files). CLI exit code 3.
class InputError : public std::runtime_error
{
  public:
    InputError(const std::string &what, std::size_t line = 0)
        : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line)
    {
    }

    /// 1-based line number of the offending record, 0 when not tied to a line.
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Numerical failure: non-convergence, zero total power, degenerate fit. CLI exit code 4.
class NumericError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace leochan
