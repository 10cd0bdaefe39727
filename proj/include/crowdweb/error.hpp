/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crowdweb {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable input or unwritable output.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Input that does not follow the declared file format.
class FormatError : public Error {
 public:
  FormatError(const std::string& message, std::size_t line = 0)
      : Error(message), line_(line) {}

  /// 1-based line number of the first offending line, 0 when not line-specific.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A parameter outside its documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A user has no sequences to mine.
class EmptyDatabaseError : public Error {
 public:
  using Error::Error;
};

/// An instance too large for an exhaustive routine.
class SizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace crowdweb
