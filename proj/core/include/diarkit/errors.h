// diarkit/errors.h

// Copyright 2026  The diarkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef DIARKIT_ERRORS_H_
#define DIARKIT_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace diarkit {

// Every error raised by the library derives from Error. The CLI maps the
// concrete type to a process exit code (see tools/cli.h).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. line() is 1-based; 0 means "not tied to a line".
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(Format(source, line, what)), source_(std::move(source)), line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  static std::string Format(const std::string& source, std::size_t line,
                            const std::string& what) {
    std::string out = source.empty() ? std::string("<input>") : source;
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + what;
  }

  std::string source_;
  std::size_t line_;
};

// Well-formed input that violates a domain invariant (e.g. duration <= 0).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Caller passed arguments outside an operation's preconditions.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Numerical failure (zero-norm vector, NaN eigenvalues, ...).
class ComputationError : public Error {
 public:
  using Error::Error;
};

// Simulator configuration that cannot be satisfied.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace diarkit

#endif  // DIARKIT_ERRORS_H_
