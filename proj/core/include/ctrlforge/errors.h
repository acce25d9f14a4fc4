// Copyright 2026 The ctrlforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CTRLFORGE_ERRORS_H_
#define CTRLFORGE_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace ctrlforge {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ----------------------------- model language --------------------------------

class XmlSyntaxError : public Error {
 public:
  XmlSyntaxError(const std::string& what, int line, int column)
      : Error("XML syntax error at line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Unknown tag, illegal attribute, bad attribute value or illegal child.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A name reference that does not resolve to an element of the required kind.
class ReferenceError : public Error {
 public:
  using Error::Error;
};

class DuplicateNameError : public Error {
 public:
  using Error::Error;
};

class AttachmentError : public Error {
 public:
  using Error::Error;
};

// Raised when provenance is requested but tracking was not enabled.
class ProvenanceUnavailableError : public Error {
 public:
  using Error::Error;
};

// --------------------------------- engine ------------------------------------

class CompileError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::int64_t step)
      : Error(what), step_(step) {}
  std::int64_t step() const { return step_; }

 private:
  std::int64_t step_;
};

// Internal numerical failure (e.g. a mass matrix that fails to factorize).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// --------------------------------- physics -----------------------------------

class UnknownNameError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class BindingError : public Error {
 public:
  using Error::Error;
};

// ------------------------------ environments ---------------------------------

// An action or observation that does not conform to its ArraySpec.
class SpecError : public Error {
 public:
  using Error::Error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

class UnknownTaskError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// An exception raised inside a task or entity callback, annotated with the
// callback and the entity (or "task") it came from.
class CallbackError : public Error {
 public:
  CallbackError(const std::string& what, std::string callback, std::string owner)
      : Error("in " + callback + " of " + owner + ": " + what),
        callback_(std::move(callback)),
        owner_(std::move(owner)) {}
  const std::string& callback() const { return callback_; }
  const std::string& owner() const { return owner_; }

 private:
  std::string callback_;
  std::string owner_;
};

}  // namespace ctrlforge

#endif  // CTRLFORGE_ERRORS_H_
