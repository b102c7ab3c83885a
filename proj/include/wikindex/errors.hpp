// Copyright 2026 The wikindex Authors.
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

#ifndef WIKINDEX_ERRORS_HPP
#define WIKINDEX_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wikindex {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FileNotFound : public Error {
 public:
  using Error::Error;
};

class UnsupportedCompression : public Error {
 public:
  using Error::Error;
};

/// XML that cannot be parsed; carries the 1-based position of the defect.
class MalformedXml : public Error {
 public:
  MalformedXml(const std::string& what, std::uint64_t line, std::uint64_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::uint64_t line() const { return line_; }
  std::uint64_t column() const { return column_; }

 private:
  std::uint64_t line_;
  std::uint64_t column_;
};

class DuplicateTitle : public Error {
 public:
  using Error::Error;
};

class StoreIoError : public Error {
 public:
  using Error::Error;
};

/// A build is in progress on the same path (lock file present).
class StoreLocked : public StoreIoError {
 public:
  using StoreIoError::StoreIoError;
};

class StoreAlreadyExists : public Error {
 public:
  using Error::Error;
};

class UnknownPage : public Error {
 public:
  using Error::Error;
};

class UnknownLemma : public Error {
 public:
  using Error::Error;
};

class EmptyIndex : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

}  // namespace wikindex

#endif  // WIKINDEX_ERRORS_HPP
