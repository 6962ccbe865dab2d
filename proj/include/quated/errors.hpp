/*
 * Copyright (c) 2026 The quated Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef QUATED_ERRORS_HPP
#define QUATED_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quated {

/// Coarse error category; the CLI maps each onto a process exit code.
enum class ErrorKind { usage, data, numeric };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

class UsageError : public Error {
public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(ErrorKind::data, what) {}
};

class ParseError : public Error {
public:
  ParseError(const std::string& file, std::size_t line, const std::string& why)
      : Error(ErrorKind::data, file + ":" + std::to_string(line) + ": " + why), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Checkpoint dimensions disagree with the dataset or the requested config.
class ShapeMismatch : public Error {
public:
  explicit ShapeMismatch(const std::string& what) : Error(ErrorKind::data, what) {}
};

class ZeroQuaternion : public Error {
public:
  ZeroQuaternion() : Error(ErrorKind::numeric, "cannot normalize a zero quaternion") {}
};

class DimensionMismatch : public Error {
public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs)
      : Error(ErrorKind::numeric,
              "quaternion vector dimension mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

class NumericError : public Error {
public:
  explicit NumericError(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

}  // namespace quated

#endif  // QUATED_ERRORS_HPP
