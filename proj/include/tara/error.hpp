/// @file error.hpp
/// Exception types shared by every module.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tara {

/// Base for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `position` is a byte offset into the input, or a
/// line/column pair when the input is a file.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(message + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        position_(0),
        line_(line),
        column_(column) {}
  explicit ParseError(const std::string& message) : Error(message) {}

  std::size_t position() const { return position_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t position_ = 0;
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

class NotFoundError : public Error {
 public:
  NotFoundError(const std::string& what, const std::string& key)
      : Error(what + " not found: " + key), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// A model failed validation; the message lists the errors.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A score cannot be computed (environmental metrics, unscored leaf, ...).
class ScoringError : public Error {
 public:
  using Error::Error;
};

/// Attack tree structure is not a tree.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Disclosure event cannot be applied.
class EventError : public Error {
 public:
  using Error::Error;
};

}  // namespace tara
