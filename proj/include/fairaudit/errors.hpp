// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fairaudit {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input data (CSV layout, cell contents, header problems).
// Rows and columns are 1-based; 0 means "not applicable".
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t row = 0, std::size_t col = 0)
      : Error(Locate(message, row, col)), row_(row), col_(col) {}

  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  static std::string Locate(const std::string& message, std::size_t row, std::size_t col) {
    std::string out = message;
    if (row > 0) {
      out += " (row " + std::to_string(row);
      if (col > 0) out += ", column " + std::to_string(col);
      out += ")";
    }
    return out;
  }

  std::size_t row_;
  std::size_t col_;
};

// Violated precondition or invariant on an in-memory value.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// A ratio-based measure was asked to divide by a zero group rate.
class ZeroRateError : public Error {
 public:
  ZeroRateError(std::string rate_kind, std::string group)
      : Error("min " + rate_kind + " is 0 (group \"" + group + "\"); measure is incalculable"),
        rate_kind_(std::move(rate_kind)),
        group_(std::move(group)) {}

  // "FMR" or "FNMR".
  const std::string& rate_kind() const { return rate_kind_; }
  const std::string& group() const { return group_; }

 private:
  std::string rate_kind_;
  std::string group_;
};

}  // namespace fairaudit
