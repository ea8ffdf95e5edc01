#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sullivan {

/// Caller passed inconsistent arguments (dimension mismatch, bad option).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation's precondition on its model does not hold.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant was breached. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Violation {
  std::string generator;
  std::string condition;
  std::string detail;
};

/// Model failed validation; carries every violation found.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : std::runtime_error(summarize(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& vs) {
    std::string out = "invalid model:";
    for (const auto& v : vs) out += " [" + v.generator + ": " + v.condition + "]";
    return out;
  }

  std::vector<Violation> violations_;
};

/// Lexical, syntactic or semantic error in a model description.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace sullivan
