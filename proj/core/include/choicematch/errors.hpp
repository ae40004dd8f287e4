#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace choicematch {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed market/table/matching text. line and column are 1-based;
/// 0 means the position could not be recovered.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// Syntactically valid input describing an ill-formed object.
class LoadError : public Error {
 public:
  using Error::Error;
};

class MissingEntry : public Error {
 public:
  using Error::Error;
};

class UnknownAgent : public Error {
 public:
  using Error::Error;
};

class UniverseTooLarge : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NotDisjoint : public Error {
 public:
  using Error::Error;
};

class EmptySet : public Error {
 public:
  using Error::Error;
};

/// Some entry has C(S) not contained in S.
class ContainmentError : public Error {
 public:
  using Error::Error;
};

class NotOneToOne : public Error {
 public:
  using Error::Error;
};

/// A precondition that the caller asked the library to enforce failed
/// (e.g. an agent's table is not substitutable).
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// A proven implication did not hold, or a generator broke its promise.
/// Always a bug in this library.
class ImplicationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace choicematch
