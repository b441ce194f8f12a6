#pragma once

#include <stdexcept>
#include <string>

namespace contour {

// Every library failure derives from Error. The kind drives the CLI exit code.
enum class ErrorKind {
  usage,          // bad flags or arguments
  input,          // grammar parse or schema violations
  budget,         // vertex budget exceeded
  mismatch,       // two counting routes disagree
  precondition,   // caller broke an operation's precondition
  shallow,        // truncation too shallow for the requested size
  infinite,       // counts are infinite where a finite value was required
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct UsageError : Error {
  explicit UsageError(const std::string& w) : Error(ErrorKind::usage, w) {}
};
struct InputError : Error {
  explicit InputError(const std::string& w) : Error(ErrorKind::input, w) {}
};
struct BudgetError : Error {
  explicit BudgetError(const std::string& w) : Error(ErrorKind::budget, w) {}
};
struct MismatchError : Error {
  explicit MismatchError(const std::string& w) : Error(ErrorKind::mismatch, w) {}
};
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& w) : Error(ErrorKind::precondition, w) {}
};
struct TruncationTooShallow : Error {
  explicit TruncationTooShallow(const std::string& w) : Error(ErrorKind::shallow, w) {}
};
struct InfiniteCoefficients : Error {
  explicit InfiniteCoefficients(const std::string& w) : Error(ErrorKind::infinite, w) {}
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace contour
