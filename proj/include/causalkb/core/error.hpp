#pragma once

#include <stdexcept>
#include <string>

namespace causalkb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller passed a value outside an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Input file was readable but a row did not parse.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Partial correlation recursion hit a (near-)unit conditioning correlation.
class DegenerateConditioning : public Error {
 public:
  DegenerateConditioning(const std::string& what, unsigned first, unsigned second)
      : Error(what), first_(first), second_(second) {}

  unsigned first() const noexcept { return first_; }
  unsigned second() const noexcept { return second_; }

 private:
  unsigned first_;
  unsigned second_;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace causalkb
