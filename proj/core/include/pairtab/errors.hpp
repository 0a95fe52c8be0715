#pragma once

#include <stdexcept>
#include <string>

namespace pairtab {

// Base class for all domain errors thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A move would drive some cell below zero.
class NegativeCellError : public Error {
 public:
  using Error::Error;
};

// A component of the sufficient statistic is zero: the MLE lies on the
// boundary of the model and cannot be fitted.
class ZeroMarginError : public Error {
 public:
  using Error::Error;
};

// An expected-count table has a zero cell where a positive value is required.
class ZeroExpectedError : public Error {
 public:
  using Error::Error;
};

// The null fit passed to a likelihood ratio has a zero cell.
class ZeroNullError : public Error {
 public:
  using Error::Error;
};

// Fiber enumeration exceeded the configured cap.
class FiberTooLargeError : public Error {
 public:
  using Error::Error;
};

// The requested structure is undefined below the minimum category count.
class TooSmallError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace pairtab
