#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sosbound {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands disagree on the number of variables or vector length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed polynomial text; `position()` is the 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An argument is outside the documented domain of an operation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for the given domain kind.
class UnsupportedDomain : public Error {
 public:
  using Error::Error;
};

/// B is numerically indefinite or too ill-conditioned for the working
/// precision.
class ConditioningError : public Error {
 public:
  ConditioningError(const std::string& what, double cond_b)
      : Error(what + " (cond_B ~ " + format(cond_b) +
              "); reduce r or rescale the domain"),
        cond_b_(cond_b) {}

  double cond_b() const noexcept { return cond_b_; }

 private:
  static std::string format(double v);
  double cond_b_;
};

/// A conditional CDF was requested at a prefix where the marginal density
/// vanishes.
class DegeneratePrefix : public Error {
 public:
  using Error::Error;
};

/// A computation needs moments of a higher degree than were made available.
class InsufficientDegree : public Error {
 public:
  using Error::Error;
};

}  // namespace sosbound
