#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace avrpid {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user-supplied value (nonpositive gain, empty polynomial, ...).
class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

/// Feedback interconnection collapsed to a zero denominator.
class DegenerateLoopError : public Error {
 public:
  using Error::Error;
};

/// deg(num) > deg(den): no state-space realization.
class ImproperSystemError : public Error {
 public:
  using Error::Error;
};

/// State left the finite range during propagation.
class SimulationOverflowError : public Error {
 public:
  SimulationOverflowError(const std::string& what, std::size_t first_bad_index)
      : Error(what), first_bad_index_(first_bad_index) {}
  std::size_t first_bad_index() const { return first_bad_index_; }

 private:
  std::size_t first_bad_index_ = 0;
};

/// Response tail still moving; transient metrics would be meaningless.
class UnsettledError : public Error {
 public:
  using Error::Error;
};

/// Loop phase never reaches -180 degrees; no ultimate gain exists.
class NotTunableError : public Error {
 public:
  using Error::Error;
};

/// Closed loop has a pole with nonnegative real part.
class UnstableLoopError : public Error {
 public:
  using Error::Error;
};

/// Malformed data file (reference table, tolerances, config).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace avrpid
