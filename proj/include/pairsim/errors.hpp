#pragma once

#include <stdexcept>
#include <string>

namespace pairsim {

/// Base for all errors raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A target entry is nonzero where the divisor (natural coupling) is zero.
class ZeroMismatch : public Error {
 public:
  ZeroMismatch(std::size_t k, std::size_t l)
      : Error("entrywise quotient undefined: target nonzero at (" + std::to_string(k) + ", " +
              std::to_string(l) + ") where the divisor is zero") {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class NonPositiveMu : public Error {
 public:
  NonPositiveMu() : Error("time overhead mu must be positive") {}
};

class NotPositiveSemidefinite : public Error {
 public:
  NotPositiveSemidefinite() : Error("coupling type is not positive semidefinite") {}
};

class ZeroTarget : public Error {
 public:
  ZeroTarget() : Error("target is the zero matrix; overhead bound is degenerate") {}
};

class NotPowerOfTwo : public Error {
 public:
  explicit NotPowerOfTwo(std::size_t d)
      : Error("Sylvester Hadamard dimension must be a power of two, got " + std::to_string(d)) {}
};

class NonOrthogonalBlock : public Error {
 public:
  NonOrthogonalBlock(std::size_t step, std::size_t node)
      : Error("block for node " + std::to_string(node) + " in step " + std::to_string(step) +
              " is not orthogonal") {}
};

class SizeExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace pairsim
