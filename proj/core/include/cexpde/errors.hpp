#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cexpde {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the expression parser. `offset()` is the byte offset into the
/// input text where the problem was detected.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Identifier that is not a jet variable (includes lower-triangular `u21`).
class UnknownVariableError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Variable index larger than the declared number of independent variables.
class DimensionError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// log/sqrt/division outside the domain, or a non-finite intermediate.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, std::string subexpression)
      : Error(what + ": " + subexpression),
        subexpression_(std::move(subexpression)) {}
  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The zero locus could not be sampled often enough inside the box.
class SamplingError : public Error {
 public:
  using Error::Error;
};

/// Characteristic polynomial vanishes identically (a = b = c = 0).
class DegenerateSymbolError : public Error {
 public:
  using Error::Error;
};

/// |b + 2 c lambda| too small: the two characteristic roots nearly coincide.
class NearParabolicError : public Error {
 public:
  using Error::Error;
};

}  // namespace cexpde
