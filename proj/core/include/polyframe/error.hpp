#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyframe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Formula text that does not conform to the grammar.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position, std::vector<std::string> expected);

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

/// Evaluation of a formula under a valuation that leaves an atom unbound.
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Malformed order data: cycles, unknown or duplicate element names.
class PosetError : public Error {
 public:
  using Error::Error;
};

/// The upset algebra of a frame has more members than the configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside of its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Degenerate or inconsistent geometric input.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Point lies outside the affine hull of a simplex.
class NotInAffineHull : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// A construction produced an object that fails its own invariants.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input (JSON, rationals).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace polyframe
