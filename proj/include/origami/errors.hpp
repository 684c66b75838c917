#pragma once

#include <stdexcept>
#include <string>

namespace origami {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched matrix or vector sizes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside the domain where a formula is defined (e.g. n < 2).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on input that violates its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The input is not a polytope (unbounded, empty, or lower dimensional).
class NotAPolytopeError : public Error {
 public:
  using Error::Error;
};

/// A combinatorial structure turned out malformed (e.g. a boundary circle
/// that is not a simple cycle). Usually indicates a template that slipped
/// past validation.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Derived invariants contradict each other.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// The requested computation is not implemented for this input (e.g. n != 2
/// for the degree-4 ring presentation).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// Malformed template file. `where` carries a field path or line:column.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where_(where) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace origami
