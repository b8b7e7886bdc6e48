#pragma once

#include <stdexcept>
#include <string>

namespace flatchain {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched signatures or descriptors, cells outside a complex, malformed documents.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Operation applied outside its domain (wrong degree, empty axis set, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A slice or shift hit a measure-zero configuration; callers re-sample.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// The requested back-end or mode cannot handle the input.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace flatchain
