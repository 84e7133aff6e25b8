#pragma once

#include <stdexcept>
#include <string>

namespace kernhe {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input or configuration rejected before any computation started.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class RangeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class LayoutMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ShapeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnsupportedAlgorithm : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class LedgerMismatch : public Error {
 public:
  using Error::Error;
};

class NegativeDiff : public Error {
 public:
  using Error::Error;
};

}  // namespace kernhe
