#pragma once

#include <stdexcept>
#include <string>

namespace braidgen {

/// Base class for all library errors.
struct BraidError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IndexOutOfRange : BraidError {
  using BraidError::BraidError;
};

struct BadStrandCount : BraidError {
  using BraidError::BraidError;
};

struct StrandCountMismatch : BraidError {
  using BraidError::BraidError;
};

struct WordTooLong : BraidError {
  using BraidError::BraidError;
};

struct BadParams : BraidError {
  using BraidError::BraidError;
};

struct BadTarget : BraidError {
  using BraidError::BraidError;
};

struct TooLong : BraidError {
  using BraidError::BraidError;
};

struct NonZeroExponentSum : BraidError {
  using BraidError::BraidError;
};

struct NoCommutingIndex : BraidError {
  using BraidError::BraidError;
};

struct BadIndices : BraidError {
  using BraidError::BraidError;
};

struct ParseError : BraidError {
  using BraidError::BraidError;
};

}  // namespace braidgen
