#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace norden {

/// Base of every diagnostic raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed tensor-level request (bad axis, rank underflow, dim mismatch).
class TensorError : public Error {
 public:
  using Error::Error;
};

/// Syntax or consistency error in an input file. Carries the offending line
/// numbers (two of them for conflicting duplicates).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::vector<int> lines)
      : Error(format(message, lines)), lines_(std::move(lines)) {}

  [[nodiscard]] const std::vector<int>& lines() const { return lines_; }

 private:
  static std::string format(const std::string& message, const std::vector<int>& lines);
  std::vector<int> lines_;
};

enum class ValidationCode {
  OddDimension,
  BrokenAntisymmetry,
  JacobiViolation,
  NotAlmostComplex,
  NotNorden,
  DegenerateMetric,
  WrongSignature,
};

const char* to_string(ValidationCode code);

/// First violated structure invariant, with 1-based witness indices.
class ValidationError : public Error {
 public:
  ValidationError(ValidationCode code, std::vector<int> witness, const std::string& detail = {});

  [[nodiscard]] ValidationCode code() const { return code_; }
  [[nodiscard]] const std::vector<int>& witness() const { return witness_; }

 private:
  ValidationCode code_;
  std::vector<int> witness_;
};

/// Dg or DJ fails to vanish for the B-connection. Unreachable for valid input.
class NaturalityViolation : public Error {
 public:
  using Error::Error;
};

/// One side of an "iff" vanished and the other did not.
class BiconditionalViolation : public Error {
 public:
  using Error::Error;
};

class NotKahlerTensor : public Error {
 public:
  using Error::Error;
};

class DimensionNotFour : public Error {
 public:
  using Error::Error;
};

}  // namespace norden
