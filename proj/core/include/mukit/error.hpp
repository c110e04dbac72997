#pragma once

#include <stdexcept>
#include <string>

namespace mukit {

enum class ErrorCode {
  kInput,              // malformed or non-finite input
  kDimensionMismatch,  // operand sizes disagree
  kNumerical,          // iteration failed to converge
  kUnsupported,        // structure not handled by the requested routine
  kComplexity,         // request exceeds a hard size guard
  kPrecondition,       // operation precondition does not hold
  kNotInClass,         // matrix is outside the class with known exact mu
  kHypothesis,         // block structure lacks a required diagonal member
  kNoPerturbation,     // spectral radius is zero, nothing to invert
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mukit
