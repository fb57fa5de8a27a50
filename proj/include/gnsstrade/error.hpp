#pragma once

#include <stdexcept>
#include <string>

namespace gnsstrade {

enum class ErrorCode {
  kConstraintViolation,   // invalid decision/option combination
  kInsufficientGeometry,  // fewer than 4 visible satellites
  kSingularGeometry,      // degenerate normal matrix
  kMissingTableEntry,     // lookup key not present in a bundled table
  kSizingInfeasible,      // non-physical sizing result
  kNoLaunchCapability,    // launcher performance <= 0 at requested altitude
  kInvalidInput,
};

class ModelError : public std::runtime_error {
 public:
  ModelError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gnsstrade
