#pragma once

#include <stdexcept>

namespace ecb {

// Error taxonomy mirrored by the CLI exit codes:
//   DomainError / ValidationError -> 2, ResourceError / PrecisionError -> 3.

class DomainError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input object fails a structural invariant (non-Hermitian state, broken
// probability vector, non-trace-preserving Kraus family, ...).
class ValidationError : public DomainError {
  using DomainError::DomainError;
};

// A requested accuracy cannot be certified (partition-sum tail too large,
// envelope scan hit its ceiling without turnover, ...).
class PrecisionError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The computation would exceed a configured size cap.
class ResourceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ecb
