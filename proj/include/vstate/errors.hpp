#pragma once

#include <stdexcept>
#include <string>

namespace vstate {

// Precondition violations on mathematical domains (log of a nonpositive
// interval, asin outside [-1,1], a tail half-width outside (0, 1/2), ...).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Divisor interval contains zero.
struct DivisionByZeroInterval : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A kernel was evaluated on a cell whose argument window touches the
// diagonal singularity, so log A is unbounded there. Callers either
// exclude the window up front or shrink the cell and retry.
struct SingularWindow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A cell-wise range check found a cell whose enclosure fails to certify the
// stated strict bound (the enclosure crosses or lies beyond it).
struct BoundViolated : std::runtime_error {
  BoundViolated(const std::string& what, double cell_lo, double cell_hi)
      : std::runtime_error(what), cell_lo(cell_lo), cell_hi(cell_hi) {}
  double cell_lo;
  double cell_hi;
};

// The approximate eigenbasis is too ill-conditioned to certify anything
// (orthogonality defect >= 1).
struct EnclosureFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The smallest-eigenvalue enclosure touches zero, so no inverse norm bound
// can be certified.
struct SingularOrUnproven : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The denominator kernel enclosure contains zero; signals that an upstream
// sign certificate failed or was skipped.
struct K1ContainsZero : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Chunked-run aggregation found a missing piece.
struct MissingChunk : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed serialized interval, chunk file, config file or matrix file.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace vstate
