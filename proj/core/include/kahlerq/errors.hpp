#pragma once

#include <stdexcept>
#include <string>

namespace kahlerq {

// Base class for every failure this library raises on purpose.  Each callee
// that can refuse an input documents which subclass it throws, so callers can
// catch narrowly and tests can assert on the exact failure mode.
class KahlerError : public std::runtime_error {
 public:
  explicit KahlerError(const std::string& what) : std::runtime_error(what) {}
};

// Vector or matrix operands whose sizes cannot be combined.
class DimensionMismatch : public KahlerError {
 public:
  using KahlerError::KahlerError;
};

// A 2Nx2N matrix that was supposed to commute with the complex structure
// (i.e. be the image of a lift) but does not, within tolerance.
class StructureViolation : public KahlerError {
 public:
  using KahlerError::KahlerError;
};

// An operator required to be Hermitian (symmetric real part, skew imaginary
// part) fails that test within tolerance.
class NotHermitian : public KahlerError {
 public:
  using KahlerError::KahlerError;
};

// measure() was handed an operator that is not an orthogonal projector.
class NotAProjector : public KahlerError {
 public:
  using KahlerError::KahlerError;
};

// Conditioning a state on a measurement branch of probability ~ 0.
class ZeroProbabilityBranch : public KahlerError {
 public:
  using KahlerError::KahlerError;
};

// A linear solve inside an implicit integrator left too large a residual.
class SolverFailure : public KahlerError {
 public:
  using KahlerError::KahlerError;
};

// A grid state carries non-negligible weight in the boundary band where
// finite-difference stencils are truncated.
class BoundarySupport : public KahlerError {
 public:
  using KahlerError::KahlerError;
};

// An exhaustive search or quadrature whose size exceeds the configured budget.
class SearchSpaceTooLarge : public KahlerError {
 public:
  using KahlerError::KahlerError;
};

// Malformed or out-of-range run configuration (CLI layer).
class ConfigError : public KahlerError {
 public:
  using KahlerError::KahlerError;
};

// The plot subcommand was pointed at a directory without a report.
class MissingReport : public KahlerError {
 public:
  using KahlerError::KahlerError;
};

}  // namespace kahlerq
