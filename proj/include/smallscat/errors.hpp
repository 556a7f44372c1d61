#pragma once

#include <stdexcept>
#include <string>

namespace smallscat {

// Process exit codes used by the CLI (see README).
enum class ExitCode : int {
    ok = 0,
    validation = 2,  // bad input, violated precondition, regime refusal
    solver = 3,      // numerical failure (divergence, singular system)
    io = 4,          // file not found / unparsable / unwritable
};

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
    virtual ExitCode exit_code() const { return ExitCode::solver; }
};

/// Invalid argument, violated precondition, or refused regime.
class ValidationError : public Error {
  public:
    using Error::Error;
    ExitCode exit_code() const override { return ExitCode::validation; }
};

/// Numerical solve did not reach the requested tolerance.
class SolverError : public Error {
  public:
    using Error::Error;
    ExitCode exit_code() const override { return ExitCode::solver; }
};

class IoError : public Error {
  public:
    using Error::Error;
    ExitCode exit_code() const override { return ExitCode::io; }
};

// Specific validation failures that tests and callers key on.

/// Evaluation point coincides with a kernel singularity or lies off its domain.
class DomainError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// 1 + zeta*a (or 1 + h) vanished; the charge formula has no finite value.
class ResonanceError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// A cube was asked to hold more particles than its sub-lattice can carry.
class CapacityError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Field evaluation requested inside the near-field guard zone of a particle.
class NearFieldError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Operation requires the free-space background.
class UnsupportedBackgroundError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Im h > 0, Im n^2 < 0, or N < 0: a gain medium was requested.
class PassivityError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

}  // namespace smallscat
