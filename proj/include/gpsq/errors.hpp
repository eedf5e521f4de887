// Exception hierarchy for the GPS queueing solver.
//
// Library code throws; the CLI maps exception families to process exit codes
// (domain/instability -> 1, flag parsing -> 2, numerical failures -> 3).
#pragma once

#include <stdexcept>
#include <string>

namespace gpsq {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid model parameters (negative rates, weights outside (0,1), ...).
class ParameterDomainError : public Error {
public:
    using Error::Error;
};

/// Operation requires a stable system but the parameters are unstable
/// (or within the numerical boundary band of the stability region).
class UnstableSystemError : public Error {
public:
    using Error::Error;
};

/// Numerical errors share a base so the CLI can map them to one exit code.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Branch points failed their required interlacing (0<z1<z2<=1<=z3<z4).
class OrderingViolation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Argument lies on (or within tolerance of) a square-root branch cut.
class OnCut : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Evaluation at a point where the map has a pole at the origin (x=0 or y=0).
class PoleAtZero : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Quadrature abscissa too close to an integrand singularity for the
/// requested non-principal-value evaluation.
class NearSingularity : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// More than one kernel root fell inside the integration segment; the
/// single-subtraction principal-value scheme does not apply.
class MultipleSingularities : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The phase denominator changed sign where theory requires a fixed sign;
/// the principal-branch arctangent would be off by a quadrant.
class BranchAmbiguity : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Discrete winding-number sampling saw a phase jump too large to unwrap
/// reliably; increase the sample count.
class PhaseAliasing : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Bivariate evaluation requested at a zero of the kernel polynomial.
class KernelZero : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Evaluation requested at (or within tolerance of) a pole of the
/// continued generating function.
class AtPole : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Rational form of the circle multiplier alpha_Y evaluated at one of its poles.
class PoleOfAlpha : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Boundary-relation evaluation hit a genuine (non-removable) pole.
class PoleEncountered : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Iterative scheme (stationary solve, adaptive quadrature) failed to reach
/// its tolerance within the allotted work.
class NonConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Requested tail-regression window lies outside the reliable part of a
/// truncated grid.
class WindowUnreliable : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace gpsq
