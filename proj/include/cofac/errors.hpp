#pragma once

#include <stdexcept>
#include <string>

namespace cofac {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInput : Error { using Error::Error; };

// recover_rotation: the quotient A*inv(B) is not orthogonal within tolerance.
struct NotCompatible : Error { using Error::Error; };

// The reflected stretch equals U; no twin exists for this axis.
struct DegenerateAxis : Error { using Error::Error; };

// Axis is not perpendicular to any eigenvector of U.
struct NotCompound : Error { using Error::Error; };

// Input stretches do not share a spectrum.
struct NotSimilar : Error { using Error::Error; };

// Inputs violate the structural identities required of symmetry-related pairs.
struct InconsistentInput : Error { using Error::Error; };

// Repeated outer eigenvalues; habit-plane factorization is not unique.
struct Degenerate : Error { using Error::Error; };

// Middle eigenspace of U is not one-dimensional.
struct AmbiguousMiddleEigenvector : Error { using Error::Error; };

struct DegenerateVariants : Error { using Error::Error; };

struct NoSolution : Error {
  double residual = 0.0;
  explicit NoSolution(const std::string& what, double r = 0.0)
      : Error(what), residual(r) {}
};

// Middle eigenvalue of the laminate Gram matrix is away from one.
struct NoHabitPlane : Error {
  double residual = 0.0;  // sqrt(middle eigenvalue) - 1
  double g_value = 0.0;   // det(C_f - I) at the failing volume fraction
  NoHabitPlane(const std::string& what, double r, double g = 0.0)
      : Error(what), residual(r), g_value(g) {}
};

struct InputError : Error { using Error::Error; };
struct NoLambda2Curve : Error { using Error::Error; };
struct NoCrossing : Error { using Error::Error; };

}  // namespace cofac
