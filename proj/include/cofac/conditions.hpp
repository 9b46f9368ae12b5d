#pragma once

// The cofactor conditions in all their forms (CC1-CC3, CC2', type-specific
// characterizations, compound criteria) with residual reporting.

#include <optional>
#include <string>
#include <utility>

#include "cofac/twin.hpp"

namespace cofac {

struct CompoundChecks {
  double e1_dot_v2 = 0;
  double e2_dot_v2 = 0;
  double sin_e1_v1 = 0;   // |e1 x v1|, must stay away from 0
  double sin_e1_v3 = 0;
  double cc3_sol1 = 0;
  double cc3_sol2 = 0;
  bool satisfied = false;
};

struct CofactorReport {
  DomainClass domain_class = DomainClass::TypeI_II;
  double tolerance = 1e-4;

  double cc1 = 0;                       // lambda2(U) - 1
  // CC2 and CC2' for the Type I and Type II solutions of the axis:
  double cc2_typeI = 0, cc2_typeII = 0; // a . U cof(U^2 - I) n
  std::pair<double, double> cc2p_typeI{0, 0};   // (a.v2, n.v2)
  std::pair<double, double> cc2p_typeII{0, 0};
  double cc3_typeI = 0, cc3_typeII = 0; // tr U^2 - det U^2 - |a|^2|n|^2/4 - 2
  double typeI_residual = 0;            // |U^-1 e|^2 - 1
  double typeII_residual = 0;           // |U e|^2 - 1
  std::optional<CompoundChecks> compound;

  bool typeI_satisfied = false;
  bool typeII_satisfied = false;

  bool satisfied() const {
    return typeI_satisfied || typeII_satisfied ||
           (compound && compound->satisfied);
  }
  std::string verdict() const;
};

// Thrown by microstructure builders when the preconditions fail.
struct NotSupercompatible : Error {
  CofactorReport report;
  NotSupercompatible(const std::string& what, CofactorReport r)
      : Error(what), report(std::move(r)) {}
};

struct CcResiduals {
  double cc1 = 0;
  double cc2 = 0;
  double cc3 = 0;
};

// Raw residuals of CC1-CC3 for one (U, a, n) triple.
CcResiduals cc_residuals(const StretchTensor& U, const Vec3& a, const Vec3& n);

// The two CC2' factors (a.v2, n.v2); requires a simple middle eigenvalue.
std::pair<double, double> cc2_prime(const StretchTensor& U, const Vec3& a,
                                    const Vec3& n);

// Type-specific characterizations (squared forms, zero exactly at CC2').
double check_type1(const StretchTensor& U, const Vec3& ehat);  // |U^-1 e|^2 - 1
double check_type2(const StretchTensor& U, const Vec3& ehat);  // |U e|^2 - 1

CompoundChecks check_compound(const StretchTensor& U, const Vec3& ehat1,
                              double tol = 1e-4);

// Unified report for one axis at a user tolerance (default matches
// four-decimal lattice-parameter data).
CofactorReport cofactor_report(const StretchTensor& U, const Vec3& ehat,
                               double tol = 1e-4);

}  // namespace cofac
