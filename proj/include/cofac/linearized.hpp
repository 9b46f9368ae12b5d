#pragma once

// Geometrically linear theory: strain compatibility, linear twin formulas,
// the linear cofactor conditions and the nonlinear-vs-linear comparison.

#include <optional>

#include "cofac/linalg.hpp"

namespace cofac {

struct Strain {
  Mat3 E;
  EigenSystem eig;

  explicit Strain(const Mat3& e);

  double eps1() const { return eig.lambda[0]; }
  double eps2() const { return eig.lambda[1]; }
  double eps3() const { return eig.lambda[2]; }
};

struct LinRankOne {
  Vec3 a, n;
};

// Representative (a, n) with S = sym(a (x) n); exists iff the middle
// eigenvalue of S is zero.  Unique up to swap and reciprocal scaling.
LinRankOne lin_rank_one(const Strain& S, double tol = 1e-10);

struct LinTwin {
  Vec3 a, n;   // a = 4((e.Ee)e - Ee), n = e
  Mat3 What;   // skew part with Ehat + What - E = a (x) n
  Mat3 Ehat;
};

LinTwin lin_twin(const Strain& E, const Vec3& ehat);

struct CclReport {
  double ccl1 = 0;          // eps2
  bool rank2 = false;       // eps1 < -tol and eps3 > tol
  double ccl2 = 0;          // (a.v2)(n.v2)
  double ccl2_prime = 0;    // n2^2 (n1^2 eps1 + n3^2 eps3)
  double twin_condition = 0;  // n1^2 eps1 + n3^2 eps3 = e.Ee
  double ccl3 = 0;          // (tr(E+Ehat))^2 - tr((E+Ehat)^2), <= 0 required
  double ccl3_prime = 0;    // diagonal-form branch value
  bool satisfied = false;
};

// Components of ehat are taken in the ordered eigenbasis of E.
CclReport ccl_residuals(const Strain& E, const Vec3& ehat, double tol = 1e-10);

struct GnglComparison {
  std::optional<double> lambda1_typeI;
  std::optional<double> lambda1_typeII;
  std::optional<double> lambda1_linear;
};

// Solve the three middle-eigenvalue conditions for lambda1 in (0,1) given
// lambda3 and the squared axis components along v1 and v3.
GnglComparison compare_nonlinear_linear(double lambda3, double n1sq,
                                        double n3sq);

// Convenience overload: the component of least magnitude is taken along the
// middle eigendirection, the remaining two along v1 and v3 in index order.
GnglComparison compare_nonlinear_linear(double lambda3, const Vec3& n);

}  // namespace cofac
