#pragma once

// Martensite-martensite compatibility: solve R^ U^ - U = a (x) n forward
// (given the two-fold axis) and inverse (recover all axes from a pair of
// stretch tensors).

#include <vector>

#include "cofac/linalg.hpp"

namespace cofac {

// Symmetric positive-definite transformation stretch with cached eigensystem.
struct StretchTensor {
  Mat3 U;
  EigenSystem eig;

  explicit StretchTensor(const Mat3& u);

  double lambda1() const { return eig.lambda[0]; }
  double lambda2() const { return eig.lambda[1]; }
  double lambda3() const { return eig.lambda[2]; }
  const Vec3& v1() const { return eig.v[0]; }
  const Vec3& v2() const { return eig.v[1]; }
  const Vec3& v3() const { return eig.v[2]; }
};

enum class DomainKind { TypeI, TypeII, Compound1, Compound2 };

const char* to_string(DomainKind k);

// One solution of the twin equation R^ U^ - U = a (x) n.
struct DomainSolution {
  Vec3 ehat;        // generating two-fold axis (unit)
  DomainKind kind;
  Vec3 a;           // shear vector, unnormalized as produced by the formulas
  Vec3 n;           // reference interface normal, unnormalized
  Mat3 Rhat;        // rotation with Rhat*Uhat = U + a(x)n
  Mat3 Uhat;        // reflected stretch
  double coeff = 0; // xi (Compound1) or eta (Compound2); 0 for Type I/II
};

// Uhat = (-I + 2 e(x)e) U (-I + 2 e(x)e).
Mat3 reflect_variant(const StretchTensor& U, const Vec3& ehat);

// Relative degeneracy threshold: ||Uhat - U|| <= 1e-8 ||U|| means no twin.
bool degenerate_axis(const StretchTensor& U, const Vec3& ehat);

DomainSolution type1_solution(const StretchTensor& U, const Vec3& ehat);
DomainSolution type2_solution(const StretchTensor& U, const Vec3& ehat);

// Compound pair for an axis perpendicular to an eigenvector of U.
struct CompoundPair {
  Vec3 ehat2;  // second axis, = v x ehat1
  DomainSolution sol1;  // n = ehat1, a = xi U ehat2
  DomainSolution sol2;  // n = ehat2, a = eta U ehat1
};

CompoundPair compound_solutions(const StretchTensor& U, const Vec3& ehat1);

enum class DomainClass { TypeI_II, Compound };

// Compound iff ehat is perpendicular to an eigenvector of U (tol 1e-8).
DomainClass classify_domain(const StretchTensor& U, const Vec3& ehat);

// Inverse problem: all two-fold axes relating two stretch tensors.
struct AxisRecovery {
  enum Status { EqualTensors, SingleAxis, CompoundPairAxes } status;
  std::vector<Vec3> axes;  // canonical sign: first nonzero component positive
  // Eigenstructure of inv(A) B^2 inv(A):
  double mu1 = 0, mu3 = 0;
};

// Requires equal spectra (else NotSimilar) and the structural identities of
// orthogonally-similar pairs (else InconsistentInput; this is also the signal
// that no two-fold relates the pair).
AxisRecovery recover_axes(const StretchTensor& A, const StretchTensor& B);

// Canonical axis representative: first nonzero component positive.
Vec3 canonical_axis(const Vec3& e);

}  // namespace cofac
