#include "cofac/conditions.hpp"

#include <cmath>

namespace cofac {

CcResiduals cc_residuals(const StretchTensor& U, const Vec3& a, const Vec3& n) {
  CcResiduals r;
  r.cc1 = U.lambda2() - 1.0;
  Mat3 u2 = U.U * U.U;
  r.cc2 = dot(a, U.U * (cofactor_matrix(u2 - Mat3::identity()) * n));
  r.cc3 = u2.trace() - u2.det() - dot(a, a) * dot(n, n) / 4.0 - 2.0;
  return r;
}

std::pair<double, double> cc2_prime(const StretchTensor& U, const Vec3& a,
                                    const Vec3& n) {
  double gap = std::min(U.lambda2() - U.lambda1(), U.lambda3() - U.lambda2());
  if (gap < 1e-8)
    throw AmbiguousMiddleEigenvector("cc2_prime: middle eigenvalue not simple");
  return {dot(a, U.v2()), dot(n, U.v2())};
}

double check_type1(const StretchTensor& U, const Vec3& ehat) {
  Vec3 e = normalized(ehat);
  Vec3 w = inverse(U.U) * e;
  return dot(w, w) - 1.0;
}

double check_type2(const StretchTensor& U, const Vec3& ehat) {
  Vec3 e = normalized(ehat);
  Vec3 w = U.U * e;
  return dot(w, w) - 1.0;
}

CompoundChecks check_compound(const StretchTensor& U, const Vec3& ehat1,
                              double tol) {
  CompoundPair pair = compound_solutions(U, ehat1);
  Vec3 e1 = normalized(ehat1);
  CompoundChecks c;
  c.e1_dot_v2 = dot(e1, U.v2());
  c.e2_dot_v2 = dot(pair.ehat2, U.v2());
  c.sin_e1_v1 = norm(cross(e1, U.v1()));
  c.sin_e1_v3 = norm(cross(e1, U.v3()));
  c.cc3_sol1 = cc_residuals(U, pair.sol1.a, pair.sol1.n).cc3;
  c.cc3_sol2 = cc_residuals(U, pair.sol2.a, pair.sol2.n).cc3;
  double cc1 = U.lambda2() - 1.0;
  c.satisfied = std::abs(cc1) <= tol && std::abs(c.e1_dot_v2) <= tol &&
                std::abs(c.e2_dot_v2) <= tol && c.sin_e1_v1 > tol &&
                c.sin_e1_v3 > tol &&
                std::max(c.cc3_sol1, c.cc3_sol2) >= -tol;
  return c;
}

std::string CofactorReport::verdict() const {
  if (domain_class == DomainClass::Compound)
    return compound && compound->satisfied ? "satisfied (Compound)"
                                           : "not satisfied (Compound)";
  if (typeI_satisfied && typeII_satisfied) return "satisfied (Type I and II)";
  if (typeI_satisfied) return "satisfied (Type I)";
  if (typeII_satisfied) return "satisfied (Type II)";
  return "not satisfied";
}

CofactorReport cofactor_report(const StretchTensor& U, const Vec3& ehat,
                               double tol) {
  CofactorReport rep;
  rep.tolerance = tol;
  rep.domain_class = classify_domain(U, ehat);  // throws DegenerateAxis
  rep.cc1 = U.lambda2() - 1.0;
  rep.typeI_residual = check_type1(U, ehat);
  rep.typeII_residual = check_type2(U, ehat);

  DomainSolution s1 = type1_solution(U, ehat);
  DomainSolution s2 = type2_solution(U, ehat);
  CcResiduals r1 = cc_residuals(U, s1.a, s1.n);
  CcResiduals r2 = cc_residuals(U, s2.a, s2.n);
  rep.cc2_typeI = r1.cc2;
  rep.cc2_typeII = r2.cc2;
  rep.cc3_typeI = r1.cc3;
  rep.cc3_typeII = r2.cc3;

  double gap = std::min(U.lambda2() - U.lambda1(), U.lambda3() - U.lambda2());
  if (gap >= 1e-8) {
    rep.cc2p_typeI = cc2_prime(U, s1.a, s1.n);
    rep.cc2p_typeII = cc2_prime(U, s2.a, s2.n);
  }

  if (rep.domain_class == DomainClass::Compound) {
    rep.compound = check_compound(U, ehat, tol);
  } else {
    rep.typeI_satisfied = std::abs(rep.cc1) <= tol &&
                          std::abs(rep.typeI_residual) <= tol &&
                          rep.cc3_typeI >= -tol;
    rep.typeII_satisfied = std::abs(rep.cc1) <= tol &&
                           std::abs(rep.typeII_residual) <= tol &&
                           rep.cc3_typeII >= -tol;
  }
  return rep;
}

}  // namespace cofac
