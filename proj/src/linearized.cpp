#include "cofac/linearized.hpp"

#include <cmath>

namespace cofac {

Strain::Strain(const Mat3& e) : E(symmetrize(e)), eig(sym_eigen(E)) {
  if (!all_finite(e)) throw InvalidInput("Strain: non-finite entries");
  if (!is_symmetric(e, 1e-12))
    throw InvalidInput("Strain: matrix is not symmetric");
}

LinRankOne lin_rank_one(const Strain& S, double tol) {
  double scale = std::max(std::abs(S.eps1()), std::abs(S.eps3()));
  if (scale < tol) throw NoSolution("lin_rank_one: zero strain", 0.0);
  if (std::abs(S.eps2()) > tol)
    throw NoSolution("lin_rank_one: middle eigenvalue is not zero", S.eps2());
  double r1 = std::sqrt(std::max(0.0, -S.eps1()));
  double r3 = std::sqrt(std::max(0.0, S.eps3()));
  LinRankOne out;
  out.a = S.eig.v[0] * r1 + S.eig.v[2] * r3;
  out.n = S.eig.v[0] * (-r1) + S.eig.v[2] * r3;
  return out;
}

LinTwin lin_twin(const Strain& E, const Vec3& ehat) {
  Vec3 e = normalized(ehat);
  Mat3 q = two_fold(e);
  Mat3 eh = symmetrize(q * E.E * q);
  if (frobenius(eh - E.E) <= 1e-10 * std::max(1.0, frobenius(E.E)))
    throw DegenerateAxis("lin_twin: axis reflects E onto itself");
  LinTwin t;
  t.Ehat = eh;
  t.n = e;
  t.a = (e * dot(e, E.E * e) - E.E * e) * 4.0;
  t.What = outer(t.a, t.n) - eh + E.E;
  return t;
}

CclReport ccl_residuals(const Strain& E, const Vec3& ehat, double tol) {
  LinTwin t = lin_twin(E, ehat);  // DegenerateAxis propagates
  CclReport r;
  r.ccl1 = E.eps2();
  r.rank2 = E.eps1() < -tol && E.eps3() > tol;

  double n1 = dot(t.n, E.eig.v[0]);
  double n2 = dot(t.n, E.eig.v[1]);
  double n3 = dot(t.n, E.eig.v[2]);
  r.ccl2 = dot(t.a, E.eig.v[1]) * n2;
  r.twin_condition = n1 * n1 * E.eps1() + n3 * n3 * E.eps3();
  r.ccl2_prime = n2 * n2 * r.twin_condition;

  Mat3 sum = E.E + t.Ehat;
  double tr = sum.trace();
  r.ccl3 = tr * tr - (sum * sum).trace();

  double e1 = E.eps1(), e3 = E.eps3();
  if (std::abs(n2) <= tol)
    r.ccl3_prime = e1 * e3 + n1 * n1 * n3 * n3 * (e3 - e1) * (e3 - e1);
  else
    r.ccl3_prime = e1 * e3 + n3 * n3 * e3 * (e3 - e1);

  r.satisfied = std::abs(r.ccl1) <= tol && r.rank2 &&
                std::abs(r.ccl2) <= tol && r.ccl3 <= tol;
  return r;
}

GnglComparison compare_nonlinear_linear(double lambda3, double n1sq,
                                        double n3sq) {
  if (!(lambda3 > 1.0))
    throw InvalidInput("compare_nonlinear_linear: lambda3 must exceed 1");
  if (n1sq + n3sq <= 0)
    throw InvalidInput("compare_nonlinear_linear: n1 and n3 both zero");

  GnglComparison out;
  auto in_range = [](double x) { return x > 0.0 && x < 1.0; };

  if (n1sq > 0) {
    // (1/l1^2 - 1) n1^2 + (1/l3^2 - 1) n3^2 = 0
    double inv = 1.0 + (n3sq / n1sq) * (1.0 - 1.0 / (lambda3 * lambda3));
    double l = 1.0 / std::sqrt(inv);
    if (in_range(l)) out.lambda1_typeI = l;
    // (l1^2 - 1) n1^2 + (l3^2 - 1) n3^2 = 0
    double sq = 1.0 - (n3sq / n1sq) * (lambda3 * lambda3 - 1.0);
    if (sq > 0) {
      double l2 = std::sqrt(sq);
      if (in_range(l2)) out.lambda1_typeII = l2;
    }
    // (l1 - 1) n1^2 + (l3 - 1) n3^2 = 0
    double ll = 1.0 - (n3sq / n1sq) * (lambda3 - 1.0);
    if (in_range(ll)) out.lambda1_linear = ll;
  }
  if (!out.lambda1_typeI && !out.lambda1_typeII && !out.lambda1_linear)
    throw NoSolution("compare_nonlinear_linear: no root in (0,1)", 0.0);
  return out;
}

GnglComparison compare_nonlinear_linear(double lambda3, const Vec3& n) {
  Vec3 u = normalized(n);
  // The axis with the smallest |component| is taken as the middle one.
  int mid = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(u[i]) < std::abs(u[mid])) mid = i;
  double c[2];
  int k = 0;
  for (int i = 0; i < 3; ++i)
    if (i != mid) c[k++] = u[i];
  return compare_nonlinear_linear(lambda3, c[0] * c[0], c[1] * c[1]);
}

}  // namespace cofac
