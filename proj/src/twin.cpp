#include "cofac/twin.hpp"

#include <cmath>

namespace cofac {

namespace {

// Unit inputs pass through bit-exact; anything else is normalized.
Vec3 unitize(const Vec3& v) {
  double n = norm(v);
  if (std::abs(n - 1.0) <= 1e-10) return v;
  if (n == 0.0) throw InvalidInput("zero axis");
  return v / n;
}

}  // namespace

StretchTensor::StretchTensor(const Mat3& u) : U(symmetrize(u)), eig(sym_eigen(U)) {
  if (!all_finite(u)) throw InvalidInput("StretchTensor: non-finite entries");
  if (eig.lambda[0] <= 0)
    throw InvalidInput("StretchTensor: matrix is not positive-definite");
}

const char* to_string(DomainKind k) {
  switch (k) {
    case DomainKind::TypeI: return "TypeI";
    case DomainKind::TypeII: return "TypeII";
    case DomainKind::Compound1: return "Compound1";
    case DomainKind::Compound2: return "Compound2";
  }
  return "?";
}

Mat3 reflect_variant(const StretchTensor& U, const Vec3& ehat) {
  Mat3 q = two_fold(ehat);
  return symmetrize(q * U.U * q);
}

bool degenerate_axis(const StretchTensor& U, const Vec3& ehat) {
  Mat3 uh = reflect_variant(U, ehat);
  return frobenius(uh - U.U) <= 1e-8 * frobenius(U.U);
}

namespace {

DomainSolution finish(const StretchTensor& U, const Vec3& ehat, DomainKind kind,
                      const Vec3& a, const Vec3& n, double coeff) {
  DomainSolution s;
  s.ehat = unitize(ehat);
  s.kind = kind;
  s.a = a;
  s.n = n;
  s.Uhat = reflect_variant(U, ehat);
  s.Rhat = recover_rotation(U.U + outer(a, n), s.Uhat);
  s.coeff = coeff;
  return s;
}

}  // namespace

DomainSolution type1_solution(const StretchTensor& U, const Vec3& ehat) {
  if (degenerate_axis(U, ehat))
    throw DegenerateAxis("type1_solution: axis reflects U onto itself");
  Vec3 e = unitize(ehat);
  Vec3 uie = inverse(U.U) * e;
  Vec3 a = (uie / dot(uie, uie) - U.U * e) * 2.0;
  return finish(U, e, DomainKind::TypeI, a, e, 0.0);
}

DomainSolution type2_solution(const StretchTensor& U, const Vec3& ehat) {
  if (degenerate_axis(U, ehat))
    throw DegenerateAxis("type2_solution: axis reflects U onto itself");
  Vec3 e = unitize(ehat);
  Vec3 ue = U.U * e;
  Vec3 n = (e - (U.U * ue) / dot(ue, ue)) * 2.0;
  return finish(U, e, DomainKind::TypeII, ue, n, 0.0);
}

CompoundPair compound_solutions(const StretchTensor& U, const Vec3& ehat1) {
  Vec3 e1 = unitize(ehat1);
  int perp = -1;
  for (int i = 0; i < 3; ++i)
    if (std::abs(dot(e1, U.eig.v[i])) < 1e-8) perp = i;
  if (perp < 0)
    throw NotCompound("compound_solutions: axis not perpendicular to an eigenvector");
  if (degenerate_axis(U, e1))
    throw DegenerateAxis("compound_solutions: axis reflects U onto itself");

  Vec3 v = U.eig.v[perp];
  Vec3 e2 = normalized(cross(v, e1));

  Mat3 u2 = U.U * U.U;
  Mat3 ui2 = inverse(u2);
  double xi = 2.0 * dot(e2, ui2 * e1) / dot(e1, ui2 * e1);
  double eta = -2.0 * dot(e2, u2 * e1) / dot(e1, u2 * e1);

  CompoundPair p;
  p.ehat2 = e2;
  p.sol1 = finish(U, e1, DomainKind::Compound1, (U.U * e2) * xi, e1, xi);
  p.sol2 = finish(U, e1, DomainKind::Compound2, (U.U * e1) * eta, e2, eta);
  return p;
}

DomainClass classify_domain(const StretchTensor& U, const Vec3& ehat) {
  if (degenerate_axis(U, ehat))
    throw DegenerateAxis("classify_domain: axis reflects U onto itself");
  Vec3 e = unitize(ehat);
  for (int i = 0; i < 3; ++i)
    if (std::abs(dot(e, U.eig.v[i])) < 1e-8) return DomainClass::Compound;
  return DomainClass::TypeI_II;
}

Vec3 canonical_axis(const Vec3& e) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(e[i]) > 1e-12) return e[i] < 0 ? -e : e;
  }
  return e;
}

AxisRecovery recover_axes(const StretchTensor& A, const StretchTensor& B) {
  double scale = std::abs(A.lambda3());
  for (int i = 0; i < 3; ++i)
    if (std::abs(A.eig.lambda[i] - B.eig.lambda[i]) > 1e-8 * scale)
      throw NotSimilar("recover_axes: spectra differ");

  Mat3 ai = inverse(A.U);
  Mat3 c = symmetrize(ai * B.U * B.U * ai);
  EigenSystem ce = sym_eigen(c);
  double mu1 = ce.lambda[0], mu3 = ce.lambda[2];
  const Vec3 &e1 = ce.v[0], &e2 = ce.v[1], &e3 = ce.v[2];

  AxisRecovery out;
  out.mu1 = mu1;
  out.mu3 = mu3;

  if (mu3 - 1.0 < 1e-8) {
    // B = A; any eigenvector of A generates the (trivial) reflection.
    out.status = AxisRecovery::EqualTensors;
    out.axes = {A.v1(), A.v2(), A.v3()};
    return out;
  }

  Mat3 a2 = A.U * A.U;
  double a2scale = frobenius(a2);
  double q11 = dot(e1, a2 * e1);
  double q33 = dot(e3, a2 * e3);
  double q21 = dot(e2, a2 * e1);
  double q23 = dot(e2, a2 * e3);
  double q31 = dot(e3, a2 * e1);

  // Structural identities of orthogonally-similar compatible pairs; their
  // failure means no two-fold rotation relates A and B.
  const double tol = 1e-7;
  if (std::abs(mu1 * mu3 - 1.0) > tol ||
      std::abs(q11 - mu3 * q33) > tol * a2scale ||
      std::abs(q21 * q21 - mu3 * q23 * q23) > tol * a2scale * a2scale)
    throw InconsistentInput("recover_axes: pair fails the similarity identities");

  double sq3 = std::sqrt(mu3);
  auto make_axis = [&](double s) {
    double d1 = 1.0 / std::sqrt(2.0 * (q11 + s * sq3 * q31));
    double d3 = s * sq3 * d1;
    return canonical_axis(A.U * e1 * d1 + A.U * e3 * d3);
  };

  if (std::abs(q21) < tol * a2scale && std::abs(q23) < tol * a2scale) {
    out.status = AxisRecovery::CompoundPairAxes;
    out.axes = {make_axis(+1.0), make_axis(-1.0)};
    return out;
  }

  double s = (std::abs(sq3 * q23 + q21) <= std::abs(sq3 * q23 - q21)) ? 1.0 : -1.0;
  out.status = AxisRecovery::SingleAxis;
  out.axes = {make_axis(s)};
  return out;
}

}  // namespace cofac
