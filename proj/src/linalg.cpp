#include "cofac/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace cofac {

double frobenius(const Mat3& a) {
  double s = 0;
  for (double v : a.m) s += v * v;
  return std::sqrt(s);
}

bool all_finite(const Mat3& a) {
  for (double v : a.m)
    if (!std::isfinite(v)) return false;
  return true;
}

Mat3 symmetrize(const Mat3& a) {
  Mat3 r = a;
  r(0, 1) = r(1, 0) = 0.5 * (a(0, 1) + a(1, 0));
  r(0, 2) = r(2, 0) = 0.5 * (a(0, 2) + a(2, 0));
  r(1, 2) = r(2, 1) = 0.5 * (a(1, 2) + a(2, 1));
  return r;
}

bool is_symmetric(const Mat3& a, double tol) {
  return std::abs(a(0, 1) - a(1, 0)) <= tol &&
         std::abs(a(0, 2) - a(2, 0)) <= tol &&
         std::abs(a(1, 2) - a(2, 1)) <= tol;
}

bool is_rotation(const Mat3& a, double tol) {
  Mat3 g = a.transposed() * a - Mat3::identity();
  return frobenius(g) <= tol && a.det() > 0;
}

Mat3 inverse(const Mat3& a) {
  double d = a.det();
  if (d == 0.0 || !std::isfinite(d)) throw InvalidInput("singular matrix");
  Mat3 c = cofactor_matrix(a);
  return c.transposed() * (1.0 / d);
}

Mat3 cofactor_matrix(const Mat3& a) {
  Mat3 c;
  for (int i = 0; i < 3; ++i) {
    int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
    for (int j = 0; j < 3; ++j) {
      int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      c(i, j) = a(i1, j1) * a(i2, j2) - a(i1, j2) * a(i2, j1);
    }
  }
  return c;
}

Mat3 two_fold(const Vec3& e) {
  double n = norm(e);
  if (n == 0.0) throw InvalidInput("two_fold: zero axis");
  Vec3 u = std::abs(n - 1.0) <= 1e-10 ? e : e / n;
  return outer(u, u) * 2.0 - Mat3::identity();
}

namespace {

// Characteristic polynomial p(x) = -x^3 + c2 x^2 + c1 x + c0 and derivative.
struct CharPoly {
  double c2, c1, c0;
  explicit CharPoly(const Mat3& s) {
    c2 = s.trace();
    double m00 = s(1, 1) * s(2, 2) - s(1, 2) * s(2, 1);
    double m11 = s(0, 0) * s(2, 2) - s(0, 2) * s(2, 0);
    double m22 = s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
    c1 = -(m00 + m11 + m22);
    c0 = s.det();
  }
  double eval(double x) const { return ((-x + c2) * x + c1) * x + c0; }
  double deriv(double x) const { return (-3 * x + 2 * c2) * x + c1; }
};

void jacobi_eigen(Mat3 s, std::array<double, 3>& w, Mat3& vcols) {
  vcols = Mat3::identity();
  for (int sweep = 0; sweep < 30; ++sweep) {
    double off = std::abs(s(0, 1)) + std::abs(s(0, 2)) + std::abs(s(1, 2));
    if (off == 0.0) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        double apq = s(p, q);
        if (apq == 0.0) continue;
        double theta = (s(q, q) - s(p, p)) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), sn = t * c;
        Mat3 g = Mat3::identity();
        g(p, p) = c; g(q, q) = c; g(p, q) = sn; g(q, p) = -sn;
        s = g.transposed() * s * g;
        s = symmetrize(s);
        vcols = vcols * g;
      }
    }
  }
  w = {s(0, 0), s(1, 1), s(2, 2)};
}

// Largest-magnitude component positive; ties broken by lowest index.
Vec3 sign_convention(const Vec3& v) {
  int best = 0;
  double mag = std::abs(v[0]);
  for (int i = 1; i < 3; ++i) {
    if (std::abs(v[i]) > mag + 1e-15) {
      mag = std::abs(v[i]);
      best = i;
    }
  }
  return v[best] < 0 ? -v : v;
}

Vec3 eigenvector_from_rows(const Mat3& m) {
  Vec3 c01 = cross(m.row(0), m.row(1));
  Vec3 c02 = cross(m.row(0), m.row(2));
  Vec3 c12 = cross(m.row(1), m.row(2));
  Vec3 best = c01;
  if (dot(c02, c02) > dot(best, best)) best = c02;
  if (dot(c12, c12) > dot(best, best)) best = c12;
  return best;
}

}  // namespace

EigenSystem sym_eigen(const Mat3& s_in) {
  if (!all_finite(s_in)) throw InvalidInput("sym_eigen: non-finite entries");
  Mat3 s = symmetrize(s_in);

  double scale = frobenius(s);
  EigenSystem es;
  if (scale == 0.0) {
    es.lambda = {0, 0, 0};
    es.v = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    return es;
  }

  // Trigonometric solution of the characteristic cubic.
  double mtr = s.trace() / 3.0;
  Mat3 k = s - Mat3::identity() * mtr;
  double p = 0;
  for (double v : k.m) p += v * v;
  p /= 6.0;
  std::array<double, 3> w;
  if (p <= 1e-30 * scale * scale) {
    w = {mtr, mtr, mtr};
  } else {
    double q = 0.5 * k.det();
    double disc = p * p * p - q * q;
    double phi = std::atan2(std::sqrt(std::max(0.0, disc)), q) / 3.0;
    double r = 2.0 * std::sqrt(p);
    w = {mtr + r * std::cos(phi + 2.0 * M_PI / 3.0),
         mtr + r * std::cos(phi - 2.0 * M_PI / 3.0),
         mtr + r * std::cos(phi)};
    // One Newton polish per root.
    CharPoly cp(s);
    for (double& x : w) {
      double d = cp.deriv(x);
      if (std::abs(d) > 1e-14 * scale * scale) x -= cp.eval(x) / d;
    }
  }
  std::sort(w.begin(), w.end());

  // Build an orthonormal frame from the outer eigenvectors; the middle one
  // follows by the cross product.
  auto assemble = [&](Vec3 v0, Vec3 v2, Mat3& cols) {
    double n0 = norm(v0), n2 = norm(v2);
    if (n0 == 0 || n2 == 0) return false;
    v0 = v0 / n0;
    v2 = v2 - v0 * dot(v2, v0);
    n2 = norm(v2);
    if (n2 < 1e-6) return false;
    v2 = v2 / n2;
    Vec3 v1 = cross(v2, v0);
    for (int j = 0; j < 3; ++j) {
      cols(j, 0) = v0[j];
      cols(j, 1) = v1[j];
      cols(j, 2) = v2[j];
    }
    return true;
  };
  auto residual_ok = [&](const std::array<double, 3>& lam, const Mat3& cols) {
    for (int j = 0; j < 3; ++j) {
      Vec3 v = cols.col(j);
      if (norm(s * v - v * lam[j]) > 1e-11 * scale) return false;
    }
    return true;
  };

  double gap = std::min(w[1] - w[0], w[2] - w[1]);
  Mat3 vcols;
  bool good = false;
  if (gap >= 1e-8 * scale) {
    Vec3 v0 = eigenvector_from_rows(s - Mat3::identity() * w[0]);
    Vec3 v2 = eigenvector_from_rows(s - Mat3::identity() * w[2]);
    good = assemble(v0, v2, vcols) && residual_ok(w, vcols);
  }
  if (!good) {
    // Jacobi sweeps: accurate for clustered spectra.
    Mat3 jcols;
    std::array<double, 3> jw;
    jacobi_eigen(s, jw, jcols);
    std::array<int, 3> idx = {0, 1, 2};
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return jw[a] < jw[b]; });
    w = {jw[idx[0]], jw[idx[1]], jw[idx[2]]};
    if (!assemble(jcols.col(idx[0]), jcols.col(idx[2]), vcols))
      throw InvalidInput("sym_eigen: eigenvector construction failed");
  }

  es.lambda = w;
  for (int j = 0; j < 3; ++j) es.v[j] = sign_convention(vcols.col(j));
  // Right-handed frame; the middle vector absorbs the flip.
  if (dot(cross(es.v[0], es.v[1]), es.v[2]) < 0) es.v[1] = -es.v[1];
  return es;
}

Mat3 recover_rotation(const Mat3& a, const Mat3& b, double tol) {
  Mat3 r = a * inverse(b);
  double ortho = frobenius(r.transposed() * r - Mat3::identity());
  if (ortho > tol || r.det() <= 0)
    throw NotCompatible("recover_rotation: quotient is not a rotation");
  // Newton iteration for the polar factor: R <- (R + R^-T)/2.
  for (int it = 0; it < 25; ++it) {
    Mat3 next = (r + inverse(r).transposed()) * 0.5;
    double step = frobenius(next - r);
    r = next;
    if (step < 1e-15) break;
  }
  return r;
}

Mat3 spd_sqrt(const Mat3& s) {
  EigenSystem es = sym_eigen(s);
  if (es.lambda[0] <= 0)
    throw InvalidInput("spd_sqrt: matrix is not positive-definite");
  Mat3 r = Mat3::zero();
  for (int i = 0; i < 3; ++i)
    r = r + outer(es.v[i], es.v[i]) * std::sqrt(es.lambda[i]);
  return symmetrize(r);
}

}  // namespace cofac
