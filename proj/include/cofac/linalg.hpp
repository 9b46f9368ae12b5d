#pragma once

// Exact-contract 3x3 kernels the rest of the library builds on: a small
// value-type vector/matrix pair, a deterministic symmetric eigensolver,
// cofactor matrices, two-fold rotations and nearest-rotation recovery.

#include <array>
#include <cmath>

#include "cofac/errors.hpp"

namespace cofac {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  double& operator[](int i) { return (&x)[i]; }
  double operator[](int i) const { return (&x)[i]; }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) {
  double n = norm(v);
  if (n == 0.0) throw InvalidInput("cannot normalize the zero vector");
  return v / n;
}

// Row-major 3x3 real matrix.
struct Mat3 {
  std::array<double, 9> m{};

  double& operator()(int i, int j) { return m[3 * i + j]; }
  double operator()(int i, int j) const { return m[3 * i + j]; }

  static Mat3 identity() { return {{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }
  static Mat3 zero() { return {}; }

  Vec3 row(int i) const { return {m[3 * i], m[3 * i + 1], m[3 * i + 2]}; }
  Vec3 col(int j) const { return {m[j], m[3 + j], m[6 + j]}; }

  Mat3 operator+(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
    return r;
  }
  Mat3 operator-(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = m[i] - o.m[i];
    return r;
  }
  Mat3 operator*(double s) const {
    Mat3 r;
    for (int i = 0; i < 9; ++i) r.m[i] = m[i] * s;
    return r;
  }
  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j) +
                  (*this)(i, 2) * o(2, j);
    return r;
  }
  Vec3 operator*(const Vec3& v) const {
    return {dot(row(0), v), dot(row(1), v), dot(row(2), v)};
  }

  Mat3 transposed() const {
    return {{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
  }

  double trace() const { return m[0] + m[4] + m[8]; }

  double det() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) -
           m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  }
};

inline Mat3 operator*(double s, const Mat3& a) { return a * s; }

inline Mat3 outer(const Vec3& a, const Vec3& b) {
  return {{a.x * b.x, a.x * b.y, a.x * b.z,
           a.y * b.x, a.y * b.y, a.y * b.z,
           a.z * b.x, a.z * b.y, a.z * b.z}};
}

double frobenius(const Mat3& a);
bool all_finite(const Mat3& a);
Mat3 symmetrize(const Mat3& a);
bool is_symmetric(const Mat3& a, double tol);
bool is_rotation(const Mat3& a, double tol);
Mat3 inverse(const Mat3& a);

// (cof A)_ij = (-1)^{i+j} det(minor_ij); satisfies A (cof A)^T = det(A) I.
Mat3 cofactor_matrix(const Mat3& a);

// Two-fold rotation -I + 2 e (x) e about the (normalized) axis e.
Mat3 two_fold(const Vec3& e);

// Ordered eigendecomposition of a symmetric matrix.
struct EigenSystem {
  std::array<double, 3> lambda{};  // ascending
  std::array<Vec3, 3> v{};         // orthonormal, right-handed

  Mat3 frame() const {  // columns v1 v2 v3
    Mat3 f;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) f(i, j) = v[j][i];
    return f;
  }
};

// Closed-form symmetric eigensolver (trigonometric cubic with one Newton
// polish per root); falls back to Jacobi sweeps near degeneracy.  Eigenvalues
// ascend.  Sign convention: the largest-magnitude component of v1 and v3 is
// positive (ties to the lowest index); v2 follows the same rule but is
// negated when needed to make the frame right-handed.
EigenSystem sym_eigen(const Mat3& s);

// Nearest rotation to A*inv(B).  The quotient must already be orthogonal to
// within `tol`; it is then polished to a rotation accurate to 1e-12.
Mat3 recover_rotation(const Mat3& a, const Mat3& b, double tol = 1e-8);

// Principal square root of a symmetric positive-definite matrix.
Mat3 spd_sqrt(const Mat3& s);

}  // namespace cofac
