#pragma once

// Crystallographic theory: solve R [f(U + a(x)n) + (1-f)U] - I = b (x) m for
// a given volume fraction, and sweep f with continuous eigenvector tracking.

#include <vector>

#include "cofac/twin.hpp"

namespace cofac {

struct HabitSolution {
  double f = 0;
  int kappa = +1;          // branch label, sign of the v3 coefficient of b
  Mat3 R;
  Vec3 b;
  Vec3 m;
  double lambda1f = 0, lambda3f = 0;  // outer stretches of C_f, lam1<=1<=lam3
  bool double_root = false;           // repeated solution (only at f = 1/2)
  double residual = 0;                // ||R(U + f a(x)n) - I - b(x)m||
};

// C_f = (U + f n(x)a)(U + f a(x)n), symmetric positive-definite.
Mat3 laminate_gram(const Mat3& U, const Vec3& a, const Vec3& n, double f);

// g(f) = det(C_f - I); vanishes identically on [0,1] iff CC1 and CC2 hold.
double g_function(const Mat3& U, const Vec3& a, const Vec3& n, double f);

// Rank-one factorizations (I + b(x)m)^T (I + b(x)m) = M for a symmetric
// positive-definite M whose middle eigenvalue is 1 within tol_mid.  Returns
// zero or two (one when the outer eigenvalues hit 1, the f = 1/2 boundary).
struct MidplaneResult {
  std::vector<HabitSolution> solutions;  // f field unset (0)
  double mid_residual = 0;               // sqrt(middle eigenvalue of M) - 1
};

MidplaneResult midplane_solutions(const Mat3& M, double tol_mid = 1e-6);

// Habit solutions at one volume fraction; throws NoHabitPlane when the
// middle eigenvalue of C_f is away from 1.
std::vector<HabitSolution> habit_solutions(const Mat3& U, const Vec3& a,
                                           const Vec3& n, double f,
                                           double tol_mid = 1e-6);

// Two families over a sorted f grid, with eigenvectors of C_f tracked so
// that b, m, R vary continuously along each family.
struct HabitSweep {
  std::vector<HabitSolution> family_plus;   // kappa = +1 at the first grid point
  std::vector<HabitSolution> family_minus;
  double max_R_step_plus = 0;   // largest Frobenius step between neighbours
  double max_R_step_minus = 0;
};

HabitSweep sweep_habit(const Mat3& U, const Vec3& a, const Vec3& n,
                       const std::vector<double>& grid, double tol_mid = 1e-6);

// Serial reference for the OpenMP sweep; kept for testing and benchmarks.
HabitSweep sweep_habit_serial(const Mat3& U, const Vec3& a, const Vec3& n,
                              const std::vector<double>& grid,
                              double tol_mid = 1e-6);

}  // namespace cofac
