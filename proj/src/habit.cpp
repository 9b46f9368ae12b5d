#include "cofac/habit.hpp"

#include <algorithm>
#include <cmath>

namespace cofac {

Mat3 laminate_gram(const Mat3& U, const Vec3& a, const Vec3& n, double f) {
  Mat3 left = U + outer(n, a) * f;
  Mat3 right = U + outer(a, n) * f;
  return symmetrize(left * right);
}

double g_function(const Mat3& U, const Vec3& a, const Vec3& n, double f) {
  return (laminate_gram(U, a, n, f) - Mat3::identity()).det();
}

namespace {

struct BmPair {
  Vec3 b, m;
};

// Shape and normal factors from the outer stretches and eigenvectors (rho = 1).
BmPair bm_from_eigs(double l1, double l3, const Vec3& v1, const Vec3& v3,
                    int kappa) {
  double su1 = std::sqrt(std::max(0.0, 1.0 - l1 * l1));
  double su3 = std::sqrt(std::max(0.0, l3 * l3 - 1.0));
  double den = std::sqrt(l3 * l3 - l1 * l1);
  BmPair p;
  p.b = (v1 * (l3 * su1) + v3 * (kappa * l1 * su3)) / den;
  p.m = (v1 * (-su1) + v3 * (kappa * su3)) * ((l3 - l1) / den);
  return p;
}

HabitSolution make_solution(double l1, double l3, const Vec3& v1,
                            const Vec3& v3, int kappa, const Mat3& F,
                            bool double_root) {
  BmPair p = bm_from_eigs(l1, l3, v1, v3, kappa);
  HabitSolution h;
  h.kappa = kappa;
  h.b = p.b;
  h.m = p.m;
  h.lambda1f = l1;
  h.lambda3f = l3;
  h.double_root = double_root;
  h.R = recover_rotation(Mat3::identity() + outer(p.b, p.m), F);
  h.residual = frobenius(h.R * F - Mat3::identity() - outer(p.b, p.m));
  return h;
}

}  // namespace

MidplaneResult midplane_solutions(const Mat3& M, double tol_mid) {
  EigenSystem es = sym_eigen(symmetrize(M));
  if (es.lambda[0] <= 0)
    throw InvalidInput("midplane_solutions: matrix is not positive-definite");

  MidplaneResult out;
  out.mid_residual = std::sqrt(es.lambda[1]) - 1.0;

  if (es.lambda[2] - es.lambda[0] < 1e-8 * es.lambda[2])
    throw Degenerate("midplane_solutions: repeated outer eigenvalues");
  if (std::abs(out.mid_residual) > tol_mid) return out;

  double l1 = std::sqrt(es.lambda[0]);
  double l3 = std::sqrt(es.lambda[2]);
  // Principal factor with the middle stretch projected to exactly 1.
  Mat3 sq = outer(es.v[0], es.v[0]) * l1 + outer(es.v[1], es.v[1]) +
            outer(es.v[2], es.v[2]) * l3;

  double su1 = std::sqrt(std::max(0.0, 1.0 - l1 * l1));
  double su3 = std::sqrt(std::max(0.0, l3 * l3 - 1.0));
  bool dbl = su1 < 1e-5 || su3 < 1e-5;
  for (int kappa : {+1, -1}) {
    out.solutions.push_back(
        make_solution(l1, l3, es.v[0], es.v[2], kappa, sq, dbl));
    if (dbl) break;  // the two branches coincide
  }
  return out;
}

std::vector<HabitSolution> habit_solutions(const Mat3& U, const Vec3& a,
                                           const Vec3& n, double f,
                                           double tol_mid) {
  Mat3 cf = laminate_gram(U, a, n, f);
  EigenSystem es = sym_eigen(cf);
  if (es.lambda[0] <= 0)
    throw InvalidInput("habit_solutions: laminate Gram not positive-definite");
  double midres = std::sqrt(std::max(0.0, es.lambda[1])) - 1.0;
  if (es.lambda[2] - es.lambda[0] < 1e-8 * es.lambda[2])
    throw Degenerate("habit_solutions: repeated outer eigenvalues");
  if (std::abs(midres) > tol_mid)
    throw NoHabitPlane("habit_solutions: middle stretch of C_f is not 1",
                       midres, g_function(U, a, n, f));

  Mat3 F = U + outer(a, n) * f;
  double l1 = std::sqrt(es.lambda[0]);
  double l3 = std::sqrt(es.lambda[2]);
  double su1 = std::sqrt(std::max(0.0, 1.0 - l1 * l1));
  double su3 = std::sqrt(std::max(0.0, l3 * l3 - 1.0));
  bool dbl = su1 < 1e-5 || su3 < 1e-5;

  std::vector<HabitSolution> out;
  for (int kappa : {+1, -1}) {
    HabitSolution h = make_solution(l1, l3, es.v[0], es.v[2], kappa, F, dbl);
    h.f = f;
    out.push_back(h);
    if (dbl) break;
  }
  return out;
}

namespace {

struct TrackedEigen {
  double l1, l3;
  Vec3 v1, v3;
};

HabitSweep assemble_sweep(const Mat3& U, const Vec3& a, const Vec3& n,
                          const std::vector<double>& grid,
                          std::vector<TrackedEigen>& eigs, bool parallel) {
  const int npts = static_cast<int>(grid.size());
  // Sequential sign tracking: v_i(f_k) . v_i(f_{k-1}) > 0.
  for (int k = 1; k < npts; ++k) {
    if (dot(eigs[k].v1, eigs[k - 1].v1) < 0) eigs[k].v1 = -eigs[k].v1;
    if (dot(eigs[k].v3, eigs[k - 1].v3) < 0) eigs[k].v3 = -eigs[k].v3;
  }

  HabitSweep sweep;
  sweep.family_plus.resize(npts);
  sweep.family_minus.resize(npts);
#pragma omp parallel for schedule(static) if (parallel)
  for (int k = 0; k < npts; ++k) {
    Mat3 F = U + outer(a, n) * grid[k];
    for (int kappa : {+1, -1}) {
      HabitSolution h = make_solution(eigs[k].l1, eigs[k].l3, eigs[k].v1,
                                      eigs[k].v3, kappa, F, false);
      h.f = grid[k];
      (kappa > 0 ? sweep.family_plus : sweep.family_minus)[k] = h;
    }
  }
  for (int k = 1; k < npts; ++k) {
    sweep.max_R_step_plus =
        std::max(sweep.max_R_step_plus,
                 frobenius(sweep.family_plus[k].R - sweep.family_plus[k - 1].R));
    sweep.max_R_step_minus = std::max(
        sweep.max_R_step_minus,
        frobenius(sweep.family_minus[k].R - sweep.family_minus[k - 1].R));
  }
  return sweep;
}

TrackedEigen eigen_at(const Mat3& U, const Vec3& a, const Vec3& n, double f,
                      double tol_mid) {
  EigenSystem es = sym_eigen(laminate_gram(U, a, n, f));
  double midres = std::sqrt(std::max(0.0, es.lambda[1])) - 1.0;
  if (std::abs(midres) > tol_mid)
    throw NoHabitPlane("sweep_habit: middle stretch of C_f is not 1", midres,
                       g_function(U, a, n, f));
  return {std::sqrt(es.lambda[0]), std::sqrt(es.lambda[2]), es.v[0], es.v[2]};
}

}  // namespace

HabitSweep sweep_habit(const Mat3& U, const Vec3& a, const Vec3& n,
                       const std::vector<double>& grid, double tol_mid) {
  const int npts = static_cast<int>(grid.size());
  if (npts == 0) throw InvalidInput("sweep_habit: empty grid");
  std::vector<TrackedEigen> eigs(npts);
  bool failed = false;
  double fail_res = 0, fail_g = 0;
#pragma omp parallel for schedule(static)
  for (int k = 0; k < npts; ++k) {
    try {
      eigs[k] = eigen_at(U, a, n, grid[k], tol_mid);
    } catch (const NoHabitPlane& e) {
#pragma omp critical
      {
        failed = true;
        fail_res = e.residual;
        fail_g = e.g_value;
      }
    }
  }
  if (failed)
    throw NoHabitPlane("sweep_habit: middle stretch of C_f is not 1", fail_res,
                       fail_g);
  return assemble_sweep(U, a, n, grid, eigs, true);
}

HabitSweep sweep_habit_serial(const Mat3& U, const Vec3& a, const Vec3& n,
                              const std::vector<double>& grid, double tol_mid) {
  const int npts = static_cast<int>(grid.size());
  if (npts == 0) throw InvalidInput("sweep_habit: empty grid");
  std::vector<TrackedEigen> eigs(npts);
  for (int k = 0; k < npts; ++k) eigs[k] = eigen_at(U, a, n, grid[k], tol_mid);
  return assemble_sweep(U, a, n, grid, eigs, false);
}

}  // namespace cofac
