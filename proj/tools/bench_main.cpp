// Timing comparison between the OpenMP kernels and their serial references:
// habit sweeps over a dense volume-fraction grid and point-cloud rendering.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cofac/scene.hpp"

using namespace cofac;

namespace {

double seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// A Type II system satisfying the cofactor conditions exactly.
struct System {
  StretchTensor U{Mat3::identity()};
  Vec3 ehat;
  DomainSolution twin;
};

System make_system() {
  double l1 = 0.93, l3 = 1.09;
  Mat3 u = Mat3::zero();
  u(0, 0) = l1;
  u(1, 1) = 1.0;
  u(2, 2) = l3;
  StretchTensor U(u);
  double c1 = std::sqrt(l3 * l3 - 1.0), c3 = std::sqrt(1.0 - l1 * l1);
  double tmax = 1.0 / std::sqrt(c1 * c1 + c3 * c3);
  double t = 0.6 * tmax;
  Vec3 e = Vec3{c1, 0, c3} * t;
  e.y = std::sqrt(1.0 - t * t * (c1 * c1 + c3 * c3));
  System s{U, e, type2_solution(U, e)};
  return s;
}

template <class F>
double time_best_of(int reps, F&& fn) {
  double best = 1e100;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, seconds(t0));
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  int grid = argc > 1 ? std::atoi(argv[1]) : 200000;
  int density = argc > 2 ? std::atoi(argv[2]) : 700;

#ifdef _OPENMP
  std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
  std::printf("openmp: not enabled (serial build)\n");
#endif

  System s = make_system();
  std::vector<double> fs(grid + 1);
  for (int i = 0; i <= grid; ++i) fs[i] = static_cast<double>(i) / grid;

  double t_serial = time_best_of(3, [&] {
    auto sw = sweep_habit_serial(s.U.U, s.twin.a, s.twin.n, fs);
    volatile double sink = sw.family_plus.back().b.x;
    (void)sink;
  });
  double t_par = time_best_of(3, [&] {
    auto sw = sweep_habit(s.U.U, s.twin.a, s.twin.n, fs);
    volatile double sink = sw.family_plus.back().b.x;
    (void)sink;
  });
  std::printf("sweep_habit       %8d pts  serial %8.3f ms   omp %8.3f ms   speedup %.2fx\n",
              grid + 1, 1e3 * t_serial, 1e3 * t_par, t_serial / t_par);

  MicrostructureScene scene = parallel_interface(s.U, s.ehat, 0.3, 8);
  double r_serial = time_best_of(3, [&] {
    auto pts = render_point_cloud_serial(scene, density);
    volatile double sink = pts.back().y.x;
    (void)sink;
  });
  double r_par = time_best_of(3, [&] {
    auto pts = render_point_cloud(scene, density);
    volatile double sink = pts.back().y.x;
    (void)sink;
  });
  long npts = 6L * (density + 1) * (density + 1);
  std::printf("render_point_cloud %7ld pts  serial %8.3f ms   omp %8.3f ms   speedup %.2fx\n",
              npts, 1e3 * r_serial, 1e3 * r_par, r_serial / r_par);
  return 0;
}
