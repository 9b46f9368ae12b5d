#include <doctest.h>

#include "cofac/linalg.hpp"
#include "support/gen.hpp"

using namespace cofac;

namespace {

Mat3 reconstruct(const EigenSystem& es) {
  Mat3 r = Mat3::zero();
  for (int i = 0; i < 3; ++i) r = r + outer(es.v[i], es.v[i]) * es.lambda[i];
  return r;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("sym_eigen on a diagonal matrix") {
  Mat3 s = Mat3::zero();
  s(0, 0) = 0.8989;
  s(1, 1) = 1.0062;
  s(2, 2) = 1.1098;
  EigenSystem es = sym_eigen(s);
  CHECK(es.lambda[0] == doctest::Approx(0.8989).epsilon(1e-12));
  CHECK(es.lambda[1] == doctest::Approx(1.0062).epsilon(1e-12));
  CHECK(es.lambda[2] == doctest::Approx(1.1098).epsilon(1e-12));
  CHECK(norm(es.v[0] - Vec3{1, 0, 0}) < 1e-12);
  CHECK(norm(es.v[1] - Vec3{0, 1, 0}) < 1e-12);
  CHECK(norm(es.v[2] - Vec3{0, 0, 1}) < 1e-12);
}

TEST_CASE("middle eigenvalue of the CuAlMn stretch") {
  Mat3 u{{1.1098, 0.0279, 0, 0.0279, 1.0062, 0, 0, 0, 0.8989}};
  EigenSystem es = sym_eigen(u);
  CHECK(std::abs(es.lambda[1] - 1.0) == doctest::Approx(0.0008).epsilon(0.25));
  CHECK(std::abs(std::abs(es.lambda[1] - 1.0) - 0.0008) < 2e-4);
}

TEST_CASE("eigen reconstruction over random symmetric matrices") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 1000; ++trial) {
    Mat3 s = gen::random_symmetric(rng);
    EigenSystem es = sym_eigen(s);
    double scale = frobenius(s);
    CHECK(frobenius(symmetrize(s) - reconstruct(es)) <=
          1e-10 * std::max(1.0, scale));
    // orthonormality and handedness
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(dot(es.v[i], es.v[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
    CHECK(dot(cross(es.v[0], es.v[1]), es.v[2]) == doctest::Approx(1.0).epsilon(1e-12));
    // eigenvector residuals
    for (int i = 0; i < 3; ++i)
      CHECK(norm(symmetrize(s) * es.v[i] - es.v[i] * es.lambda[i]) <=
            1e-10 * std::max(1.0, scale));
  }
}

TEST_CASE("sym_eigen near-degenerate spectra via the Jacobi path") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    Mat3 r = gen::random_rotation(rng);
    Mat3 d = Mat3::zero();
    d(0, 0) = 1.0;
    d(1, 1) = 1.0 + 3e-9;  // below the analytic-path gap threshold
    d(2, 2) = 1.7;
    Mat3 s = symmetrize(r * d * r.transposed());
    EigenSystem es = sym_eigen(s);
    for (int i = 0; i < 3; ++i)
      CHECK(norm(s * es.v[i] - es.v[i] * es.lambda[i]) < 1e-9);
    CHECK(std::abs(dot(es.v[0], es.v[1])) < 1e-12);
  }
}

TEST_CASE("sym_eigen rejects non-finite input") {
  Mat3 s = Mat3::identity();
  s(1, 2) = s(2, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(sym_eigen(s), InvalidInput);
}

TEST_CASE("deterministic eigenvector sign convention") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    Mat3 s = gen::random_spd(rng);
    EigenSystem es = sym_eigen(s);
    for (int i : {0, 2}) {  // v1 and v3 carry the convention unconditionally
      int big = 0;
      for (int k = 1; k < 3; ++k)
        if (std::abs(es.v[i][k]) > std::abs(es.v[i][big]) + 1e-15) big = k;
      CHECK(es.v[i][big] > 0);
    }
  }
}

TEST_CASE("cofactor matrix basics") {
  CHECK(frobenius(cofactor_matrix(Mat3::identity()) - Mat3::identity()) == 0);
  Mat3 d = Mat3::zero();
  d(0, 0) = 2;
  d(1, 1) = 3;
  d(2, 2) = 5;
  Mat3 c = cofactor_matrix(d);
  CHECK(c(0, 0) == 15);
  CHECK(c(1, 1) == 10);
  CHECK(c(2, 2) == 6);
  CHECK(std::abs(c(0, 1)) + std::abs(c(1, 2)) == 0);
}

TEST_CASE("cofactor identity A cof(A)^T = det(A) I, singular included") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    Mat3 a = gen::random_symmetric(rng, 2.0);
    for (int i = 0; i < 3; ++i)
      a(0, i) = a(0, i) * 0.5 + a(1, i) * 0.5 * (trial % 2);  // sometimes rank-deficient
    Mat3 lhs = a * cofactor_matrix(a).transposed();
    Mat3 rhs = Mat3::identity() * a.det();
    CHECK(frobenius(lhs - rhs) < 1e-12 * std::max(1.0, frobenius(a) * frobenius(a)));
  }
}

TEST_CASE("two_fold basics and eigen-action") {
  Mat3 q = two_fold(Vec3{1, 0, 0});
  CHECK(q(0, 0) == doctest::Approx(1.0));
  CHECK(q(1, 1) == doctest::Approx(-1.0));
  CHECK(q(2, 2) == doctest::Approx(-1.0));

  Mat3 q2 = two_fold(Vec3{1, 1, 0});
  Mat3 expect{{0, 1, 0, 1, 0, 0, 0, 0, -1}};
  CHECK(frobenius(q2 - expect) < 1e-15);

  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    Vec3 e = gen::random_unit(rng);
    Mat3 q3 = two_fold(e);
    CHECK(frobenius(q3 * q3 - Mat3::identity()) < 1e-14);
    CHECK(q3.det() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(norm(q3 * e - e) < 1e-14);
    Vec3 w = normalized(cross(e, gen::random_unit(rng)));
    CHECK(norm(q3 * w + w) < 1e-13);
  }
  CHECK_THROWS_AS(two_fold(Vec3{0, 0, 0}), InvalidInput);
}

TEST_CASE("recover_rotation identity, forward and twin-equation cases") {
  std::mt19937_64 rng(53);
  Mat3 b = gen::random_spd(rng);
  CHECK(frobenius(recover_rotation(b, b) - Mat3::identity()) < 1e-12);

  for (int trial = 0; trial < 200; ++trial) {
    Mat3 r0 = gen::random_rotation(rng);
    Mat3 bb = gen::random_spd(rng);
    Mat3 r = recover_rotation(r0 * bb, bb);
    CHECK(frobenius(r - r0) < 1e-12);
    CHECK(is_rotation(r, 1e-12));
  }

  // twin-equation oracle: A = U + a(x)n from a valid twin, B = Uhat
  for (int trial = 0; trial < 100; ++trial) {
    StretchTensor u(gen::random_spd(rng));
    Vec3 e = gen::random_unit(rng);
    if (degenerate_axis(u, e)) continue;
    DomainSolution s = type1_solution(u, e);
    Mat3 rhat = recover_rotation(u.U + outer(s.a, s.n), s.Uhat);
    CHECK(frobenius(rhat * s.Uhat - u.U - outer(s.a, s.n)) < 1e-10);
  }

  Mat3 skewed = Mat3::identity();
  skewed(0, 1) = 0.2;
  CHECK_THROWS_AS(recover_rotation(skewed, Mat3::identity()), NotCompatible);
}

TEST_CASE("spd_sqrt squares back") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    Mat3 s = gen::random_spd(rng);
    Mat3 r = spd_sqrt(s);
    CHECK(frobenius(r * r - s) < 1e-11);
  }
}

}  // TEST_SUITE
