#include "cofac/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>

namespace cofac {

bool Region::contains(const Vec3& x, double tol) const {
  for (const auto& h : faces)
    if (dot(h.normal, x) > h.offset + tol) return false;
  return true;
}

double Region::violation(const Vec3& x) const {
  double worst = 0;
  for (const auto& h : faces)
    worst = std::max(worst, dot(h.normal, x) - h.offset);
  return worst;
}

int MicrostructureScene::find_region(const Vec3& x, double tol) const {
  int best = -1;
  for (int i = 0; i < static_cast<int>(regions.size()); ++i) {
    if (!regions[i].contains(x, tol)) continue;
    if (best < 0 || regions[i].label < regions[best].label) best = i;
  }
  if (best >= 0) return best;
  double worst = std::numeric_limits<double>::max();
  for (int i = 0; i < static_cast<int>(regions.size()); ++i) {
    double v = regions[i].violation(x);
    if (v < worst) {
      worst = v;
      best = i;
    }
  }
  return best;
}

double well_distance(const Mat3& F, const Mat3& W) {
  Mat3 x = F * inverse(W);
  if (x.det() <= 0) return frobenius(F - W);
  for (int it = 0; it < 40; ++it) {
    Mat3 next = (x + inverse(x).transposed()) * 0.5;
    double step = frobenius(next - x);
    x = next;
    if (step < 1e-15) break;
  }
  return frobenius(F - x * W);
}

namespace {

struct SceneBuilder {
  MicrostructureScene scene;

  int add_region(std::vector<HalfSpace> faces, const Mat3& F, int label,
                 std::string tag) {
    Region r;
    r.faces = std::move(faces);
    r.F = F;
    r.label = label;
    r.tag = std::move(tag);
    scene.regions.push_back(std::move(r));
    return static_cast<int>(scene.regions.size()) - 1;
  }

  void add_interface(int a, int b, const Vec3& unit_normal, double offset) {
    Interface f;
    f.region_a = a;
    f.region_b = b;
    f.normal = unit_normal;
    f.offset = offset;
    scene.interfaces.push_back(f);
  }

  // Fill jump vectors and residuals, then propagate translations over the
  // interface graph; cycles measure the closure error of the construction.
  MicrostructureScene finalize(int root = 0) {
    auto& rs = scene.regions;
    auto& is = scene.interfaces;
    for (auto& f : is) {
      Mat3 d = rs[f.region_b].F - rs[f.region_a].F;
      f.jump = d * f.normal;
      f.residual = frobenius(d - outer(f.jump, f.normal));
    }
    std::vector<bool> seen(rs.size(), false);
    std::deque<int> queue{root};
    rs[root].t = Vec3{};
    seen[root] = true;
    double closure = 0;
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      for (const auto& f : is) {
        int other;
        Vec3 t_other;
        if (f.region_a == cur) {
          other = f.region_b;
          t_other = rs[cur].t - f.jump * f.offset;
        } else if (f.region_b == cur) {
          other = f.region_a;
          t_other = rs[cur].t + f.jump * f.offset;
        } else {
          continue;
        }
        if (!seen[other]) {
          rs[other].t = t_other;
          seen[other] = true;
          queue.push_back(other);
        } else {
          closure = std::max(closure, norm(rs[other].t - t_other));
        }
      }
    }
    scene.meta.max_closure_error = closure;
    return std::move(scene);
  }
};

struct Range {
  double lo = 0, hi = 0;
};

Range extent_over_cube(const Vec3& dir) {
  Range r;
  bool first = true;
  for (int c = 0; c < 8; ++c) {
    Vec3 corner{static_cast<double>(c & 1), static_cast<double>((c >> 1) & 1),
                static_cast<double>((c >> 2) & 1)};
    double v = dot(dir, corner);
    if (first) {
      r.lo = r.hi = v;
      first = false;
    } else {
      r.lo = std::min(r.lo, v);
      r.hi = std::max(r.hi, v);
    }
  }
  return r;
}

struct Segment {
  double lo, hi;
  bool reflected;  // carries the U + a(x)n gradient
};

// Alternating laminate segments over [lo, hi]; `frac` is the width share of
// the reflected variant within each period.
std::vector<Segment> laminate_segments(double lo, double hi, int bands,
                                       double frac) {
  int periods = std::max(1, (bands + 1) / 2);
  double p = (hi - lo) / periods;
  std::vector<Segment> seg;
  double u = lo;
  for (int i = 0; i < periods; ++i) {
    double w0 = (1.0 - frac) * p, w1 = frac * p;
    if (w0 > 1e-12) {
      seg.push_back({u, u + w0, false});
      u += w0;
    }
    if (w1 > 1e-12) {
      seg.push_back({u, u + w1, true});
      u += w1;
    }
  }
  seg.back().hi = hi;
  return seg;
}

struct HabitEndpoints {
  int sigma = +1, sigma_star = +1;
  HabitSolution h0, h1;  // chosen branches at f = 0 and f = 1
  double xi_b = 0;       // b1 = xi_b b0 (Type I pairing)
  double rotation_match = 0;
};

// Pick the f = 0 branch whose b (Type I) or m (Type II) annihilates `axis`
// and the f = 1 branch with the matching rotation.
HabitEndpoints endpoint_branches(const StretchTensor& U, const DomainSolution& s,
                                 const Vec3& axis, bool pick_by_b) {
  auto at0 = habit_solutions(U.U, s.a, s.n, 0.0, 1e-3);
  auto at1 = habit_solutions(U.U, s.a, s.n, 1.0, 1e-3);
  HabitEndpoints ep;
  double best = std::numeric_limits<double>::max();
  for (const auto& h : at0) {
    double v = std::abs(dot(pick_by_b ? h.b : h.m, axis));
    if (v < best) {
      best = v;
      ep.h0 = h;
      ep.sigma = h.kappa;
    }
  }
  best = std::numeric_limits<double>::max();
  for (const auto& h : at1) {
    double v = frobenius(h.R - ep.h0.R);
    if (v < best) {
      best = v;
      ep.h1 = h;
      ep.sigma_star = h.kappa;
    }
  }
  ep.rotation_match = best;
  ep.xi_b = dot(ep.h1.b, ep.h0.b) / dot(ep.h0.b, ep.h0.b);
  return ep;
}

}  // namespace

TripleJunctionResult triple_junction(const StretchTensor& U, const Vec3& ehat,
                                     const TripleJunctionOptions& opt) {
  CofactorReport rep = cofactor_report(U, ehat, opt.cc_tol);
  if (!rep.typeI_satisfied)
    throw NotSupercompatible(
        "triple_junction: cofactor conditions not met for Type I", rep);

  DomainSolution s = type1_solution(U, ehat);
  HabitEndpoints ep = endpoint_branches(U, s, normalized(s.ehat), true);

  TripleJunctionResult out;
  out.twin = s;
  out.sigma = ep.sigma;
  out.sigma_star = ep.sigma_star;
  out.rotation_match = ep.rotation_match;
  out.m0 = ep.h0.m;
  out.m1 = ep.h1.m;
  out.n_I = s.n;
  out.R0 = ep.h0.R;
  out.xi = ep.xi_b;
  Vec3 d = ep.h1.m * ep.xi_b - ep.h0.m;
  out.c = dot(d, s.n) / dot(s.n, s.n);

  Vec3 nh = normalized(s.n);
  Vec3 m0h = normalized(ep.h0.m);
  Vec3 m1h = normalized(ep.h1.m);
  out.coplanarity = std::abs(dot(cross(m0h, m1h), nh));

  // Zig-zag front: bands normal to n_I, each capped by its own habit facet;
  // consecutive facets meet in junction lines on the band boundaries.
  Vec3 ell = normalized(cross(m0h, m1h));
  Mat3 F_U = ep.h0.R * U.U;
  Mat3 F_Uh = ep.h0.R * (U.U + outer(s.a, s.n));

  Range nr = extent_over_cube(nh);
  auto segs = laminate_segments(nr.lo, nr.hi, opt.bands, opt.band_fraction);
  int nbands = static_cast<int>(segs.size());

  Vec3 center{0.5, 0.5, 0.5};
  Vec3 q = center + nh * (segs[0].lo - dot(nh, center));

  SceneBuilder b;
  std::vector<int> mart(nbands), aust(nbands);
  std::vector<Vec3> mu(nbands);
  std::vector<double> doff(nbands);
  for (int i = 0; i < nbands; ++i) {
    bool refl = segs[i].reflected;
    mu[i] = refl ? m1h : m0h;
    doff[i] = dot(mu[i], q);
    std::vector<HalfSpace> slab = {{nh, segs[i].hi}, {-1.0 * nh, -segs[i].lo}};
    auto mfaces = slab;
    mfaces.push_back({mu[i], doff[i]});
    auto afaces = slab;
    afaces.push_back({-1.0 * mu[i], -doff[i]});
    mart[i] = b.add_region(mfaces, refl ? F_Uh : F_U, refl ? 2 : 1,
                           refl ? "variant-Uhat" : "variant-U");
    aust[i] = b.add_region(afaces, Mat3::identity(), 0, "austenite");
    Vec3 u = cross(mu[i], ell);
    double denom = dot(nh, u);
    if (std::abs(denom) < 1e-12)
      throw InvalidInput("triple_junction: habit facet parallel to twin plane");
    q = q + u * ((segs[i].hi - dot(nh, q)) / denom);
  }
  for (int i = 0; i < nbands; ++i) {
    b.add_interface(aust[i], mart[i], mu[i], doff[i]);
    if (i + 1 < nbands) {
      b.add_interface(mart[i], mart[i + 1], nh, segs[i].hi);
      b.add_interface(aust[i], aust[i + 1], nh, segs[i].hi);
    }
  }
  b.scene.meta.kind = "triple_junction";
  b.scene.meta.fineness = nbands;
  out.scene = b.finalize(aust[0]);
  return out;
}

MicrostructureScene parallel_interface(const StretchTensor& U, const Vec3& ehat,
                                       double f, int bands,
                                       const ParallelInterfaceOptions& opt) {
  if (f < 0 || f > 1) throw InvalidInput("parallel_interface: f outside [0,1]");
  CofactorReport rep = cofactor_report(U, ehat, opt.cc_tol);
  if (!rep.typeII_satisfied)
    throw NotSupercompatible(
        "parallel_interface: cofactor conditions not met for Type II", rep);

  DomainSolution s = type2_solution(U, ehat);
  HabitEndpoints ep = endpoint_branches(U, s, normalized(s.ehat), false);

  Vec3 mh = normalized(ep.h0.m);
  Mat3 F_U = ep.h0.R * U.U;
  Mat3 F_Uh = ep.h0.R * (U.U + outer(s.a, s.n));

  Range mr = extent_over_cube(mh);
  double d0 = mr.lo + 0.7 * (mr.hi - mr.lo);  // habit plane location

  SceneBuilder b;
  int aust = b.add_region({{-1.0 * mh, -d0}}, Mat3::identity(), 0, "austenite");
  auto segs = laminate_segments(mr.lo, d0, bands, f);
  int prev = aust;
  for (int i = static_cast<int>(segs.size()) - 1; i >= 0; --i) {
    bool refl = segs[i].reflected;
    int id = b.add_region({{mh, segs[i].hi}, {-1.0 * mh, -segs[i].lo}},
                          refl ? F_Uh : F_U, refl ? 2 : 1,
                          refl ? "variant-Uhat" : "variant-U");
    b.add_interface(prev, id, mh, segs[i].hi);
    prev = id;
  }
  b.scene.meta.kind = "parallel_interface";
  b.scene.meta.f = f;
  b.scene.meta.fineness = static_cast<int>(segs.size());
  return b.finalize(aust);
}

MicrostructureScene crystallographic_scene(const StretchTensor& U,
                                           const Vec3& ehat, double f, int k,
                                           TwinChoice twin, int kappa,
                                           double tol_mid) {
  if (f < 0 || f > 1)
    throw InvalidInput("crystallographic_scene: f outside [0,1]");
  DomainSolution s = [&] {
    switch (twin) {
      case TwinChoice::TypeI: return type1_solution(U, ehat);
      case TwinChoice::TypeII: return type2_solution(U, ehat);
      case TwinChoice::Compound1: return compound_solutions(U, ehat).sol1;
      case TwinChoice::Compound2: return compound_solutions(U, ehat).sol2;
      default:
        return classify_domain(U, ehat) == DomainClass::Compound
                   ? compound_solutions(U, ehat).sol1
                   : type1_solution(U, ehat);
    }
  }();

  auto habits = habit_solutions(U.U, s.a, s.n, f, tol_mid);  // NoHabitPlane
  const HabitSolution& h =
      (habits.size() > 1 && kappa < 0) ? habits[1] : habits[0];

  Mat3 Fbar = h.R * (U.U + outer(s.a, s.n) * f);
  Mat3 F_U = h.R * U.U;
  Mat3 F_Uh = h.R * (U.U + outer(s.a, s.n));
  Vec3 mh = normalized(h.m);
  Vec3 nh = normalized(s.n);
  Vec3 atil = (h.R * s.a) * norm(s.n);  // F_Uh - F_U = atil (x) nh

  Range mr = extent_over_cube(mh);
  double d0 = mr.lo + 0.7 * (mr.hi - mr.lo);

  SceneBuilder b;
  int aust = b.add_region({{-1.0 * mh, -d0}}, Mat3::identity(), 0, "austenite");

  if (norm(cross(mh, nh)) < 1e-8) {
    // Twin planes parallel to the habit plane: no transition layer arises.
    auto segs = laminate_segments(mr.lo, d0, k, f);
    int prev = aust;
    for (int i = static_cast<int>(segs.size()) - 1; i >= 0; --i) {
      bool refl = segs[i].reflected;
      int id = b.add_region({{mh, segs[i].hi}, {-1.0 * mh, -segs[i].lo}},
                            refl ? F_Uh : F_U, refl ? 2 : 1,
                            refl ? "variant-Uhat" : "variant-U");
      b.add_interface(prev, id, mh, segs[i].hi);
      prev = id;
    }
    b.scene.meta.kind = "crystallographic";
    b.scene.meta.f = f;
    b.scene.meta.fineness = static_cast<int>(segs.size());
    return b.finalize(aust);
  }

  const double delta = (d0 - mr.lo) / std::max(1, k);  // layer width
  const double v1 = d0 - delta;

  // Sawtooth profile psi over u = nh . x: the laminate deformation is
  // y = Fbar x + psi(u) atil, dimensionless slopes -f and (1-f); the layer
  // tapers psi off linearly towards the habit plane on a triangulated mesh.
  Range nr = extent_over_cube(nh);
  auto segs = laminate_segments(nr.lo, nr.hi, k, f);

  int prev_lam = -1, prev_tur = -1;
  double psi = 0;
  for (const auto& sg : segs) {
    double slope = sg.reflected ? (1.0 - f) : -f;
    double psi0 = psi;
    double psi1 = psi0 + slope * (sg.hi - sg.lo);
    psi = psi1;

    Mat3 F_band = sg.reflected ? F_Uh : F_U;
    int label = sg.reflected ? 2 : 1;
    const char* tag = sg.reflected ? "variant-Uhat" : "variant-U";

    std::vector<HalfSpace> slab = {{nh, sg.hi}, {-1.0 * nh, -sg.lo}};
    auto lam_faces = slab;
    lam_faces.push_back({mh, v1});
    int lam = b.add_region(lam_faces, F_band, label, tag);

    // Diagonal plane through (u0, d0) and (u1, v1) in (u, v) coordinates:
    // da*u + dc*v = off, (da, dc) = (v1 - d0, -(u1 - u0)).
    double da = v1 - d0, dc = -(sg.hi - sg.lo);
    Vec3 diag_n = nh * da + mh * dc;
    double dlen = norm(diag_n);
    Vec3 diag_u = diag_n / dlen;
    double diag_off = (da * sg.lo + dc * d0) / dlen;

    // Lower-left triangle keeps the band slope; its psi tapers via the
    // left-edge value.  It lies on the >= side of the diagonal.
    auto tll_faces = slab;
    tll_faces.push_back({mh, d0});
    tll_faces.push_back({-1.0 * mh, -v1});
    tll_faces.push_back({-1.0 * diag_u, -diag_off});
    Mat3 F_tll = Fbar + outer(atil, nh * slope - mh * (psi0 / delta));
    int tll =
        b.add_region(tll_faces, F_tll, label, std::string(tag) + "-transition");

    // Upper-right triangle meets the austenite with zero oscillation.
    auto tur_faces = slab;
    tur_faces.push_back({mh, d0});
    tur_faces.push_back({-1.0 * mh, -v1});
    tur_faces.push_back({diag_u, diag_off});
    Mat3 F_tur = Fbar + outer(atil, mh * (-psi1 / delta));
    int tur =
        b.add_region(tur_faces, F_tur, label, std::string(tag) + "-transition");

    b.add_interface(lam, tll, mh, v1);
    b.add_interface(tll, tur, diag_u, diag_off);
    b.add_interface(tur, aust, mh, d0);
    if (prev_lam >= 0) {
      b.add_interface(prev_lam, lam, nh, sg.lo);
      b.add_interface(prev_tur, tll, nh, sg.lo);
    }
    prev_lam = lam;
    prev_tur = tur;
  }
  b.scene.meta.kind = "crystallographic";
  b.scene.meta.f = f;
  b.scene.meta.fineness = k;
  b.scene.meta.layer_width = delta;
  return b.finalize(aust);
}

namespace {

MicrostructureScene lens_scene(const StretchTensor& U, const DomainSolution& s,
                               const HabitEndpoints& ep, double opening) {
  Mat3 F_U = ep.h0.R * U.U;
  Mat3 F_Uh = ep.h0.R * (U.U + outer(s.a, s.n));
  Vec3 nh = normalized(s.n);
  Vec3 m0h = normalized(ep.h0.m);
  Vec3 m1h = normalized(ep.h1.m);
  Vec3 ell = normalized(cross(m0h, m1h));
  Vec3 tau = normalized(cross(ell, nh));
  Vec3 center{0.5, 0.5, 0.5};

  SceneBuilder b;
  double t0 = dot(nh, center);
  b.scene.meta.kind = "nucleation-austenite-in-martensite";
  b.scene.meta.opening = std::max(0.0, opening);
  if (opening <= 0) {
    // Growth endpoint: the lens has collapsed onto a plain twin pair.
    int r1 = b.add_region({{-1.0 * nh, -t0}}, F_U, 1, "variant-U");
    int r2 = b.add_region({{nh, t0}}, F_Uh, 2, "variant-Uhat");
    b.add_interface(r1, r2, nh, t0);
    return b.finalize(0);
  }

  Vec3 P = center + tau * (opening / 2.0);
  Vec3 Pm = center - tau * (opening / 2.0);
  // Q = intersection of the m0-facet line through Pm with the m1-facet line
  // through P; all four lens vertices sit on twin planes.
  Vec3 dir0 = normalized(cross(m0h, ell));
  Vec3 dir1 = normalized(cross(m1h, ell));
  double d0a = dot(dir0, tau), d0b = dot(dir0, nh);
  double d1a = dot(dir1, tau), d1b = dot(dir1, nh);
  double det = -d0a * d1b + d1a * d0b;
  if (std::abs(det) < 1e-12)
    throw InvalidInput("nucleation_scene: habit facets are parallel");
  double s0 = -opening * d1b / det;
  Vec3 Q = Pm + dir0 * s0;
  if (dot(nh, Q - center) < 0) {
    // mirror the whole figure so Q sits on the positive side of the twin
    // plane; the vertex pairing swaps with it
    Q = center * 2.0 - Q;
    std::swap(P, Pm);
  }
  Vec3 Qm = center * 2.0 - Q;
  double tQ = dot(nh, Q), tQm = dot(nh, Qm);

  auto lens_side = [&](const Vec3& normal, const Vec3& through) {
    double off = dot(normal, through);
    return dot(normal, center) <= off ? HalfSpace{normal, off}
                                      : HalfSpace{-1.0 * normal, -off};
  };
  auto outside = [](const HalfSpace& h) {
    return HalfSpace{-1.0 * h.normal, -h.offset};
  };
  HalfSpace ne = lens_side(m1h, P);   // through P and Q
  HalfSpace nw = lens_side(m0h, Q);   // through Q and Pm
  HalfSpace se = lens_side(m0h, P);   // through P and Qm
  HalfSpace sw = lens_side(m1h, Qm);  // through Qm and Pm

  int lens = b.add_region({ne, nw, se, sw}, Mat3::identity(), 0, "austenite");
  int r2 = b.add_region({{nh, tQ}, {-1.0 * nh, -t0}, outside(ne)}, F_Uh, 2,
                        "variant-Uhat");
  int r3 = b.add_region({{nh, tQ}, {-1.0 * nh, -t0}, outside(nw)}, F_U, 1,
                        "variant-U");
  int r1 = b.add_region({{-1.0 * nh, -tQ}}, F_U, 1, "variant-U");
  int r2m = b.add_region({{nh, t0}, {-1.0 * nh, -tQm}, outside(se)}, F_U, 1,
                         "variant-U");
  int r3m = b.add_region({{nh, t0}, {-1.0 * nh, -tQm}, outside(sw)}, F_Uh, 2,
                         "variant-Uhat");
  int r1m = b.add_region({{nh, tQm}}, F_Uh, 2, "variant-Uhat");

  b.add_interface(lens, r2, ne.normal, ne.offset);
  b.add_interface(lens, r3, nw.normal, nw.offset);
  b.add_interface(lens, r2m, se.normal, se.offset);
  b.add_interface(lens, r3m, sw.normal, sw.offset);
  b.add_interface(r1, r2, nh, tQ);
  b.add_interface(r1, r3, nh, tQ);
  b.add_interface(r2, r2m, nh, t0);
  b.add_interface(r3, r3m, nh, t0);
  b.add_interface(r1m, r2m, nh, tQm);
  b.add_interface(r1m, r3m, nh, tQm);

  b.scene.meta.lens_area = 0.5 * norm(cross(P - Pm, Q - Qm));
  return b.finalize(lens);
}

MicrostructureScene beam_scene(const StretchTensor& U, const DomainSolution& s,
                               const HabitEndpoints& ep, double opening,
                               int bands) {
  Mat3 F_U = ep.h0.R * U.U;
  Mat3 F_Uh = ep.h0.R * (U.U + outer(s.a, s.n));
  Vec3 nh = normalized(s.n);
  Vec3 m0h = normalized(ep.h0.m);
  Vec3 m1h = normalized(ep.h1.m);
  Vec3 ell = normalized(cross(m0h, m1h));
  Vec3 tau = normalized(cross(ell, nh));
  if (dot(m0h, tau) < 0) m0h = -1.0 * m0h;
  if (dot(m1h, tau) < 0) m1h = -1.0 * m1h;
  Vec3 center{0.5, 0.5, 0.5};

  SceneBuilder b;
  b.scene.meta.kind = "nucleation-martensite-in-austenite";
  b.scene.meta.opening = std::max(0.0, opening);
  if (opening <= 0) {
    b.add_region({}, Mat3::identity(), 0, "austenite");
    return b.finalize(0);
  }

  Range nr = extent_over_cube(nh);
  auto segs = laminate_segments(nr.lo, nr.hi, bands, 0.5);
  int nbands = static_cast<int>(segs.size());

  Vec3 q = center + nh * (segs[0].lo - dot(nh, center));
  std::vector<int> beam(nbands), top(nbands), bot(nbands);
  std::vector<Vec3> mu(nbands);
  std::vector<double> ct(nbands), cb(nbands);
  for (int i = 0; i < nbands; ++i) {
    bool refl = segs[i].reflected;
    mu[i] = refl ? m1h : m0h;
    double c1 = dot(mu[i], q);
    double c2 = dot(mu[i], q - tau * opening);
    ct[i] = std::max(c1, c2);
    cb[i] = std::min(c1, c2);
    std::vector<HalfSpace> slab = {{nh, segs[i].hi}, {-1.0 * nh, -segs[i].lo}};
    auto bf = slab;
    bf.push_back({mu[i], ct[i]});
    bf.push_back({-1.0 * mu[i], -cb[i]});
    beam[i] = b.add_region(bf, refl ? F_Uh : F_U, refl ? 2 : 1,
                           refl ? "variant-Uhat" : "variant-U");
    auto tf = slab;
    tf.push_back({-1.0 * mu[i], -ct[i]});
    top[i] = b.add_region(tf, Mat3::identity(), 0, "austenite");
    auto lf = slab;
    lf.push_back({mu[i], cb[i]});
    bot[i] = b.add_region(lf, Mat3::identity(), 0, "austenite");

    Vec3 u = cross(mu[i], ell);
    double denom = dot(nh, u);
    if (std::abs(denom) < 1e-12)
      throw InvalidInput("nucleation_scene: facet parallel to twin plane");
    q = q + u * ((segs[i].hi - dot(nh, q)) / denom);
  }
  for (int i = 0; i < nbands; ++i) {
    b.add_interface(top[i], beam[i], mu[i], ct[i]);
    b.add_interface(beam[i], bot[i], mu[i], cb[i]);
    if (i + 1 < nbands) {
      b.add_interface(beam[i], beam[i + 1], nh, segs[i].hi);
      b.add_interface(top[i], top[i + 1], nh, segs[i].hi);
      b.add_interface(bot[i], bot[i + 1], nh, segs[i].hi);
    }
  }
  b.scene.meta.fineness = nbands;
  return b.finalize(top[0]);
}

}  // namespace

MicrostructureScene nucleation_scene(const StretchTensor& U, const Vec3& ehat,
                                     NucleationKind kind, double opening,
                                     int bands, double cc_tol) {
  CofactorReport rep = cofactor_report(U, ehat, cc_tol);
  if (!rep.typeI_satisfied)
    throw NotSupercompatible(
        "nucleation_scene: cofactor conditions not met for Type I", rep);
  DomainSolution s = type1_solution(U, ehat);
  HabitEndpoints ep = endpoint_branches(U, s, normalized(s.ehat), true);
  if (kind == NucleationKind::AusteniteInMartensite)
    return lens_scene(U, s, ep, opening);
  return beam_scene(U, s, ep, opening, bands);
}

namespace {

struct FaceSpec {
  int fixed_axis;
  double value;
};

std::vector<FaceSpec> face_list(int faces) {
  std::vector<FaceSpec> out;
  if (faces & FaceX0) out.push_back({0, 0.0});
  if (faces & FaceX1) out.push_back({0, 1.0});
  if (faces & FaceY0) out.push_back({1, 0.0});
  if (faces & FaceY1) out.push_back({1, 1.0});
  if (faces & FaceZ0) out.push_back({2, 0.0});
  if (faces & FaceZ1) out.push_back({2, 1.0});
  return out;
}

std::vector<LabeledPoint> render_impl(const MicrostructureScene& scene,
                                      int density, int faces, bool parallel) {
  if (density < 1) throw InvalidInput("render_point_cloud: density < 1");
  if (scene.regions.empty())
    throw InvalidInput("render_point_cloud: empty scene");
  auto specs = face_list(faces);
  const long side = density + 1;
  const long per_face = side * side;
  const long total = per_face * static_cast<long>(specs.size());
  std::vector<LabeledPoint> pts(total);
#pragma omp parallel for schedule(static) if (parallel)
  for (long idx = 0; idx < total; ++idx) {
    const FaceSpec& fs = specs[idx / per_face];
    long rem = idx % per_face;
    double u = static_cast<double>(rem / side) / density;
    double v = static_cast<double>(rem % side) / density;
    Vec3 x;
    x[fs.fixed_axis] = fs.value;
    x[(fs.fixed_axis + 1) % 3] = u;
    x[(fs.fixed_axis + 2) % 3] = v;
    int r = scene.find_region(x);
    const Region& reg = scene.regions[r];
    pts[idx] = {reg.F * x + reg.t, reg.label};
  }
  return pts;
}

}  // namespace

std::vector<LabeledPoint> render_point_cloud(const MicrostructureScene& scene,
                                             int density, int faces) {
  return render_impl(scene, density, faces, true);
}

std::vector<LabeledPoint> render_point_cloud_serial(
    const MicrostructureScene& scene, int density, int faces) {
  return render_impl(scene, density, faces, false);
}

std::string point_cloud_csv(const std::vector<LabeledPoint>& points) {
  std::string out = "x,y,z,label\n";
  char line[128];
  for (const auto& p : points) {
    std::snprintf(line, sizeof line, "%.9g,%.9g,%.9g,%d\n", p.y.x, p.y.y, p.y.z,
                  p.label);
    out += line;
  }
  return out;
}

}  // namespace cofac
