#pragma once

// Zero-elastic-energy microstructure construction: triple junctions, parallel
// interfaces, the classic crystallographic construction with a transition
// layer, nucleation layouts, and Cauchy-Born point-cloud rendering.

#include <string>
#include <vector>

#include "cofac/conditions.hpp"
#include "cofac/habit.hpp"

namespace cofac {

// Half space { x : normal . x <= offset }.
struct HalfSpace {
  Vec3 normal;
  double offset;
};

struct Region {
  std::vector<HalfSpace> faces;
  Mat3 F;
  Vec3 t;           // filled by the continuity walk
  int label = 0;    // 0 austenite, 1 variant U, 2 reflected variant
  std::string tag;

  bool contains(const Vec3& x, double tol = 1e-9) const;
  double violation(const Vec3& x) const;  // max constraint excess
};

struct Interface {
  int region_a = 0, region_b = 0;
  Vec3 normal;      // unit
  double offset;    // plane normal . x = offset
  Vec3 jump;        // c with F_b - F_a ~= c (x) normal
  double residual;  // || (F_b - F_a) - c (x) normal ||_F
};

struct SceneMetadata {
  std::string kind;
  double f = 0;
  int fineness = 0;
  double layer_width = 0;
  double opening = 0;
  double lens_area = 0;        // cross-section area of the nucleated phase
  double max_closure_error = 0;  // translation consistency over graph cycles
};

struct MicrostructureScene {
  std::vector<Region> regions;
  std::vector<Interface> interfaces;
  SceneMetadata meta;

  // Lowest-label region containing x (ties by list order).
  int find_region(const Vec3& x, double tol = 1e-9) const;
};

// Distance from F to the rigidly-rotated copies of W: min_R ||F - R W||.
double well_distance(const Mat3& F, const Mat3& W);

struct TripleJunctionResult {
  MicrostructureScene scene;
  int sigma = +1, sigma_star = +1;
  double xi = 0;  // b1^{s*} = xi b0^s
  double c = 0;   // c n_I = xi m1^{s*} - m0^s
  Vec3 m0, m1;    // habit normals at f = 0 and f = 1
  Vec3 n_I;
  Mat3 R0;
  double rotation_match = 0;  // ||R1^{s*} - R0^s||
  double coplanarity = 0;     // |det[m0^, m1^, n^]|
  DomainSolution twin;
};

struct TripleJunctionOptions {
  int bands = 4;              // martensite bands in the zig-zag (rounded even)
  double band_fraction = 0.5; // width share of the reflected variant
  double cc_tol = 1e-4;       // satisfaction gate for the cofactor conditions
};

// Austenite/martensite triple junctions chained into a
// zig-zag front (Type I domains).
TripleJunctionResult triple_junction(const StretchTensor& U, const Vec3& ehat,
                                     const TripleJunctionOptions& opt = {});

struct ParallelInterfaceOptions {
  double cc_tol = 1e-4;
};

// Laminate of alternating bands meeting austenite along a fixed plane with
// no transition layer (Type II domains).
MicrostructureScene parallel_interface(const StretchTensor& U, const Vec3& ehat,
                                       double f, int bands = 8,
                                       const ParallelInterfaceOptions& opt = {});

enum class TwinChoice { Auto, TypeI, TypeII, Compound1, Compound2 };

// Classic construction: twinned laminate + linearly interpolated transition
// layer (width ~ 1/k) + austenite.  The layer cells are continuous with both
// sides but their gradients are not energy-well values.
MicrostructureScene crystallographic_scene(const StretchTensor& U,
                                           const Vec3& ehat, double f, int k,
                                           TwinChoice twin = TwinChoice::Auto,
                                           int kappa = +1,
                                           double tol_mid = 1e-6);

enum class NucleationKind { AusteniteInMartensite, MartensiteInAustenite };

// Zero-elastic-energy nucleation layouts (Type I domains): a lens of
// austenite emitting four triple junctions from a line, or a twinned band of
// martensite growing inside austenite.
MicrostructureScene nucleation_scene(const StretchTensor& U, const Vec3& ehat,
                                     NucleationKind kind, double opening,
                                     int bands = 4, double cc_tol = 1e-4);

struct LabeledPoint {
  Vec3 y;
  int label;
};

enum CubeFace {
  FaceX0 = 1 << 0, FaceX1 = 1 << 1,
  FaceY0 = 1 << 2, FaceY1 = 1 << 3,
  FaceZ0 = 1 << 4, FaceZ1 = 1 << 5,
  FaceAll = 0x3f
};

// Sample the chosen faces of the unit cube at spacing 1/density and push the
// points through the region deformations.  Deterministic ordering.
std::vector<LabeledPoint> render_point_cloud(const MicrostructureScene& scene,
                                             int density,
                                             int faces = FaceAll);
std::vector<LabeledPoint> render_point_cloud_serial(
    const MicrostructureScene& scene, int density, int faces = FaceAll);

// CSV with header x,y,z,label and nine significant digits.
std::string point_cloud_csv(const std::vector<LabeledPoint>& points);

}  // namespace cofac
