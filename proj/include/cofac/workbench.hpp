#pragma once

// File formats, bundled alloy data and the composition-interpolation
// screening procedure behind the CLI.

#include <optional>
#include <string>
#include <vector>

#include "cofac/conditions.hpp"
#include "cofac/symmetry.hpp"

namespace cofac {

struct CrystalSpec {
  std::string name;
  Mat3 U;
  std::optional<MonoclinicParams> monoclinic;  // set when given as parameters
  std::vector<Vec3> ehat;                      // normalized on load
  std::string notes;
};

// JSON schema: {"name": str, "U": [[f;3];3] | "monoclinic": {"alpha","beta",
// "gamma","delta"}, "ehat": [h,k,l] | [[h,k,l],...], "notes": str}.
CrystalSpec parse_crystal(const std::string& json_text);
CrystalSpec load_crystal(const std::string& path);

// Componentwise bilinear interpolation between four anchor compositions.
struct CompositionModel {
  std::string name;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  Mat3 U00, U10, U01, U11;  // anchors at (x0,y0), (x1,y0), (x0,y1), (x1,y1)
  Vec3 ehat{0, 0, 1};

  Mat3 at(double x, double y) const;
};

CompositionModel parse_model(const std::string& json_text);
CompositionModel load_model(const std::string& path);

enum class ScreenTarget { TypeI, TypeII };

struct ScreenSample {
  double x = 0, y = 0;
  double lambda2_residual = 0;
  double type_residual = 0;
};

struct ScreenResult {
  double x_star = 0, y_star = 0;
  Mat3 U_star;
  double lambda2_residual = 0;
  double type_residual = 0;
  double cc3_typeI = 0, cc3_typeII = 0;
  bool cc3_ok = false;
  std::vector<ScreenSample> trace;  // the lambda2 = 1 curve over the x grid
};

// Interpolation screening: bisect in y for lambda2 = 1 at each x, then
// bisect in x along the curve for the chosen type residual, then check the
// trace inequality.  Bisections stop at 1e-10 or 64 iterations.
ScreenResult screen(const CompositionModel& model, ScreenTarget target,
                    int x_grid = 33, int y_grid = 33);

struct AlloyReport {
  std::string name;
  CrystalSpec crystal;
  double lambda2_dev = 0;             // |lambda2 - 1|
  std::optional<double> typeI;        // |U^-1 e|^2 - 1
  std::optional<double> typeII;       // |U e|^2 - 1
  double cc3 = 0;                     // best match of the two (a,n) pairs
  double cc3_typeI = 0, cc3_typeII = 0;
  bool compound = false;
  bool compound_ok_at_lambda2_1 = false;  // criteria pass once lambda2 -> 1

  // Reference values and the comparison verdict at 2e-3 absolute.
  double exp_lambda2 = 0, exp_typeI = 0, exp_typeII = 0, exp_cc3 = 0;
  bool matches_reference = false;
};

// Bundled candidate-alloy data (stretch matrices and two-fold axes).
std::vector<CrystalSpec> bundled_crystals();

// Per-alloy residual report compared against the checked-in reference values.
std::vector<AlloyReport> table2_report();

}  // namespace cofac
