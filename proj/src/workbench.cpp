#include "cofac/workbench.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cofac {

using nlohmann::json;

namespace {

Mat3 mat_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3)
    throw InputError(path + ": expected a 3x3 array");
  Mat3 m;
  for (int i = 0; i < 3; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != 3)
      throw InputError(path + "[" + std::to_string(i) + "]: expected 3 numbers");
    for (int k = 0; k < 3; ++k) {
      if (!row[k].is_number())
        throw InputError(path + "[" + std::to_string(i) + "][" +
                         std::to_string(k) + "]: expected a number");
      m(i, k) = row[k].get<double>();
    }
  }
  return m;
}

Vec3 axis_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3)
    throw InputError(path + ": expected [h,k,l]");
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number())
      throw InputError(path + "[" + std::to_string(i) + "]: expected a number");
    v[i] = j[i].get<double>();
  }
  if (norm(v) == 0) throw InputError(path + ": zero axis");
  return normalized(v);
}

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("invalid JSON");
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

CrystalSpec parse_crystal(const std::string& json_text) {
  json j = parse_text(json_text);
  CrystalSpec spec;
  spec.name = j.value("name", "");
  spec.notes = j.value("notes", "");

  bool has_u = j.contains("U");
  bool has_mono = j.contains("monoclinic");
  if (has_u == has_mono)
    throw InputError("crystal: exactly one of U / monoclinic must be present");

  if (has_u) {
    spec.U = mat_from_json(j["U"], "U");
  } else {
    const auto& m = j["monoclinic"];
    for (const char* key : {"alpha", "beta", "gamma", "delta"})
      if (!m.contains(key) || !m[key].is_number())
        throw InputError(std::string("monoclinic.") + key + ": expected a number");
    MonoclinicParams p{m["alpha"].get<double>(), m["beta"].get<double>(),
                       m["gamma"].get<double>(), m["delta"].get<double>()};
    spec.monoclinic = p;
    spec.U = monoclinic_variants(p).U[0].U;
  }
  if (!all_finite(spec.U) || spec.U.det() <= 0 ||
      sym_eigen(symmetrize(spec.U)).lambda[0] <= 0)
    throw InputError("U: matrix is not positive-definite");

  if (j.contains("ehat")) {
    const auto& e = j["ehat"];
    if (e.is_array() && !e.empty() && e[0].is_array()) {
      for (std::size_t i = 0; i < e.size(); ++i)
        spec.ehat.push_back(
            axis_from_json(e[i], "ehat[" + std::to_string(i) + "]"));
    } else {
      spec.ehat.push_back(axis_from_json(e, "ehat"));
    }
  }
  return spec;
}

CrystalSpec load_crystal(const std::string& path) {
  return parse_crystal(slurp(path));
}

Mat3 CompositionModel::at(double x, double y) const {
  double wx = (x - x0) / (x1 - x0);
  double wy = (y - y0) / (y1 - y0);
  return U00 * ((1 - wx) * (1 - wy)) + U10 * (wx * (1 - wy)) +
         U01 * ((1 - wx) * wy) + U11 * (wx * wy);
}

CompositionModel parse_model(const std::string& json_text) {
  json j = parse_text(json_text);
  CompositionModel m;
  m.name = j.value("name", "");
  if (!j.contains("x") || !j.contains("y") || !j.contains("anchors"))
    throw InputError("model: x, y and anchors are required");
  auto range = [&](const char* key, double& lo, double& hi) {
    const auto& r = j[key];
    if (!r.is_array() || r.size() != 2)
      throw InputError(std::string(key) + ": expected [lo, hi]");
    lo = r[0].get<double>();
    hi = r[1].get<double>();
    if (!(hi > lo)) throw InputError(std::string(key) + ": need hi > lo");
  };
  range("x", m.x0, m.x1);
  range("y", m.y0, m.y1);
  const auto& a = j["anchors"];
  for (const char* key : {"x0y0", "x1y0", "x0y1", "x1y1"})
    if (!a.contains(key))
      throw InputError(std::string("anchors.") + key + ": missing");
  m.U00 = mat_from_json(a["x0y0"], "anchors.x0y0");
  m.U10 = mat_from_json(a["x1y0"], "anchors.x1y0");
  m.U01 = mat_from_json(a["x0y1"], "anchors.x0y1");
  m.U11 = mat_from_json(a["x1y1"], "anchors.x1y1");
  if (j.contains("ehat")) m.ehat = axis_from_json(j["ehat"], "ehat");
  return m;
}

CompositionModel load_model(const std::string& path) {
  return parse_model(slurp(path));
}

namespace {

double lambda2_minus_1(const CompositionModel& m, double x, double y) {
  return sym_eigen(symmetrize(m.at(x, y))).lambda[1] - 1.0;
}

constexpr int kMaxBisect = 64;

// Bisect g over [lo, hi] (sign change required) to |g| < 1e-10.
template <class F>
double bisect(F&& g, double lo, double hi) {
  double glo = g(lo);
  if (std::abs(glo) < 1e-10) return lo;
  double ghi = g(hi);
  if (std::abs(ghi) < 1e-10) return hi;
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxBisect; ++it) {
    mid = 0.5 * (lo + hi);
    double gm = g(mid);
    if (std::abs(gm) < 1e-10) return mid;
    if ((gm < 0) == (glo < 0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return mid;
}

}  // namespace

ScreenResult screen(const CompositionModel& model, ScreenTarget target,
                    int x_grid, int y_grid) {
  if (x_grid < 2 || y_grid < 2) throw InvalidInput("screen: grid too small");
  Vec3 e = normalized(model.ehat);

  // Step 2: the lambda2 = 1 curve y(x), by bisection on a bracketing cell.
  auto y_of_x = [&](double x) {
    double prev_y = model.y0;
    double prev_g = lambda2_minus_1(model, x, prev_y);
    if (std::abs(prev_g) < 1e-10) return prev_y;
    for (int i = 1; i < y_grid; ++i) {
      double y = model.y0 + (model.y1 - model.y0) * i / (y_grid - 1);
      double g = lambda2_minus_1(model, x, y);
      if (std::abs(g) < 1e-10) return y;
      if ((g < 0) != (prev_g < 0))
        return bisect([&](double yy) { return lambda2_minus_1(model, x, yy); },
                      prev_y, y);
      prev_y = y;
      prev_g = g;
    }
    throw NoLambda2Curve("screen: no sign change of lambda2 - 1 in y at x = " +
                         std::to_string(x));
  };

  auto type_residual = [&](double x, double y) {
    StretchTensor u(model.at(x, y));
    return target == ScreenTarget::TypeI ? check_type1(u, e)
                                         : check_type2(u, e);
  };

  ScreenResult res;
  double prev_x = model.x0;
  double prev_y = y_of_x(prev_x);
  double prev_h = type_residual(prev_x, prev_y);
  res.trace.push_back(
      {prev_x, prev_y, lambda2_minus_1(model, prev_x, prev_y), prev_h});
  double x_star = prev_x;
  bool found = std::abs(prev_h) < 1e-10;
  for (int i = 1; i < x_grid && !found; ++i) {
    double x = model.x0 + (model.x1 - model.x0) * i / (x_grid - 1);
    double y = y_of_x(x);
    double h = type_residual(x, y);
    res.trace.push_back({x, y, lambda2_minus_1(model, x, y), h});
    if (std::abs(h) < 1e-10) {
      x_star = x;
      found = true;
      break;
    }
    if ((h < 0) != (prev_h < 0)) {
      x_star = bisect([&](double xx) { return type_residual(xx, y_of_x(xx)); },
                      prev_x, x);
      found = true;
      break;
    }
    prev_x = x;
    prev_h = h;
  }
  if (!found)
    throw NoCrossing("screen: no sign change of the type residual along the "
                     "lambda2 = 1 curve");

  res.x_star = x_star;
  res.y_star = y_of_x(x_star);
  res.U_star = model.at(res.x_star, res.y_star);
  StretchTensor u(res.U_star);
  res.lambda2_residual = u.lambda2() - 1.0;
  res.type_residual = type_residual(res.x_star, res.y_star);

  // Step 4: the trace inequality for both (a, n) pairs.
  DomainSolution s1 = type1_solution(u, e);
  DomainSolution s2 = type2_solution(u, e);
  res.cc3_typeI = cc_residuals(u, s1.a, s1.n).cc3;
  res.cc3_typeII = cc_residuals(u, s2.a, s2.n).cc3;
  res.cc3_ok = (target == ScreenTarget::TypeI ? res.cc3_typeI : res.cc3_typeII) >= 0;
  return res;
}

namespace {

struct BundledAlloy {
  const char* name;
  Mat3 U;
  Vec3 ehat;
  bool compound;
  double exp_lambda2, exp_typeI, exp_typeII, exp_cc3;
  const char* notes;
};

const BundledAlloy kAlloys[] = {
    {"CuAlMn",
     {{1.1098, 0.0279, 0, 0.0279, 1.0062, 0, 0, 0, 0.8989}},
     {1, 0, 1},
     false,
     0.0008, 0.0256, 0.0202, 0.0016,
     "Cu69 Al24 Mn7; two-fold axis in the frame of the bundled matrix"},
    {"AuCuZn",
     {{1.0508, 0, 0.0142, 0, 0.9108, 0, 0.0142, 0, 1.0059}},
     {1, 0, -1},
     false,
     0.0018, 0.0263, 0.029, 0.0175,
     "Au25 Cu30 Zn45"},
    {"VO2",
     {{1.0669, 0, 0.0421, 0, 0.9939, 0, 0.0421, 0, 0.9434}},
     {0, 0, 1},
     true,
     0.0061, 0, 0, 0.0144,
     "rutile to monoclinic; compound domain pair"},
};

}  // namespace

std::vector<CrystalSpec> bundled_crystals() {
  std::vector<CrystalSpec> out;
  for (const auto& a : kAlloys) {
    CrystalSpec c;
    c.name = a.name;
    c.U = a.U;
    c.ehat = {normalized(a.ehat)};
    c.notes = a.notes;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<AlloyReport> table2_report() {
  const double tol = 2e-3;
  std::vector<AlloyReport> out;
  for (const auto& alloy : kAlloys) {
    AlloyReport r;
    r.name = alloy.name;
    r.crystal.name = alloy.name;
    r.crystal.U = alloy.U;
    r.crystal.ehat = {normalized(alloy.ehat)};
    r.crystal.notes = alloy.notes;
    r.compound = alloy.compound;
    r.exp_lambda2 = alloy.exp_lambda2;
    r.exp_typeI = alloy.exp_typeI;
    r.exp_typeII = alloy.exp_typeII;
    r.exp_cc3 = alloy.exp_cc3;

    StretchTensor u(alloy.U);
    Vec3 e = normalized(alloy.ehat);
    r.lambda2_dev = std::abs(u.lambda2() - 1.0);

    if (alloy.compound) {
      CompoundPair p = compound_solutions(u, e);
      r.cc3_typeI = cc_residuals(u, p.sol1.a, p.sol1.n).cc3;
      r.cc3_typeII = cc_residuals(u, p.sol2.a, p.sol2.n).cc3;
      // rescale the middle eigenvalue to 1 and re-test the compound criteria
      Mat3 rescaled = outer(u.v1(), u.v1()) * u.lambda1() +
                      outer(u.v2(), u.v2()) +
                      outer(u.v3(), u.v3()) * u.lambda3();
      StretchTensor ur(rescaled);
      r.compound_ok_at_lambda2_1 = check_compound(ur, e, 1e-8).satisfied;
    } else {
      r.typeI = check_type1(u, e);
      r.typeII = check_type2(u, e);
      DomainSolution s1 = type1_solution(u, e);
      DomainSolution s2 = type2_solution(u, e);
      r.cc3_typeI = cc_residuals(u, s1.a, s1.n).cc3;
      r.cc3_typeII = cc_residuals(u, s2.a, s2.n).cc3;
    }
    r.cc3 = std::abs(r.cc3_typeI - r.exp_cc3) < std::abs(r.cc3_typeII - r.exp_cc3)
                ? r.cc3_typeI
                : r.cc3_typeII;

    bool ok = std::abs(r.lambda2_dev - r.exp_lambda2) <= tol &&
              std::abs(r.cc3 - r.exp_cc3) <= tol;
    if (!alloy.compound) {
      ok = ok && std::abs(std::abs(*r.typeI) - r.exp_typeI) <= tol &&
           std::abs(std::abs(*r.typeII) - r.exp_typeII) <= tol;
    } else {
      ok = ok && r.compound_ok_at_lambda2_1;
    }
    r.matches_reference = ok;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cofac
