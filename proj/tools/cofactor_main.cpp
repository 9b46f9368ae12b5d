// Command-line front end: cofactor-condition reports, habit sweeps, domain
// enumeration, microstructure scenes, composition screening and the bundled
// alloy table.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cofac/scene.hpp"
#include "cofac/linearized.hpp"
#include "cofac/workbench.hpp"

using nlohmann::json;
using namespace cofac;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNotSatisfied = 2;

Vec3 parse_axis(const std::string& text) {
  Vec3 v;
  char c1, c2;
  std::istringstream ss(text);
  if (!(ss >> v.x >> c1 >> v.y >> c2 >> v.z) || c1 != ',' || c2 != ',')
    throw InputError("--ehat expects h,k,l");
  return normalized(v);
}

double default_tolerance() {
  if (const char* env = std::getenv("COFACTOR_TOL")) {
    try {
      return std::stod(env);
    } catch (...) {
      throw InputError("COFACTOR_TOL is not a number");
    }
  }
  return 1e-4;
}

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json mat_json(const Mat3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i)
    rows.push_back(json::array({m(i, 0), m(i, 1), m(i, 2)}));
  return rows;
}

struct AngleAxis {
  double angle_deg;
  Vec3 axis;
};

AngleAxis rotation_angle_axis(const Mat3& r) {
  double c = std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0);
  double angle = std::acos(c) * 180.0 / M_PI;
  Vec3 ax{r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1)};
  if (norm(ax) > 1e-12) {
    ax = normalized(ax);
  } else if (angle > 90.0) {  // 180 degrees: read the axis from (R + I)/2
    Mat3 m = (r + Mat3::identity()) * 0.5;
    int best = 0;
    for (int i = 1; i < 3; ++i)
      if (m(i, i) > m(best, best)) best = i;
    ax = m.col(best) / std::sqrt(std::max(1e-30, m(best, best)));
  } else {
    ax = {0, 0, 1};
  }
  return {angle, ax};
}

Vec3 pick_axis(const CrystalSpec& spec, const std::string& flag) {
  if (!flag.empty()) return parse_axis(flag);
  if (!spec.ehat.empty()) return spec.ehat.front();
  throw InputError("no two-fold axis: pass --ehat or put ehat in the file");
}

json report_json(const CofactorReport& r) {
  json j;
  j["class"] = r.domain_class == DomainClass::Compound ? "Compound" : "TypeI/II";
  j["tolerance"] = r.tolerance;
  j["cc1"] = r.cc1;
  j["cc2_typeI"] = r.cc2_typeI;
  j["cc2_typeII"] = r.cc2_typeII;
  j["cc2p_typeI"] = json::array({r.cc2p_typeI.first, r.cc2p_typeI.second});
  j["cc2p_typeII"] = json::array({r.cc2p_typeII.first, r.cc2p_typeII.second});
  j["cc3_typeI"] = r.cc3_typeI;
  j["cc3_typeII"] = r.cc3_typeII;
  j["typeI_residual"] = r.typeI_residual;
  j["typeII_residual"] = r.typeII_residual;
  if (r.compound) {
    j["compound"] = {{"e1_dot_v2", r.compound->e1_dot_v2},
                     {"e2_dot_v2", r.compound->e2_dot_v2},
                     {"cc3_sol1", r.compound->cc3_sol1},
                     {"cc3_sol2", r.compound->cc3_sol2},
                     {"satisfied", r.compound->satisfied}};
  }
  j["verdict"] = r.verdict();
  return j;
}

void print_report(const CofactorReport& r) {
  std::cout << "domain class    : "
            << (r.domain_class == DomainClass::Compound ? "Compound" : "Type I/II")
            << "\n";
  std::cout << "cc1 (l2 - 1)    : " << r.cc1 << "\n";
  std::cout << "typeI |U^-1e|^2-1 : " << r.typeI_residual << "\n";
  std::cout << "typeII |Ue|^2-1   : " << r.typeII_residual << "\n";
  std::cout << "cc2 (I, II)     : " << r.cc2_typeI << ", " << r.cc2_typeII << "\n";
  std::cout << "cc3 (I, II)     : " << r.cc3_typeI << ", " << r.cc3_typeII << "\n";
  if (r.compound) {
    std::cout << "compound e1.v2  : " << r.compound->e1_dot_v2 << "\n";
    std::cout << "compound e2.v2  : " << r.compound->e2_dot_v2 << "\n";
    std::cout << "compound cc3    : " << r.compound->cc3_sol1 << ", "
              << r.compound->cc3_sol2 << "\n";
  }
  std::cout << "verdict         : " << r.verdict() << " (tol " << r.tolerance
            << ")\n";
}

int run_report(const std::string& file, const std::string& ehat_flag,
               double tol, bool as_json, bool require) {
  CrystalSpec spec = load_crystal(file);
  StretchTensor u(spec.U);
  CofactorReport rep = cofactor_report(u, pick_axis(spec, ehat_flag), tol);
  if (as_json) {
    json j = report_json(rep);
    j["name"] = spec.name;
    std::cout << j.dump(2) << "\n";
  } else {
    if (!spec.name.empty()) std::cout << spec.name << "\n";
    print_report(rep);
  }
  if (require && !rep.satisfied()) return kExitNotSatisfied;
  return kExitOk;
}

int run_sweep(const std::string& file, const std::string& ehat_flag, int grid,
              const std::string& twin, const std::string& out_path) {
  CrystalSpec spec = load_crystal(file);
  StretchTensor u(spec.U);
  Vec3 e = pick_axis(spec, ehat_flag);

  DomainSolution s = [&] {
    if (twin == "I") return type1_solution(u, e);
    if (twin == "II") return type2_solution(u, e);
    if (twin == "C1") return compound_solutions(u, e).sol1;
    if (twin == "C2") return compound_solutions(u, e).sol2;
    return classify_domain(u, e) == DomainClass::Compound
               ? compound_solutions(u, e).sol1
               : type1_solution(u, e);
  }();

  std::vector<double> fs(grid + 1);
  for (int i = 0; i <= grid; ++i) fs[i] = static_cast<double>(i) / grid;
  HabitSweep sw = sweep_habit(u.U, s.a, s.n, fs, default_tolerance());

  std::ostringstream csv;
  csv << "f,kappa,bx,by,bz,mx,my,mz,angle_deg,ax,ay,az\n";
  auto emit = [&](const std::vector<HabitSolution>& family) {
    for (const auto& h : family) {
      AngleAxis aa = rotation_angle_axis(h.R);
      csv << h.f << "," << h.kappa << "," << h.b.x << "," << h.b.y << ","
          << h.b.z << "," << h.m.x << "," << h.m.y << "," << h.m.z << ","
          << aa.angle_deg << "," << aa.axis.x << "," << aa.axis.y << ","
          << aa.axis.z << "\n";
    }
  };
  emit(sw.family_plus);
  emit(sw.family_minus);
  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write " + out_path);
    out << csv.str();
    std::cout << "wrote " << out_path << " (" << 2 * fs.size() << " rows)\n";
  }
  return kExitOk;
}

int run_enumerate(const std::string& mono, bool as_json) {
  std::istringstream ss(mono);
  MonoclinicParams p{};
  char c1, c2, c3;
  if (!(ss >> p.alpha >> c1 >> p.beta >> c2 >> p.gamma >> c3 >> p.delta))
    throw InputError("--monoclinic expects alpha,beta,gamma,delta");
  VariantSet vs = monoclinic_variants(p);
  PointGroup group = cubic_point_group();
  auto systems = enumerate_domains(vs, group);
  int nclasses = cc_equivalence_classes(systems, vs, group);
  DomainCensus c = census(systems);

  if (as_json) {
    json j;
    j["census"] = {{"typeI_twins", c.typeI_twins},
                   {"typeII_twins", c.typeII_twins},
                   {"compound_twins", c.compound_twins},
                   {"typeI_domains", c.typeI_domains},
                   {"typeII_domains", c.typeII_domains},
                   {"compound_domains", c.compound_domains}};
    j["classes"] = nclasses;
    json arr = json::array();
    for (const auto& s : systems) {
      json sj;
      sj["pair"] = json::array({s.i, s.j});
      sj["angle"] = s.relation.angle_deg;
      sj["axis"] = json::array(
          {s.relation.axis[0], s.relation.axis[1], s.relation.axis[2]});
      sj["kind"] = s.kind == DomainClass::Compound ? "Compound" : "TypeI/II";
      sj["conventional"] = s.conventional;
      sj["class"] = s.cc_class;
      json axes = json::array();
      for (const auto& a : s.axes) axes.push_back(vec_json(a));
      sj["ehat"] = axes;
      arr.push_back(sj);
    }
    j["systems"] = arr;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "census: " << c.typeI_twins << " Type I twins, "
              << c.typeII_twins << " Type II twins, " << c.compound_twins
              << " Compound twins, " << c.typeI_domains << " Type I domains, "
              << c.typeII_domains << " Type II domains, " << c.compound_domains
              << " Compound domains (" << nclasses << " classes)\n";
    for (const auto& s : systems) {
      std::cout << "(" << s.i << "," << s.j << ")  " << s.relation.angle_deg
                << " deg [" << s.relation.axis[0] << "," << s.relation.axis[1]
                << "," << s.relation.axis[2] << "]  "
                << (s.kind == DomainClass::Compound ? "Compound" : "TypeI/II")
                << (s.conventional ? " twin" : " domain") << "  class "
                << s.cc_class << "\n";
    }
  }
  return kExitOk;
}

json scene_json(const MicrostructureScene& sc) {
  json j;
  j["kind"] = sc.meta.kind;
  j["f"] = sc.meta.f;
  j["fineness"] = sc.meta.fineness;
  j["layer_width"] = sc.meta.layer_width;
  j["opening"] = sc.meta.opening;
  j["max_closure_error"] = sc.meta.max_closure_error;
  json regions = json::array();
  for (const auto& r : sc.regions) {
    json rj;
    rj["label"] = r.label;
    rj["tag"] = r.tag;
    rj["F"] = mat_json(r.F);
    rj["t"] = vec_json(r.t);
    json faces = json::array();
    for (const auto& h : r.faces)
      faces.push_back({{"n", vec_json(h.normal)}, {"d", h.offset}});
    rj["faces"] = faces;
    regions.push_back(rj);
  }
  j["regions"] = regions;
  json ifaces = json::array();
  for (const auto& f : sc.interfaces)
    ifaces.push_back({{"a", f.region_a},
                      {"b", f.region_b},
                      {"normal", vec_json(f.normal)},
                      {"offset", f.offset},
                      {"jump", vec_json(f.jump)},
                      {"residual", f.residual}});
  j["interfaces"] = ifaces;
  return j;
}

int run_scene(const std::string& file, const std::string& ehat_flag,
              const std::string& kind, double f, int k, int density,
              const std::string& out_path, const std::string& scene_json_path,
              const std::string& nkind, double opening, double tol,
              bool require) {
  CrystalSpec spec = load_crystal(file);
  StretchTensor u(spec.U);
  Vec3 e = pick_axis(spec, ehat_flag);

  MicrostructureScene sc;
  try {
    if (kind == "triple") {
      TripleJunctionOptions opt;
      opt.bands = k;
      opt.cc_tol = tol;
      sc = triple_junction(u, e, opt).scene;
    } else if (kind == "parallel") {
      ParallelInterfaceOptions opt;
      opt.cc_tol = tol;
      sc = parallel_interface(u, e, f, k, opt);
    } else if (kind == "crystallographic") {
      sc = crystallographic_scene(u, e, f, k, TwinChoice::Auto, +1,
                                  std::max(tol, 1e-6));
    } else if (kind == "nucleation") {
      NucleationKind nk = nkind == "MinA"
                              ? NucleationKind::MartensiteInAustenite
                              : NucleationKind::AusteniteInMartensite;
      sc = nucleation_scene(u, e, nk, opening, k, tol);
    } else {
      throw InputError("unknown scene kind: " + kind);
    }
  } catch (const NotSupercompatible& ex) {
    std::cerr << "not supercompatible: " << ex.what() << "\n";
    print_report(ex.report);
    return require ? kExitNotSatisfied : kExitNotSatisfied;
  } catch (const NoHabitPlane& ex) {
    std::cerr << "no habit plane: " << ex.what() << " (residual "
              << ex.residual << ")\n";
    return kExitNotSatisfied;
  }

  auto cloud = render_point_cloud(sc, density);
  std::ofstream out(out_path);
  if (!out) throw InputError("cannot write " + out_path);
  out << point_cloud_csv(cloud);
  std::cout << "wrote " << out_path << " (" << cloud.size() << " points, "
            << sc.regions.size() << " regions)\n";
  double worst = 0;
  for (const auto& iface : sc.interfaces)
    worst = std::max(worst, iface.residual);
  std::cout << "max interface residual: " << worst
            << ", translation closure: " << sc.meta.max_closure_error << "\n";
  if (!scene_json_path.empty()) {
    std::ofstream js(scene_json_path);
    if (!js) throw InputError("cannot write " + scene_json_path);
    js << scene_json(sc).dump(2) << "\n";
    std::cout << "wrote " << scene_json_path << "\n";
  }
  return kExitOk;
}

int run_screen(const std::string& file, const std::string& target,
               const std::string& ehat_flag) {
  CompositionModel model = load_model(file);
  if (!ehat_flag.empty()) model.ehat = parse_axis(ehat_flag);
  ScreenTarget t =
      target == "type2" ? ScreenTarget::TypeII : ScreenTarget::TypeI;
  ScreenResult r = screen(model, t);
  std::cout << "lambda2 = 1 curve (x, y, l2-1, type residual):\n";
  for (const auto& s : r.trace)
    std::cout << "  " << s.x << "  " << s.y << "  " << s.lambda2_residual
              << "  " << s.type_residual << "\n";
  std::cout << "candidate composition: x = " << r.x_star << ", y = " << r.y_star
            << "\n";
  std::cout << "residuals: lambda2-1 = " << r.lambda2_residual
            << ", type = " << r.type_residual << "\n";
  std::cout << "cc3: typeI = " << r.cc3_typeI << ", typeII = " << r.cc3_typeII
            << " -> "
            << (r.cc3_ok ? "inequality holds"
                         : "interpolation found, inequality fails")
            << "\n";
  return kExitOk;
}

int run_linear(const std::string& file, const std::string& ehat_flag) {
  CrystalSpec spec = load_crystal(file);
  StretchTensor u(spec.U);
  Vec3 e = pick_axis(spec, ehat_flag);
  Strain strain(u.U - Mat3::identity());
  CclReport r = ccl_residuals(strain, e, 1e-4);
  std::cout << "CCL1 eps2        : " << r.ccl1 << (r.rank2 ? "  (rank 2)" : "  (rank != 2)")
            << "\n";
  std::cout << "CCL2 (a.v2)(n.v2): " << r.ccl2 << "\n";
  std::cout << "CCL2' n2^2(n1^2 e1 + n3^2 e3): " << r.ccl2_prime << "\n";
  std::cout << "CCL3             : " << r.ccl3 << " (<= 0 required)\n";
  std::cout << "verdict          : " << (r.satisfied ? "satisfied" : "not satisfied")
            << "\n";

  try {
    GnglComparison g = compare_nonlinear_linear(u.lambda3(), e);
    std::cout << "lambda1 for exact satisfaction at lambda3 = " << u.lambda3()
              << ":\n";
    if (g.lambda1_typeI)
      std::cout << "  nonlinear Type I : " << *g.lambda1_typeI << "\n";
    if (g.lambda1_typeII)
      std::cout << "  nonlinear Type II: " << *g.lambda1_typeII << "\n";
    if (g.lambda1_linear)
      std::cout << "  linear           : " << *g.lambda1_linear << "\n";
  } catch (const NoSolution&) {
    std::cout << "no lambda1 in (0,1) solves the exact-satisfaction equations\n";
  }
  return kExitOk;
}

int run_table2(bool as_json) {
  auto reports = table2_report();
  if (as_json) {
    json arr = json::array();
    for (const auto& r : reports) {
      json j;
      j["name"] = r.name;
      j["lambda2_dev"] = r.lambda2_dev;
      if (r.typeI) j["typeI"] = *r.typeI;
      if (r.typeII) j["typeII"] = *r.typeII;
      j["cc3"] = r.cc3;
      j["compound"] = r.compound;
      if (r.compound) j["compound_ok_at_lambda2_1"] = r.compound_ok_at_lambda2_1;
      j["matches_reference"] = r.matches_reference;
      arr.push_back(j);
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const auto& r : reports) {
      std::cout << r.name << ":\n";
      std::cout << "  |lambda2 - 1| = " << r.lambda2_dev << " (ref "
                << r.exp_lambda2 << ")\n";
      if (r.typeI)
        std::cout << "  Type I  |U^-1 e|^2 - 1 = " << *r.typeI << " (ref "
                  << r.exp_typeI << ")\n";
      if (r.typeII)
        std::cout << "  Type II |U e|^2 - 1    = " << *r.typeII << " (ref "
                  << r.exp_typeII << ")\n";
      std::cout << "  cc3 = " << r.cc3 << " (ref " << r.exp_cc3 << ")\n";
      if (r.compound)
        std::cout << "  compound criteria at lambda2 = 1: "
                  << (r.compound_ok_at_lambda2_1 ? "satisfied" : "not satisfied")
                  << "\n";
      std::cout << "  reference match: "
                << (r.matches_reference ? "yes" : "NO") << "\n";
    }
  }
  bool all = true;
  for (const auto& r : reports) all = all && r.matches_reference;
  return all ? kExitOk : kExitNotSatisfied;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"supercompatibility analysis for martensitic transformations"};
  app.require_subcommand(1);

  double tol = default_tolerance();
  bool as_json = false, require = false;
  std::string file, ehat_flag, out_path = "cloud.csv", scene_json_path;

  auto* rep = app.add_subcommand("report", "cofactor-condition report");
  rep->add_option("crystal", file, "crystal JSON file")->required();
  rep->add_option("--ehat", ehat_flag, "two-fold axis h,k,l");
  rep->add_option("--tol", tol, "satisfaction tolerance");
  rep->add_flag("--json", as_json, "machine-readable output");
  rep->add_flag("--require", require, "exit 2 when not satisfied");

  int grid = 100;
  std::string twin = "auto", sweep_out;
  auto* sw = app.add_subcommand("sweep", "habit families over volume fraction");
  sw->add_option("crystal", file, "crystal JSON file")->required();
  sw->add_option("--ehat", ehat_flag, "two-fold axis h,k,l");
  sw->add_option("--grid", grid, "number of f intervals")->check(CLI::PositiveNumber);
  sw->add_option("--twin", twin, "I | II | C1 | C2 | auto");
  sw->add_option("--out", sweep_out, "output CSV (stdout when omitted)");

  std::string mono;
  auto* en = app.add_subcommand("enumerate", "domain systems for the cubic-to-monoclinic variants");
  en->add_option("--monoclinic", mono, "alpha,beta,gamma,delta")->required();
  en->add_flag("--json", as_json, "machine-readable output");

  std::string kind = "triple", nkind = "AinM";
  double f = 0.5, opening = 0.2;
  int k = 8, density = 100;
  auto* sc = app.add_subcommand("scene", "build a microstructure and render a point cloud");
  sc->add_option("crystal", file, "crystal JSON file")->required();
  sc->add_option("--kind", kind, "triple | parallel | crystallographic | nucleation");
  sc->add_option("--ehat", ehat_flag, "two-fold axis h,k,l");
  sc->add_option("--f", f, "twin volume fraction");
  sc->add_option("--k", k, "fineness (bands)");
  sc->add_option("--density", density, "samples per cube edge");
  sc->add_option("--out", out_path, "point-cloud CSV path");
  sc->add_option("--scene-json", scene_json_path, "also write the scene as JSON");
  sc->add_option("--nucleation-kind", nkind, "AinM | MinA");
  sc->add_option("--opening", opening, "nucleation opening parameter");
  sc->add_option("--tol", tol, "cofactor-condition tolerance");
  sc->add_flag("--require", require, "exit 2 when conditions fail");

  std::string target = "type1";
  auto* scr = app.add_subcommand("screen", "interpolation screening over a composition model");
  scr->add_option("model", file, "model JSON file")->required();
  scr->add_option("--target", target, "type1 | type2");
  scr->add_option("--ehat", ehat_flag, "two-fold axis h,k,l");

  auto* lin = app.add_subcommand("linear", "geometrically linear report and comparison");
  lin->add_option("crystal", file, "crystal JSON file")->required();
  lin->add_option("--ehat", ehat_flag, "two-fold axis h,k,l");

  auto* t2 = app.add_subcommand("table2", "bundled candidate-alloy report");
  t2->add_flag("--json", as_json, "machine-readable output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (rep->parsed()) return run_report(file, ehat_flag, tol, as_json, require);
    if (sw->parsed()) return run_sweep(file, ehat_flag, grid, twin, sweep_out);
    if (en->parsed()) return run_enumerate(mono, as_json);
    if (sc->parsed())
      return run_scene(file, ehat_flag, kind, f, k, density, out_path,
                       scene_json_path, nkind, opening, tol, require);
    if (scr->parsed()) return run_screen(file, target, ehat_flag);
    if (lin->parsed()) return run_linear(file, ehat_flag);
    if (t2->parsed()) return run_table2(as_json);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
