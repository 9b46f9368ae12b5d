#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cofac/symmetry.hpp"
#include "cofac/conditions.hpp"
#include "support/gen.hpp"

using namespace cofac;
using nlohmann::json;

namespace {

const MonoclinicParams kGeneric{1.0619, 0.0231, 1.0230, 0.9178};

json load_table1() {
  std::ifstream in(std::string(COFAC_DATA_DIR) + "/table1.json");
  REQUIRE(in.good());
  json j;
  in >> j;
  return j;
}

using PairSet = std::set<std::pair<int, int>>;

PairSet pairs_of(const json& arr) {
  PairSet s;
  for (const auto& p : arr) s.insert({p[0].get<int>(), p[1].get<int>()});
  return s;
}

}  // namespace

TEST_SUITE("symmetry") {

TEST_CASE("cubic point group structure") {
  PointGroup p = cubic_point_group();
  CHECK(p.size() == 24);

  int n180 = 0, n90 = 0, n120 = 0, nid = 0;
  bool has_180_110 = false, has_90_001 = false;
  for (const auto& g : p.elements) {
    CHECK(is_rotation(g.R, 1e-12));
    if (g.angle_deg == 180) {
      ++n180;
      if (g.axis == std::array<int, 3>{1, 1, 0}) has_180_110 = true;
    } else if (g.angle_deg == 90) {
      ++n90;
      if (g.axis == std::array<int, 3>{0, 0, 1}) has_90_001 = true;
    } else if (g.angle_deg == 120) {
      ++n120;
    } else {
      ++nid;
    }
  }
  CHECK(nid == 1);
  CHECK(n180 == 9);
  CHECK(n90 == 6);
  CHECK(n120 == 8);
  CHECK(has_180_110);
  CHECK(has_90_001);

  // exhaustive closure
  for (const auto& a : p.elements) {
    for (const auto& b : p.elements) {
      Mat3 c = a.R * b.R;
      bool found = false;
      for (const auto& g : p.elements)
        if (frobenius(c - g.R) < 1e-12) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("monoclinic variants") {
  VariantSet vs = monoclinic_variants(kGeneric);
  CHECK(vs.U.size() == 12);

  // U5 has the printed block layout
  const Mat3& u5 = vs.U[4].U;
  CHECK(u5(0, 0) == kGeneric.gamma);
  CHECK(u5(1, 1) == kGeneric.delta);
  CHECK(u5(1, 2) == kGeneric.beta);
  CHECK(u5(2, 2) == kGeneric.alpha);
  CHECK(u5(0, 1) == 0.0);

  // every variant is a group conjugate of U1 with equal spectrum
  PointGroup p = cubic_point_group();
  for (const auto& u : vs.U) {
    for (int i = 0; i < 3; ++i)
      CHECK(std::abs(u.eig.lambda[i] - vs.U[0].eig.lambda[i]) < 1e-12);
    bool conjugate = false;
    for (const auto& g : p.elements)
      if (frobenius(g.R * vs.U[0].U * g.R.transposed() - u.U) < 1e-12)
        conjugate = true;
    CHECK(conjugate);
  }

  CHECK_THROWS_AS(monoclinic_variants(MonoclinicParams{1.05, 0.0, 1.02, 1.05}),
                  DegenerateVariants);
}

TEST_CASE("domain census for generic parameters") {
  VariantSet vs = monoclinic_variants(kGeneric);
  PointGroup p = cubic_point_group();
  auto systems = enumerate_domains(vs, p);
  DomainCensus c = census(systems);
  CHECK(c.typeI_twins == 24);
  CHECK(c.typeII_twins == 24);
  CHECK(c.compound_twins == 24);
  CHECK(c.typeI_domains == 24);
  CHECK(c.typeII_domains == 24);
  CHECK(c.compound_domains == 12);

  // every listed system's axes truly generate the pair
  for (const auto& s : systems) {
    for (const auto& e : s.axes) {
      Mat3 q = two_fold(e);
      CHECK(frobenius(q * vs.U[s.i - 1].U * q - vs.U[s.j - 1].U) < 1e-8);
    }
  }
}

TEST_CASE("specific pairs match the reference table") {
  VariantSet vs = monoclinic_variants(kGeneric);
  PointGroup p = cubic_point_group();
  auto systems = enumerate_domains(vs, p);

  auto find = [&](int i, int j, int angle) -> const DomainSystem* {
    for (const auto& s : systems)
      if (s.i == i && s.j == j && s.relation.angle_deg == angle) return &s;
    return nullptr;
  };

  const DomainSystem* s12 = find(1, 2, 180);
  REQUIRE(s12);
  CHECK(s12->kind == DomainClass::Compound);

  const DomainSystem* s16 = find(1, 6, 180);
  REQUIRE(s16);
  CHECK(s16->kind == DomainClass::TypeI_II);
  CHECK(s16->relation.axis == std::array<int, 3>{1, 0, 1});

  // (1,9) is related only by 120-degree rotations: no system at all
  for (const auto& s : systems) CHECK((s.i != 1 || s.j != 9));
}

TEST_CASE("table transcription reproduced exactly") {
  VariantSet vs = monoclinic_variants(kGeneric);
  PointGroup p = cubic_point_group();
  auto systems = enumerate_domains(vs, p);

  json table = load_table1();
  for (const auto& row : table["rows"]) {
    int angle = row["angle"].get<int>();
    std::array<int, 3> axis{row["axis"][0].get<int>(), row["axis"][1].get<int>(),
                            row["axis"][2].get<int>()};
    PairSet t12_expect = pairs_of(row["type12"]);
    PairSet comp_expect = pairs_of(row["compound"]);
    PairSet t12, comp;
    for (const auto& s : systems) {
      if (s.relation.angle_deg != angle || s.relation.axis != axis) continue;
      (s.kind == DomainClass::TypeI_II ? t12 : comp).insert({s.i, s.j});
    }
    CAPTURE(angle);
    CHECK(t12 == t12_expect);
    CHECK(comp == comp_expect);
  }
}

TEST_CASE("equivalence classes group symmetry-related systems") {
  VariantSet vs = monoclinic_variants(kGeneric);
  PointGroup p = cubic_point_group();
  auto systems = enumerate_domains(vs, p);
  int nclasses = cc_equivalence_classes(systems, vs, p);
  CHECK(nclasses > 1);

  auto class_of = [&](int i, int j, int angle) {
    for (const auto& s : systems)
      if (s.i == i && s.j == j && s.relation.angle_deg == angle)
        return s.cc_class;
    return -1;
  };
  // the quoted box: (1,6), (2,5), (1,5), (2,6) as 180-degree twins
  int c16 = class_of(1, 6, 180);
  CHECK(c16 >= 0);
  CHECK(class_of(2, 5, 180) == c16);
  CHECK(class_of(1, 5, 180) == c16);
  CHECK(class_of(2, 6, 180) == c16);

  // conjugacy invariance of the cofactor residuals within a class
  for (int cls = 0; cls < nclasses; ++cls) {
    double ref_cc1 = 0, ref_t1 = 0;
    bool first = true;
    for (const auto& s : systems) {
      if (s.cc_class != cls || s.kind != DomainClass::TypeI_II) continue;
      StretchTensor u = vs.U[s.i - 1];
      double cc1 = u.lambda2() - 1.0;
      double t1 = std::abs(check_type1(u, s.axes[0]));
      if (first) {
        ref_cc1 = cc1;
        ref_t1 = t1;
        first = false;
      } else {
        CHECK(std::abs(cc1 - ref_cc1) < 1e-10);
        CHECK(std::abs(t1 - ref_t1) < 1e-10);
      }
    }
  }
}

TEST_CASE("conjugacy invariance of residuals") {
  VariantSet vs = monoclinic_variants(kGeneric);
  PointGroup p = cubic_point_group();
  StretchTensor u1 = vs.U[0];
  Vec3 e = normalized(Vec3{1, 0, 1});
  DomainSolution s = type1_solution(u1, e);
  CcResiduals base = cc_residuals(u1, s.a, s.n);
  for (const auto& g : p.elements) {
    StretchTensor ug(symmetrize(g.R * u1.U * g.R.transposed()));
    Vec3 eg = g.R * e;
    DomainSolution sg = type1_solution(ug, eg);
    CcResiduals rg = cc_residuals(ug, sg.a, sg.n);
    CHECK(std::abs(rg.cc1 - base.cc1) < 1e-10);
    CHECK(std::abs(rg.cc2 - base.cc2) < 1e-10);
    CHECK(std::abs(rg.cc3 - base.cc3) < 1e-10);
  }
}

TEST_CASE("gamma = 1 satisfies CC1 and CC2' on every compound system") {
  // gamma is the middle eigenvalue once the in-plane block straddles 1
  MonoclinicParams p1{1.0619, 0.0231, 1.0, 0.9178};
  VariantSet vs = monoclinic_variants(p1);
  CHECK(vs.U[0].lambda2() == doctest::Approx(1.0).epsilon(1e-12));
  PointGroup p = cubic_point_group();
  auto systems = enumerate_domains(vs, p);
  int compound_count = 0;
  for (const auto& s : systems) {
    if (s.kind != DomainClass::Compound) continue;
    ++compound_count;
    StretchTensor u = vs.U[s.i - 1];
    for (const auto& e : s.axes) {
      CompoundChecks c = check_compound(u, e, 1e-8);
      CHECK(std::abs(c.e1_dot_v2) < 1e-8);
      CHECK(std::abs(c.e2_dot_v2) < 1e-8);
      CHECK(c.sin_e1_v1 > 1e-4);
      CHECK(c.sin_e1_v3 > 1e-4);
    }
  }
  CHECK(compound_count == 36);  // 24 twin + 12 domain systems
}

}  // TEST_SUITE
