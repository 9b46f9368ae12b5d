#pragma once

// Cubic point group, the twelve cubic-to-monoclinic variants, and the full
// domain-system table with symmetry-equivalence classes.

#include <array>
#include <string>
#include <vector>

#include "cofac/twin.hpp"

namespace cofac {

struct GroupElement {
  Mat3 R;
  int angle_deg = 0;          // 0, 90, 120 or 180
  std::array<int, 3> axis{};  // integer axis, canonical sign; {0,0,0} for I
};

struct PointGroup {
  std::vector<GroupElement> elements;
  std::size_t size() const { return elements.size(); }
};

// The 24 proper rotations of the cube, each tagged with angle and axis.
PointGroup cubic_point_group();

struct MonoclinicParams {
  double alpha, beta, gamma, delta;
};

struct VariantSet {
  std::vector<StretchTensor> U;  // U[0] .. U[11], paper-order indexing
};

// The twelve monoclinic variants generated from [alpha beta 0; beta delta 0;
// 0 0 gamma].  Requires distinct eigenvalues and alpha != delta.
VariantSet monoclinic_variants(const MonoclinicParams& p);

// One compatibility system: an unordered variant pair together with the
// point-group rotation that relates it.
struct DomainSystem {
  int i = 0, j = 0;             // 1-based variant labels, i < j
  GroupElement relation;        // R in P with R U_i R^T = U_j
  DomainClass kind = DomainClass::TypeI_II;
  std::vector<Vec3> axes;       // two-fold axes from recover_axes
  bool conventional = false;    // relation is a 180-degree element of P
  int cc_class = -1;            // symmetry-equivalence class id
};

struct DomainCensus {
  int typeI_twins = 0, typeII_twins = 0, compound_twins = 0;
  int typeI_domains = 0, typeII_domains = 0, compound_domains = 0;
};

// All systems between variant pairs: for every relating rotation in the
// group, one DomainSystem.  Pairs with no two-fold relation are skipped.
std::vector<DomainSystem> enumerate_domains(const VariantSet& variants,
                                            const PointGroup& group);

DomainCensus census(const std::vector<DomainSystem>& systems);

// Partition systems into conjugacy classes under the group (fills cc_class
// in place and returns the number of classes).  Residuals of the cofactor
// conditions agree within a class.
int cc_equivalence_classes(std::vector<DomainSystem>& systems,
                           const VariantSet& variants, const PointGroup& group);

}  // namespace cofac
