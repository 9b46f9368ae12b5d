#include "cofac/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace cofac {

namespace {

std::array<int, 3> canonical_int_axis(const Vec3& v) {
  // Scale so entries are in {-1, 0, 1} (sufficient for cubic elements).
  double mx = std::max({std::abs(v.x), std::abs(v.y), std::abs(v.z)});
  std::array<int, 3> a{};
  for (int i = 0; i < 3; ++i) a[i] = static_cast<int>(std::lround(v[i] / mx));
  for (int i = 0; i < 3; ++i) {
    if (a[i] != 0) {
      if (a[i] < 0)
        for (int k = 0; k < 3; ++k) a[k] = -a[k];
      break;
    }
  }
  return a;
}

GroupElement tag_element(const Mat3& R) {
  GroupElement g;
  g.R = R;
  double tr = R.trace();
  if (std::abs(tr - 3.0) < 1e-9) {
    g.angle_deg = 0;
    g.axis = {0, 0, 0};
    return g;
  }
  if (std::abs(tr + 1.0) < 1e-9) {
    g.angle_deg = 180;
    // R = -I + 2 e(x)e: read the axis off the largest diagonal of (R+I)/2.
    Mat3 m = (R + Mat3::identity()) * 0.5;
    int best = 0;
    for (int i = 1; i < 3; ++i)
      if (m(i, i) > m(best, best)) best = i;
    Vec3 e = m.col(best) / std::sqrt(m(best, best));
    g.axis = canonical_int_axis(e);
    return g;
  }
  g.angle_deg = static_cast<int>(
      std::lround(std::acos((tr - 1.0) / 2.0) * 180.0 / M_PI));
  Vec3 e{R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1)};
  g.axis = canonical_int_axis(e);
  return g;
}

}  // namespace

PointGroup cubic_point_group() {
  PointGroup p;
  // Signed permutation matrices with determinant +1.
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                           {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& perm : perms) {
    for (int sx : {1, -1})
      for (int sy : {1, -1})
        for (int sz : {1, -1}) {
          Mat3 m = Mat3::zero();
          const int sg[3] = {sx, sy, sz};
          for (int i = 0; i < 3; ++i) m(i, perm[i]) = sg[i];
          if (std::abs(m.det() - 1.0) < 1e-12)
            p.elements.push_back(tag_element(m));
        }
  }
  return p;
}

VariantSet monoclinic_variants(const MonoclinicParams& p) {
  const double a = p.alpha, b = p.beta, g = p.gamma, d = p.delta;
  auto M = [](double m00, double m01, double m02, double m10, double m11,
              double m12, double m20, double m21, double m22) {
    return Mat3{{m00, m01, m02, m10, m11, m12, m20, m21, m22}};
  };
  std::vector<Mat3> mats = {
      M(a, b, 0, b, d, 0, 0, 0, g),   M(a, -b, 0, -b, d, 0, 0, 0, g),
      M(d, b, 0, b, a, 0, 0, 0, g),   M(d, -b, 0, -b, a, 0, 0, 0, g),
      M(g, 0, 0, 0, d, b, 0, b, a),   M(g, 0, 0, 0, d, -b, 0, -b, a),
      M(a, 0, b, 0, g, 0, b, 0, d),   M(a, 0, -b, 0, g, 0, -b, 0, d),
      M(d, 0, b, 0, g, 0, b, 0, a),   M(d, 0, -b, 0, g, 0, -b, 0, a),
      M(g, 0, 0, 0, a, b, 0, b, d),   M(g, 0, 0, 0, a, -b, 0, -b, d)};

  VariantSet vs;
  for (const Mat3& m : mats) vs.U.emplace_back(m);

  if (std::abs(a - d) < 1e-12 || std::abs(b) < 1e-12)
    throw DegenerateVariants("monoclinic_variants: alpha = delta or beta = 0");
  const auto& lam = vs.U[0].eig.lambda;
  if (lam[1] - lam[0] < 1e-10 || lam[2] - lam[1] < 1e-10)
    throw DegenerateVariants("monoclinic_variants: repeated eigenvalues");
  return vs;
}

namespace {

int variant_index(const VariantSet& vs, const Mat3& m, double tol) {
  for (std::size_t k = 0; k < vs.U.size(); ++k)
    if (frobenius(vs.U[k].U - m) < tol) return static_cast<int>(k);
  return -1;
}

}  // namespace

std::vector<DomainSystem> enumerate_domains(const VariantSet& variants,
                                            const PointGroup& group) {
  const int n = static_cast<int>(variants.U.size());
  std::vector<DomainSystem> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      AxisRecovery rec;
      try {
        rec = recover_axes(variants.U[i], variants.U[j]);
      } catch (const InconsistentInput&) {
        continue;  // orthogonally similar but not twin-related
      }
      if (rec.status == AxisRecovery::EqualTensors)
        throw NotSimilar("enumerate_domains: duplicate variants in set");
      DomainClass kind = rec.status == AxisRecovery::CompoundPairAxes
                             ? DomainClass::Compound
                             : DomainClass::TypeI_II;
      double scale = frobenius(variants.U[i].U);
      for (const GroupElement& g : group.elements) {
        if (g.angle_deg == 0) continue;
        Mat3 mapped = g.R * variants.U[i].U * g.R.transposed();
        if (frobenius(mapped - variants.U[j].U) > 1e-10 * scale) continue;
        DomainSystem s;
        s.i = i + 1;
        s.j = j + 1;
        s.relation = g;
        s.kind = kind;
        s.axes = rec.axes;
        s.conventional = g.angle_deg == 180;
        out.push_back(s);
      }
    }
  }
  return out;
}

DomainCensus census(const std::vector<DomainSystem>& systems) {
  DomainCensus c;
  for (const auto& s : systems) {
    if (s.kind == DomainClass::TypeI_II) {
      if (s.conventional) {
        ++c.typeI_twins;
        ++c.typeII_twins;
      } else {
        ++c.typeI_domains;
        ++c.typeII_domains;
      }
    } else {
      (s.conventional ? c.compound_twins : c.compound_domains) += 1;
    }
  }
  return c;
}

int cc_equivalence_classes(std::vector<DomainSystem>& systems,
                           const VariantSet& variants,
                           const PointGroup& group) {
  const int nsys = static_cast<int>(systems.size());
  // Union-find over systems.
  std::vector<int> parent(nsys);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };

  auto locate = [&](int i, int j, const Mat3& rel) -> int {
    for (int k = 0; k < nsys; ++k) {
      const auto& s = systems[k];
      if (s.i != i || s.j != j) continue;
      if (frobenius(s.relation.R - rel) < 1e-9 ||
          frobenius(s.relation.R - rel.transposed()) < 1e-9)
        return k;
    }
    return -1;
  };

  double scale = frobenius(variants.U[0].U);
  for (int k = 0; k < nsys; ++k) {
    const auto& s = systems[k];
    for (const GroupElement& g : group.elements) {
      Mat3 gi = g.R * variants.U[s.i - 1].U * g.R.transposed();
      Mat3 gj = g.R * variants.U[s.j - 1].U * g.R.transposed();
      int ii = variant_index(variants, gi, 1e-10 * scale);
      int jj = variant_index(variants, gj, 1e-10 * scale);
      if (ii < 0 || jj < 0) continue;
      // Mapped relation: (g R g^T) maps U_ii to U_jj.
      Mat3 rel = g.R * s.relation.R * g.R.transposed();
      int a = std::min(ii, jj) + 1, b = std::max(ii, jj) + 1;
      if (ii > jj) rel = rel.transposed();
      int other = locate(a, b, rel);
      if (other >= 0) unite(k, other);
    }
  }

  int nclasses = 0;
  std::vector<int> label(nsys, -1);
  for (int k = 0; k < nsys; ++k) {
    int r = find(k);
    if (label[r] < 0) label[r] = nclasses++;
    systems[k].cc_class = label[r];
  }
  return nclasses;
}

}  // namespace cofac
