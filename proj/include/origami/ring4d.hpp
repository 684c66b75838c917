#pragma once

// Degree-2 and degree-4 presentation of the equivariant cohomology of a
// 4-dimensional toric origami manifold, modulo the image of H^2(BT), from
// the multi-fan on the boundary circles of M/T.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "origami/errors.hpp"
#include "origami/exact_linalg.hpp"
#include "origami/orbit_space.hpp"
#include "origami/origami_template.hpp"

namespace origami {

/// One boundary circle of M/T. normals[i] is the inward normal of the facet
/// class tau_i; corner i joins tau_i and tau_{i+1} (cyclically) and
/// corner_signs[i] is the orientation sign of the polytope containing it.
struct BoundaryCycle {
  std::size_t component = 0;
  std::vector<std::size_t> facet_classes;  ///< empty for cycles built from normals
  std::vector<IntVector> normals;
  std::vector<std::size_t> corner_classes;
  std::vector<int> corner_signs;

  std::size_t size() const noexcept { return normals.size(); }
};

inline Integer det2(const IntVector& a, const IntVector& b) { return a[0] * b[1] - a[1] * b[0]; }

inline Integer pair2(const IntVector& u, const IntVector& v) { return u[0] * v[0] + u[1] * v[1]; }

namespace detail {

inline void check_cycle(const BoundaryCycle& c) {
  const std::size_t m = c.size();
  if (m < 2 || c.corner_signs.size() != m) throw StructuralError("boundary cycle is malformed");
  for (const auto& v : c.normals) {
    if (v.size() != 2) throw DimensionError("multi-fan normals must be 2-dimensional");
  }
  std::optional<Integer> orient;
  for (std::size_t i = 0; i < m; ++i) {
    const Integer d = det2(c.normals[i], c.normals[(i + 1) % m]);
    if (d != 1 && d != -1) {
      throw StructuralError("adjacent multi-fan normals " + format_indices({i, (i + 1) % m}) + " have determinant " +
                            d.str());
    }
    const Integer s = d * c.corner_signs[i];
    if (orient && *orient != s) throw StructuralError("corner orientations are inconsistent along a boundary cycle");
    orient = s;
  }
}

}  // namespace detail

/// Same circle traversed the other way, still starting at the same class.
inline BoundaryCycle reversed(const BoundaryCycle& c) {
  BoundaryCycle r = c;
  const std::size_t m = c.size();
  for (std::size_t k = 1; k < m; ++k) {
    r.normals[k] = c.normals[m - k];
    if (!c.facet_classes.empty()) r.facet_classes[k] = c.facet_classes[m - k];
  }
  for (std::size_t k = 0; k < m; ++k) {
    r.corner_signs[k] = c.corner_signs[m - 1 - k];
    if (!c.corner_classes.empty()) r.corner_classes[k] = c.corner_classes[m - 1 - k];
  }
  return r;
}

/// A cycle given directly by its normals. Corner signs default to the
/// determinants of adjacent normals.
inline BoundaryCycle cycle_from_normals(std::vector<IntVector> normals, std::vector<int> corner_signs = {}) {
  BoundaryCycle c;
  c.normals = std::move(normals);
  const std::size_t m = c.size();
  if (corner_signs.empty()) {
    for (std::size_t i = 0; i < m; ++i) {
      corner_signs.push_back(det2(c.normals[i], c.normals[(i + 1) % m]) > 0 ? 1 : -1);
    }
  }
  c.corner_signs = std::move(corner_signs);
  detail::check_cycle(c);
  return c;
}

/// Multi-fan of a 4-dimensional template: one cycle per boundary circle,
/// starting at its lowest facet class, traversed in the direction with more
/// positive corner determinants (ties: lowest-id neighbour first).
inline std::vector<BoundaryCycle> multifan_2d(const OrigamiTemplate& t) {
  if (t.n() != 2) throw CapabilityError("the ring presentation is implemented only for n = 2 (dim M = 4)");
  if (!check_orientable(t)) throw PreconditionError("multifan_2d needs an orientable, coorientable template");
  const auto fp = build_face_classes(t);
  if (acyclicity_report(fp).r_min != 1) throw PreconditionError("multifan_2d needs every proper face acyclic");
  const auto signs = *orientation_signs(t);

  std::vector<BoundaryCycle> out;
  const auto comps = boundary_components(fp);
  for (std::size_t k = 0; k < comps.size(); ++k) {
    BoundaryCycle c;
    c.component = k;
    c.facet_classes = comps[k].facets;
    c.corner_classes = comps[k].corners;
    for (auto fc : c.facet_classes) {
      std::optional<IntVector> normal;
      for (const auto& con : fp.face_class(fc).constituents) {
        const auto& v = t.polytope(con.vertex).facet(facet_indices(con.face).front()).normal;
        if (normal && *normal != v) {
          throw StructuralError("facet class " + std::to_string(fc) + " has constituents with different normals");
        }
        normal = v;
      }
      c.normals.push_back(*normal);
    }
    for (auto corner : c.corner_classes) {
      c.corner_signs.push_back(signs[fp.face_class(corner).constituents.front().vertex]);
    }
    detail::check_cycle(c);
    long long balance = 0;
    for (std::size_t i = 0; i < c.size(); ++i) balance += det2(c.normals[i], c.normals[(i + 1) % c.size()]) > 0 ? 1 : -1;
    out.push_back(balance < 0 ? reversed(c) : c);
  }
  return out;
}

/// Global index of tau_i: cycles are concatenated in order.
struct TauIndex {
  std::vector<std::size_t> offset;  ///< first tau of each cycle
  std::size_t count = 0;

  explicit TauIndex(const std::vector<BoundaryCycle>& cycles) {
    for (const auto& c : cycles) {
      offset.push_back(count);
      count += c.size();
    }
  }
};

/// Linear relations sum_i <u, v_i> tau_i = 0 for u = e1*, e2*.
struct Degree2Presentation {
  std::size_t generators = 0;
  IntMatrix relations;  ///< 2 x generators
  std::size_t relation_rank = 0;
  std::size_t rank = 0;  ///< generators - relation_rank
};

inline Degree2Presentation degree2_presentation(const std::vector<BoundaryCycle>& cycles) {
  const TauIndex idx(cycles);
  Degree2Presentation p;
  p.generators = idx.count;
  p.relations = IntMatrix(2, idx.count);
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    for (std::size_t i = 0; i < cycles[k].size(); ++i) {
      p.relations(0, idx.offset[k] + i) = cycles[k].normals[i][0];
      p.relations(1, idx.offset[k] + i) = cycles[k].normals[i][1];
    }
  }
  p.relation_rank = rank(p.relations);
  p.rank = p.generators - p.relation_rank;
  return p;
}

/// The same relations written against covectors u1, u2 (rows <u_k, v_i>).
inline IntMatrix degree2_relations_in_basis(const std::vector<BoundaryCycle>& cycles, const IntVector& u1,
                                            const IntVector& u2) {
  const TauIndex idx(cycles);
  IntMatrix r(2, idx.count);
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    for (std::size_t i = 0; i < cycles[k].size(); ++i) {
      r(0, idx.offset[k] + i) = pair2(u1, cycles[k].normals[i]);
      r(1, idx.offset[k] + i) = pair2(u2, cycles[k].normals[i]);
    }
  }
  return r;
}

/// Dual basis (u1, u2) of the first two normals of a cycle.
inline std::pair<IntVector, IntVector> dual_basis(const IntVector& v1, const IntVector& v2) {
  const Integer d = det2(v1, v2);
  if (d != 1 && d != -1) throw StructuralError("dual_basis needs a unimodular pair");
  // inverse of [v1 v2] (columns) is (1/d) [[v2y, -v2x], [-v1y, v1x]]
  return {IntVector{v2[1] * d, -v2[0] * d}, IntVector{-v1[1] * d, v1[0] * d}};
}

/// A relation row rendered as "tau1+tau5=tau3+tau7" (1-based, positive
/// terms on the left).
inline std::string format_relation(std::span<const Integer> row) {
  auto side = [&](int sign) {
    std::string s;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] == 0 || (row[i] > 0) != (sign > 0)) continue;
      const Integer c = abs_value(row[i]);
      if (!s.empty()) s += "+";
      if (c != 1) s += c.str();
      s += "tau" + std::to_string(i + 1);
    }
    return s.empty() ? std::string("0") : s;
  };
  return side(1) + "=" + side(-1);
}

/// Degree-4 monomials: tau_i^2 for every i, then one product per corner.
struct Degree4Structure {
  std::size_t square_count = 0;
  std::size_t corner_count = 0;
  IntMatrix relations;               ///< rows: tau_i * pi*(u), u = e1*, e2*
  std::size_t relation_rank = 0;
  std::size_t rank = 0;              ///< over Q
  std::vector<Integer> torsion;      ///< invariant factors > 1 of the relation matrix
  std::vector<IntVector> mu;         ///< one per cycle, in monomial coordinates
  std::vector<IntVector> kernel;     ///< mu_1 - mu_k, k >= 2
  std::size_t kernel_rank = 0;

  std::size_t monomial_count() const noexcept { return square_count + corner_count; }
  std::size_t square(std::size_t tau) const noexcept { return tau; }
  std::size_t corner(std::size_t global_corner) const noexcept { return square_count + global_corner; }
};

namespace detail {

inline bool in_row_space(const IntMatrix& rows, std::size_t base_rank, const IntVector& v) {
  IntMatrix m = rows;
  m.append_row(v);
  return rank(m) == base_rank;
}

}  // namespace detail

inline Degree4Structure degree4_structure(const std::vector<BoundaryCycle>& cycles) {
  const TauIndex idx(cycles);
  Degree4Structure s;
  s.square_count = idx.count;
  s.corner_count = idx.count;
  const std::size_t cols = s.monomial_count();
  s.relations = IntMatrix(0, cols);
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    const auto& c = cycles[k];
    const std::size_t m = c.size();
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t prev = (i + m - 1) % m;
      const std::size_t next = (i + 1) % m;
      for (std::size_t axis = 0; axis < 2; ++axis) {
        IntVector row(cols, 0);
        row[s.square(idx.offset[k] + i)] += c.normals[i][axis];
        row[s.corner(idx.offset[k] + prev)] += c.normals[prev][axis];
        row[s.corner(idx.offset[k] + i)] += c.normals[next][axis];
        s.relations.append_row(row);
      }
    }
  }
  s.relation_rank = rank(s.relations);
  s.rank = cols - s.relation_rank;
  for (const auto& d : smith_normal_form(s.relations)) {
    if (d > 1) s.torsion.push_back(d);
  }

  for (std::size_t k = 0; k < cycles.size(); ++k) {
    const auto& c = cycles[k];
    auto candidate = [&](std::size_t i) {
      IntVector v(cols, 0);
      v[s.corner(idx.offset[k] + i)] = c.corner_signs[i];
      return v;
    };
    const IntVector mu = candidate(0);
    for (std::size_t i = 1; i < c.size(); ++i) {
      IntVector diff = candidate(i);
      for (std::size_t j = 0; j < cols; ++j) diff[j] -= mu[j];
      if (!detail::in_row_space(s.relations, s.relation_rank, diff)) {
        throw StructuralError("the degree-4 class of boundary cycle " + std::to_string(k + 1) +
                              " depends on the chosen corner");
      }
    }
    if (detail::in_row_space(s.relations, s.relation_rank, mu)) {
      throw StructuralError("the degree-4 class of boundary cycle " + std::to_string(k + 1) + " vanishes");
    }
    s.mu.push_back(mu);
  }
  for (std::size_t k = 1; k < s.mu.size(); ++k) {
    IntVector d = s.mu[0];
    for (std::size_t j = 0; j < cols; ++j) d[j] -= s.mu[k][j];
    s.kernel.push_back(std::move(d));
  }
  IntMatrix with_kernel = s.relations;
  for (const auto& v : s.kernel) with_kernel.append_row(v);
  s.kernel_rank = rank(with_kernel) - s.relation_rank;
  return s;
}

/// tau_i^2 = coeff_prev * tau_{i-1} tau_i + coeff_next * tau_i tau_{i+1},
/// obtained from a covector u with <u, v_i> = 1.
struct TauSquare {
  IntVector u;
  Integer coeff_prev;
  Integer coeff_next;
};

namespace detail {

/// Covectors u with <u, v> = 1, ordered by L1 norm then lexicographically.
inline std::vector<IntVector> unit_covectors(const IntVector& v, std::size_t how_many) {
  const Integer bound = abs_value(v[0]) + abs_value(v[1]) + 2;
  const long long b = static_cast<long long>(bound);
  std::vector<IntVector> found;
  for (long long x = -b; x <= b; ++x) {
    for (long long y = -b; y <= b; ++y) {
      IntVector u{Integer(x), Integer(y)};
      if (pair2(u, v) == 1) found.push_back(u);
    }
  }
  std::sort(found.begin(), found.end(), [](const IntVector& a, const IntVector& c) {
    const Integer la = abs_value(a[0]) + abs_value(a[1]);
    const Integer lc = abs_value(c[0]) + abs_value(c[1]);
    return la != lc ? la < lc : a < c;
  });
  if (found.size() > how_many) found.resize(how_many);
  return found;
}

}  // namespace detail

/// Expansion of tau_i^2 (global tau index) in the two adjacent products.
/// Checks that the next few admissible covectors give the same element
/// modulo the degree-4 relations.
inline TauSquare tau_square_expansion(const std::vector<BoundaryCycle>& cycles, std::size_t tau) {
  const TauIndex idx(cycles);
  if (tau >= idx.count) throw std::out_of_range("tau index " + std::to_string(tau) + " out of range");
  std::size_t k = 0;
  while (k + 1 < cycles.size() && idx.offset[k + 1] <= tau) ++k;
  const auto& c = cycles[k];
  const std::size_t m = c.size();
  const std::size_t i = tau - idx.offset[k];
  const auto& vp = c.normals[(i + m - 1) % m];
  const auto& vn = c.normals[(i + 1) % m];

  const auto us = detail::unit_covectors(c.normals[i], 3);
  if (us.empty()) throw StructuralError("normal is not primitive");
  const auto d4 = degree4_structure(cycles);
  std::optional<TauSquare> first;
  for (const auto& u : us) {
    TauSquare e{u, -pair2(u, vp), -pair2(u, vn)};
    IntVector row(d4.monomial_count(), 0);
    row[d4.square(tau)] = 1;
    row[d4.corner(idx.offset[k] + (i + m - 1) % m)] -= e.coeff_prev;
    row[d4.corner(idx.offset[k] + i)] -= e.coeff_next;
    if (!detail::in_row_space(d4.relations, d4.relation_rank, row)) {
      throw StructuralError("tau square expansion does not hold modulo the relations");
    }
    if (!first) first = e;
  }
  return *first;
}

}  // namespace origami
