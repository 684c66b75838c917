#pragma once

// Delzant polytopes in H-representation { x : <normal_i, x> + offset_i >= 0 },
// their vertices, face lattices and the smoothness (unimodularity) check.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "origami/diagnostics.hpp"
#include "origami/errors.hpp"
#include "origami/exact_linalg.hpp"
#include "origami/face_vectors.hpp"

namespace origami {

/// Set of facet indices; faces of a simple polytope are identified with the
/// set of facets containing them.
using FacetMask = std::uint64_t;
inline constexpr std::size_t kMaxFacets = 64;

inline constexpr FacetMask facet_bit(std::size_t i) { return FacetMask{1} << i; }
inline std::size_t facet_count(FacetMask m) { return static_cast<std::size_t>(std::popcount(m)); }

inline std::vector<std::size_t> facet_indices(FacetMask m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; m != 0; ++i, m >>= 1) {
    if (m & 1) out.push_back(i);
  }
  return out;
}

inline std::string format_point(const RationalVector& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + to_string(x[i]);
  return s + ")";
}

inline std::string format_indices(const std::vector<std::size_t>& ids) {
  std::string s = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + std::to_string(ids[i]);
  return s + "}";
}

struct Facet {
  IntVector normal;
  Rational offset;

  friend bool operator==(const Facet&, const Facet&) = default;
};

/// Same supporting hyperplane and side (valid because normals are primitive).
inline bool same_halfspace(const Facet& a, const Facet& b) { return a.normal == b.normal && a.offset == b.offset; }

class DelzantPolytope {
 public:
  /// Normals are divided by the gcd of their entries (offset scaled alike);
  /// each such rewrite is recorded in notes().
  DelzantPolytope(std::size_t dim, std::vector<Facet> facets, std::string label = {})
      : dim_(dim), facets_(std::move(facets)), label_(std::move(label)) {
    if (dim_ == 0) throw DimensionError("polytope dimension must be positive");
    if (facets_.empty()) throw PreconditionError("polytope '" + label_ + "' has no facets");
    if (facets_.size() > kMaxFacets) {
      throw CapabilityError("polytope '" + label_ + "' has more than 64 facets");
    }
    for (std::size_t i = 0; i < facets_.size(); ++i) {
      Facet& f = facets_[i];
      if (f.normal.size() != dim_) {
        throw DimensionError("facet " + std::to_string(i) + " of '" + label_ + "' has a normal of length " +
                             std::to_string(f.normal.size()) + ", expected " + std::to_string(dim_));
      }
      Integer g = 0;
      for (const auto& c : f.normal) g = gcd(g, c);
      if (g > 1) {
        for (auto& c : f.normal) c /= g;
        f.offset /= g;
        notes_.push_back("facet " + std::to_string(i) + " of '" + label_ + "': normal divided by " + g.str() +
                         " to make it primitive");
      }
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Facet>& facets() const noexcept { return facets_; }
  const Facet& facet(std::size_t i) const { return facets_.at(i); }
  std::size_t facet_count() const noexcept { return facets_.size(); }
  const std::string& label() const noexcept { return label_; }
  const std::vector<std::string>& notes() const noexcept { return notes_; }

  /// <normal_i, x> + offset_i
  Rational slack(std::size_t i, const RationalVector& x) const {
    const Facet& f = facets_[i];
    Rational s = f.offset;
    for (std::size_t k = 0; k < dim_; ++k) s += Rational(f.normal[k]) * x[k];
    return s;
  }

  friend bool operator==(const DelzantPolytope& a, const DelzantPolytope& b) {
    return a.dim_ == b.dim_ && a.facets_ == b.facets_ && a.label_ == b.label_;
  }

 private:
  std::size_t dim_;
  std::vector<Facet> facets_;
  std::string label_;
  std::vector<std::string> notes_;
};

struct PolytopeVertex {
  RationalVector point;
  FacetMask tight = 0;
};

/// Affine dimension of a finite point set (-1 when empty).
inline long long affine_dimension(const std::vector<const RationalVector*>& pts) {
  if (pts.empty()) return -1;
  RationalMatrix diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RationalVector d(pts[i]->size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = (*pts[i])[k] - (*pts[0])[k];
    diffs.append_row(d);
  }
  return static_cast<long long>(rank(std::move(diffs)));
}

/// Every point cut out by n facets that satisfies all inequalities, with
/// the set of facets it is tight on. Sorted lexicographically, no
/// duplicates. Brute force over n-subsets of facets.
inline std::vector<PolytopeVertex> vertex_incidence(const DelzantPolytope& p) {
  const std::size_t n = p.dim();
  const std::size_t m = p.facet_count();
  std::map<RationalVector, FacetMask> found;
  if (m < n) return {};
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  for (;;) {
    RationalMatrix a(n, n);
    RationalVector b(n);
    for (std::size_t r = 0; r < n; ++r) {
      const Facet& f = p.facet(pick[r]);
      for (std::size_t c = 0; c < n; ++c) a(r, c) = Rational(f.normal[c]);
      b[r] = -f.offset;
    }
    if (auto x = solve_rational(std::move(a), std::move(b)); x && !found.contains(*x)) {
      FacetMask tight = 0;
      bool inside = true;
      for (std::size_t i = 0; i < m && inside; ++i) {
        Rational s = p.slack(i, *x);
        if (s < 0) inside = false;
        if (s == 0) tight |= facet_bit(i);
      }
      if (inside) found.emplace(std::move(*x), tight);
    }
    // next n-subset in lexicographic order
    std::size_t k = n;
    while (k > 0 && pick[k - 1] == m - n + k - 1) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::vector<PolytopeVertex> out;
  out.reserve(found.size());
  for (auto& [pt, mask] : found) out.push_back({pt, mask});
  return out;
}

/// Vertices of the polytope. Throws NotAPolytopeError when the facets do
/// not bound a full-dimensional polytope.
inline std::vector<RationalVector> enumerate_vertices(const DelzantPolytope& p) {
  std::vector<IntVector> normals;
  for (const auto& f : p.facets()) normals.push_back(f.normal);
  if (!positively_spans(normals, p.dim())) {
    throw NotAPolytopeError("'" + p.label() + "' is unbounded (normals do not positively span)");
  }
  auto verts = vertex_incidence(p);
  std::vector<const RationalVector*> pts;
  for (const auto& v : verts) pts.push_back(&v.point);
  if (verts.empty()) throw NotAPolytopeError("'" + p.label() + "' is empty");
  if (affine_dimension(pts) != static_cast<long long>(p.dim())) {
    throw NotAPolytopeError("'" + p.label() + "' has empty interior");
  }
  std::vector<RationalVector> out;
  for (auto& v : verts) out.push_back(std::move(v.point));
  return out;
}

/// Boundedness, full dimension, irredundant facets, simpleness, primitive
/// normals and unimodularity of the normals at every vertex.
inline Diagnostics check_delzant(const DelzantPolytope& p) {
  Diagnostics d;
  const std::size_t n = p.dim();
  const std::string who = "'" + p.label() + "'";
  std::vector<IntVector> normals;
  for (std::size_t i = 0; i < p.facet_count(); ++i) {
    const Facet& f = p.facet(i);
    normals.push_back(f.normal);
    Integer g = 0;
    for (const auto& c : f.normal) g = gcd(g, c);
    if (g == 0) {
      d.add("zero-normal", who + ": facet " + std::to_string(i) + " has a zero normal").facets = {i};
    } else if (g != 1) {
      d.add("non-primitive-normal", who + ": facet " + std::to_string(i) + " normal is not primitive").facets = {i};
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (same_halfspace(f, p.facet(j))) {
        d.add("duplicate-facet", who + ": facets " + std::to_string(j) + " and " + std::to_string(i) +
                                     " define the same half-space")
            .facets = {j, i};
      }
    }
  }
  if (!d.ok()) return d;
  if (!positively_spans(normals, n)) {
    d.add("unbounded", who + ": normals do not positively span, the polyhedron is unbounded");
    return d;
  }
  const auto verts = vertex_incidence(p);
  if (verts.empty()) {
    d.add("empty", who + ": no vertices, the polytope is empty");
    return d;
  }
  std::vector<const RationalVector*> all;
  for (const auto& v : verts) all.push_back(&v.point);
  if (affine_dimension(all) != static_cast<long long>(n)) {
    d.add("not-full-dimensional", who + ": polytope has empty interior");
    return d;
  }
  for (std::size_t i = 0; i < p.facet_count(); ++i) {
    std::vector<const RationalVector*> on;
    for (const auto& v : verts) {
      if (v.tight & facet_bit(i)) on.push_back(&v.point);
    }
    if (affine_dimension(on) != static_cast<long long>(n) - 1) {
      d.add("redundant-facet", who + ": inequality " + std::to_string(i) + " does not define a facet").facets = {i};
    }
  }
  for (const auto& v : verts) {
    auto ids = facet_indices(v.tight);
    if (ids.size() != n) {
      d.add("non-simple-vertex", who + ": vertex " + format_point(v.point) + " lies on " +
                                     std::to_string(ids.size()) + " facets " + format_indices(ids))
          .facets = ids;
      continue;
    }
    IntMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) m(r, c) = p.facet(ids[r]).normal[c];
    }
    Integer det = abs_value(determinant(std::move(m)));
    if (det != 1) {
      d.add("non-unimodular-vertex", who + ": vertex " + format_point(v.point) + " on facets " +
                                         format_indices(ids) + " has |det| = " + det.str())
          .facets = ids;
    }
  }
  return d;
}

struct PolytopeFace {
  FacetMask active = 0;               ///< facets containing the face
  std::size_t dim = 0;                ///< n - |active|
  std::vector<std::size_t> vertices;  ///< indices into FaceLattice::vertices
};

/// All faces of a simple polytope, keyed by active-facet sets. Faces are
/// ordered by dimension, then by mask; the polytope itself has mask 0.
class FaceLattice {
 public:
  FaceLattice(std::size_t dim, std::vector<PolytopeVertex> vertices, std::vector<PolytopeFace> faces)
      : dim_(dim), vertices_(std::move(vertices)), faces_(std::move(faces)) {
    for (std::size_t i = 0; i < faces_.size(); ++i) index_.emplace(faces_[i].active, i);
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<PolytopeVertex>& vertices() const noexcept { return vertices_; }
  const std::vector<PolytopeFace>& faces() const noexcept { return faces_; }

  std::optional<std::size_t> find(FacetMask active) const {
    auto it = index_.find(active);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool has_face(FacetMask active) const { return index_.contains(active); }
  const PolytopeFace& face(FacetMask active) const { return faces_.at(index_.at(active)); }

  /// inner is a face of outer
  static bool contains(const PolytopeFace& outer, const PolytopeFace& inner) {
    return (outer.active & ~inner.active) == 0;
  }

  /// Number of faces of each dimension 0..n.
  std::vector<std::size_t> face_counts() const {
    std::vector<std::size_t> c(dim_ + 1, 0);
    for (const auto& f : faces_) ++c[f.dim];
    return c;
  }

  /// Vertex coordinates of a face, sorted.
  std::vector<RationalVector> points(const PolytopeFace& f) const {
    std::vector<RationalVector> out;
    for (auto v : f.vertices) out.push_back(vertices_[v].point);
    return out;
  }

 private:
  std::size_t dim_;
  std::vector<PolytopeVertex> vertices_;
  std::vector<PolytopeFace> faces_;
  std::map<FacetMask, std::size_t> index_;
};

inline FaceLattice face_lattice(const DelzantPolytope& p) {
  if (auto d = check_delzant(p); !d.ok()) {
    throw PreconditionError("face_lattice: " + d.violations.front().message);
  }
  const std::size_t n = p.dim();
  auto verts = vertex_incidence(p);
  std::map<FacetMask, std::vector<std::size_t>> faces;
  for (std::size_t v = 0; v < verts.size(); ++v) {
    const FacetMask tight = verts[v].tight;
    // enumerate all submasks of the n active facets
    for (FacetMask sub = tight;; sub = (sub - 1) & tight) {
      faces[sub].push_back(v);
      if (sub == 0) break;
    }
  }
  std::vector<PolytopeFace> list;
  for (auto& [mask, vs] : faces) {
    std::sort(vs.begin(), vs.end());
    list.push_back(PolytopeFace{mask, n - facet_count(mask), std::move(vs)});
  }
  std::stable_sort(list.begin(), list.end(), [](const PolytopeFace& a, const PolytopeFace& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.active < b.active;
  });
  return FaceLattice(n, std::move(verts), std::move(list));
}

/// f-vector of a facet viewed as an (n-1)-polytope.
inline FVector facet_f_vector(const FaceLattice& lattice, std::size_t facet_index) {
  const std::size_t n = lattice.dim();
  if (n < 2) throw DimensionError("facet f-vector needs a polytope of dimension >= 2");
  const FacetMask bit = facet_bit(facet_index);
  if (!lattice.has_face(bit)) throw std::out_of_range("facet index " + std::to_string(facet_index) + " out of range");
  FVector f(n - 1, 0);
  for (const auto& face : lattice.faces()) {
    if ((face.active & bit) && face.active != bit) f[n - 2 - face.dim] += 1;
  }
  return f;
}

/// h-vector of a facet (rank n-1).
inline HVector facet_h_vector(const DelzantPolytope& p, std::size_t facet_index) {
  if (facet_index >= p.facet_count()) {
    throw std::out_of_range("facet index " + std::to_string(facet_index) + " out of range");
  }
  return h_vector(facet_f_vector(face_lattice(p), facet_index), p.dim() - 1);
}

}  // namespace origami
