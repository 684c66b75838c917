#pragma once

// The orbit space M/T of a toric origami manifold, glued from the polytopes
// of its template: face classes, the face poset, acyclicity data, boundary
// components and the order complex of the proper part.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "origami/delzant_polytope.hpp"
#include "origami/errors.hpp"
#include "origami/face_vectors.hpp"
#include "origami/origami_template.hpp"

namespace origami {

/// A face of one template polytope that is not contained in a fold facet.
struct Constituent {
  std::size_t vertex = 0;  ///< template graph vertex
  FacetMask face = 0;      ///< active facets of the face in that polytope

  friend auto operator<=>(const Constituent&, const Constituent&) = default;
};

/// One identification of two constituents across a fold.
struct GluingEdge {
  std::size_t from = 0;  ///< index into FaceClass::constituents
  std::size_t to = 0;
  std::size_t template_edge = 0;
};

struct FaceClass {
  std::size_t id = 0;
  std::size_t dim = 0;
  std::vector<Constituent> constituents;  ///< sorted
  std::vector<GluingEdge> gluing;

  /// Cycle rank of the (connected) gluing multigraph. The class is
  /// homotopy equivalent to that graph.
  std::size_t cycle_rank() const { return gluing.size() + 1 - constituents.size(); }
  bool acyclic() const { return cycle_rank() == 0; }
};

class FacePoset {
 public:
  std::size_t n() const noexcept { return n_; }
  const std::vector<FaceClass>& classes() const noexcept { return classes_; }
  const FaceClass& face_class(std::size_t id) const { return classes_.at(id); }
  const std::vector<FaceLattice>& lattices() const noexcept { return lattices_; }

  /// Classes strictly above / below `id`, ascending ids.
  const std::vector<std::size_t>& above(std::size_t id) const { return above_.at(id); }
  const std::vector<std::size_t>& below(std::size_t id) const { return below_.at(id); }

  bool less(std::size_t x, std::size_t y) const {
    const auto& a = above_.at(x);
    return std::binary_search(a.begin(), a.end(), y);
  }
  bool less_equal(std::size_t x, std::size_t y) const { return x == y || less(x, y); }

  /// Class containing a constituent face, if that face survives gluing.
  std::optional<std::size_t> class_of(std::size_t vertex, FacetMask face) const {
    auto it = index_.find(Constituent{vertex, face});
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Some class lies below (or equals) both.
  bool meets(std::size_t x, std::size_t y) const {
    auto down = [&](std::size_t z) {
      auto d = below_.at(z);
      d.insert(std::lower_bound(d.begin(), d.end(), z), z);
      return d;
    };
    auto a = down(x);
    auto b = down(y);
    std::vector<std::size_t> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
    return !both.empty();
  }

  std::vector<std::size_t> classes_of_dim(std::size_t d) const {
    std::vector<std::size_t> out;
    for (const auto& c : classes_) {
      if (c.dim == d) out.push_back(c.id);
    }
    return out;
  }

  std::vector<std::size_t> proper_classes() const {
    std::vector<std::size_t> out;
    for (const auto& c : classes_) {
      if (c.dim < n_) out.push_back(c.id);
    }
    return out;
  }

 private:
  friend FacePoset build_face_classes(const OrigamiTemplate& t);

  std::size_t n_ = 0;
  std::vector<FaceClass> classes_;
  std::vector<FaceLattice> lattices_;
  std::vector<std::vector<std::size_t>> above_;
  std::vector<std::vector<std::size_t>> below_;
  std::map<Constituent, std::size_t> index_;
};

/// Glues the polytope faces of a valid, connected, coorientable template.
/// Faces inside fold facets are absorbed; across each fold the codim-j face
/// G1 of P1 with G1 ∩ F = K is identified with the matching G2 of P2, for
/// every face K of F. Class ids are ordered by dimension (top class first),
/// then by smallest constituent.
inline FacePoset build_face_classes(const OrigamiTemplate& t) {
  if (auto d = validate_template(t); !d.ok()) {
    throw PreconditionError("build_face_classes: template is invalid: " + d.violations.front().message);
  }
  if (!check_coorientable(t)) throw PreconditionError("build_face_classes: template has a loop edge");
  const std::size_t n = t.n();

  FacePoset fp;
  fp.n_ = n;
  for (const auto& p : t.polytopes()) fp.lattices_.push_back(face_lattice(p));

  std::vector<FacetMask> fold_mask(t.vertex_count(), 0);
  for (const auto& e : t.edges()) {
    fold_mask[e.first.vertex] |= facet_bit(e.first.facet);
    fold_mask[e.second.vertex] |= facet_bit(e.second.facet);
  }

  std::vector<Constituent> cons;
  std::map<Constituent, std::size_t> cid;
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    for (const auto& f : fp.lattices_[v].faces()) {
      if ((f.active & fold_mask[v]) != 0) continue;
      cid.emplace(Constituent{v, f.active}, cons.size());
      cons.push_back(Constituent{v, f.active});
    }
  }

  detail::UnionFind uf(cons.size());
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> events;  // (c1, c2, edge)
  for (std::size_t e = 0; e < t.edge_count(); ++e) {
    const auto& [a, b] = t.edge(e);
    const auto& l1 = fp.lattices_[a.vertex];
    const auto& l2 = fp.lattices_[b.vertex];
    auto nbr = fold_neighbour_map(t.polytope(a.vertex), l1, a.facet, t.polytope(b.vertex), l2, b.facet, nullptr, e);
    for (const auto& k : l1.faces()) {
      if (!(k.active & facet_bit(a.facet))) continue;
      const FacetMask g1 = k.active & ~facet_bit(a.facet);
      FacetMask g2 = 0;
      for (auto g : facet_indices(g1)) {
        auto it = nbr.find(g);
        if (it == nbr.end()) {
          throw StructuralError("edge " + std::to_string(e) + ": facet " + std::to_string(g) +
                                " meets the fold but has no partner across it");
        }
        g2 |= facet_bit(it->second);
      }
      const FacetMask k2 = g2 | facet_bit(b.facet);
      if (!l2.has_face(k2) || l2.points(l2.face(k2)) != l1.points(k)) {
        throw StructuralError("edge " + std::to_string(e) + ": fold face has no matching partner");
      }
      auto c1 = cid.find(Constituent{a.vertex, g1});
      auto c2 = cid.find(Constituent{b.vertex, g2});
      if (c1 == cid.end() || c2 == cid.end()) {
        throw StructuralError("edge " + std::to_string(e) + ": glued face lies in another fold facet");
      }
      uf.unite(c1->second, c2->second);
      events.emplace_back(c1->second, c2->second, e);
    }
  }

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t c = 0; c < cons.size(); ++c) groups[uf.find(c)].push_back(c);

  std::vector<FaceClass> classes;
  std::map<std::size_t, std::size_t> root_to_class;
  for (auto& [root, members] : groups) {
    FaceClass fc;
    for (auto c : members) fc.constituents.push_back(cons[c]);
    std::sort(fc.constituents.begin(), fc.constituents.end());
    fc.dim = n - facet_count(fc.constituents.front().face);
    for (const auto& c : fc.constituents) {
      if (n - facet_count(c.face) != fc.dim) throw StructuralError("face class mixes dimensions");
    }
    root_to_class.emplace(root, classes.size());
    classes.push_back(std::move(fc));
  }
  for (const auto& [c1, c2, e] : events) {
    auto& fc = classes[root_to_class.at(uf.find(c1))];
    auto local = [&](std::size_t c) {
      auto it = std::lower_bound(fc.constituents.begin(), fc.constituents.end(), cons[c]);
      return static_cast<std::size_t>(it - fc.constituents.begin());
    };
    fc.gluing.push_back(GluingEdge{local(c1), local(c2), e});
  }
  std::sort(classes.begin(), classes.end(), [](const FaceClass& a, const FaceClass& b) {
    return a.dim != b.dim ? a.dim > b.dim : a.constituents.front() < b.constituents.front();
  });
  for (std::size_t i = 0; i < classes.size(); ++i) {
    classes[i].id = i;
    for (const auto& c : classes[i].constituents) fp.index_.emplace(c, i);
  }
  fp.classes_ = std::move(classes);

  if (fp.classes_of_dim(n).size() != 1) throw StructuralError("orbit space must have exactly one top-dimensional class");

  // X < Y iff every constituent of X lies in some constituent of Y.
  const std::size_t count = fp.classes_.size();
  fp.above_.assign(count, {});
  fp.below_.assign(count, {});
  for (const auto& fc : fp.classes_) {
    std::optional<std::set<std::size_t>> common;
    for (const auto& c : fc.constituents) {
      std::set<std::size_t> up;
      for (FacetMask sub = c.face; sub != 0;) {
        sub = (sub - 1) & c.face;  // proper submasks, ending with 0
        up.insert(fp.index_.at(Constituent{c.vertex, sub}));
        if (sub == 0) break;
      }
      if (!common) {
        common = std::move(up);
      } else {
        std::set<std::size_t> keep;
        std::set_intersection(common->begin(), common->end(), up.begin(), up.end(), std::inserter(keep, keep.end()));
        common = std::move(keep);
      }
    }
    if (common) fp.above_[fc.id].assign(common->begin(), common->end());
  }
  for (std::size_t x = 0; x < count; ++x) {
    for (auto y : fp.above_[x]) fp.below_[y].push_back(x);
  }
  for (auto& b : fp.below_) std::sort(b.begin(), b.end());

  // Local standardness: a codim-k class lies in exactly k facet classes.
  for (const auto& fc : fp.classes_) {
    if (fc.dim == n) continue;
    const std::size_t k = n - fc.dim;
    std::size_t facets = fc.dim + 1 == n ? 1 : 0;
    for (auto y : fp.above_[fc.id]) facets += fp.classes_[y].dim == n - 1 ? 1 : 0;
    if (facets != k) {
      throw StructuralError("face class " + std::to_string(fc.id) + " of codimension " + std::to_string(k) +
                            " lies in " + std::to_string(facets) + " facet classes");
    }
  }
  return fp;
}

/// f_i = number of classes of dimension n-1-i.
inline FVector f_vector(const FacePoset& fp) {
  const std::size_t n = fp.n();
  FVector f(n, 0);
  for (const auto& c : fp.classes()) {
    if (c.dim < n) f[n - 1 - c.dim] += 1;
  }
  return f;
}

struct AcyclicityReport {
  std::vector<std::size_t> cycle_ranks;                          ///< per class id
  std::vector<std::pair<std::size_t, std::size_t>> non_acyclic;  ///< proper (class id, cycle rank)
  std::size_t r_min = 1;  ///< every proper class of codimension >= r_min is acyclic

  bool all_proper_acyclic() const noexcept { return r_min == 1; }
};

inline AcyclicityReport acyclicity_report(const FacePoset& fp) {
  AcyclicityReport r;
  for (const auto& c : fp.classes()) {
    r.cycle_ranks.push_back(c.cycle_rank());
    if (c.dim < fp.n() && !c.acyclic()) {
      r.non_acyclic.emplace_back(c.id, c.cycle_rank());
      r.r_min = std::max(r.r_min, fp.n() - c.dim + 1);
    }
  }
  return r;
}

/// A connected component of the boundary. For n = 2 `facets` is the cyclic
/// order of edge classes and corners[i] is the vertex class between
/// facets[i] and facets[i+1]; otherwise `facets` is sorted and `corners`
/// holds the codimension-2 classes of the component.
struct BoundaryComponent {
  std::vector<std::size_t> facets;
  std::vector<std::size_t> corners;
};

namespace detail {

inline std::vector<std::size_t> facets_above(const FacePoset& fp, std::size_t id) {
  std::vector<std::size_t> out;
  for (auto y : fp.above(id)) {
    if (fp.face_class(y).dim + 1 == fp.n()) out.push_back(y);
  }
  return out;
}

inline std::vector<std::size_t> ridges_below(const FacePoset& fp, std::size_t facet) {
  std::vector<std::size_t> out;
  for (auto x : fp.below(facet)) {
    if (fp.face_class(x).dim + 2 == fp.n()) out.push_back(x);
  }
  return out;
}

inline BoundaryComponent walk_polygon(const FacePoset& fp, std::size_t start, const std::vector<std::size_t>& members) {
  auto other_corner = [&](std::size_t facet, std::size_t corner) {
    auto cs = ridges_below(fp, facet);
    if (cs.size() != 2) {
      throw StructuralError("boundary edge class " + std::to_string(facet) + " has " + std::to_string(cs.size()) +
                            " end points");
    }
    return cs[0] == corner ? cs[1] : cs[0];
  };
  auto other_facet = [&](std::size_t corner, std::size_t facet) {
    auto fs = facets_above(fp, corner);
    return fs[0] == facet ? fs[1] : fs[0];
  };
  auto cs = ridges_below(fp, start);
  if (cs.size() != 2) {
    throw StructuralError("boundary edge class " + std::to_string(start) + " has " + std::to_string(cs.size()) +
                          " end points");
  }
  // first step towards the lowest-id neighbour
  std::size_t n0 = other_facet(cs[0], start);
  std::size_t n1 = other_facet(cs[1], start);
  std::size_t corner = (n1 < n0) ? cs[1] : cs[0];

  BoundaryComponent bc;
  std::size_t facet = start;
  for (;;) {
    bc.facets.push_back(facet);
    bc.corners.push_back(corner);
    facet = other_facet(corner, facet);
    corner = other_corner(facet, corner);
    if (facet == start) break;
    if (bc.facets.size() > members.size()) throw StructuralError("boundary component is not a simple cycle");
  }
  if (bc.facets.size() != members.size()) throw StructuralError("boundary component is not a simple cycle");
  return bc;
}

}  // namespace detail

/// Components of the adjacency graph on facet classes (adjacent iff they
/// share a codimension-2 class), ordered by their lowest facet id.
inline std::vector<BoundaryComponent> boundary_components(const FacePoset& fp) {
  const std::size_t n = fp.n();
  if (n < 2) throw CapabilityError("boundary_components needs n >= 2");
  auto facets = fp.classes_of_dim(n - 1);
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < facets.size(); ++i) pos.emplace(facets[i], i);
  detail::UnionFind uf(facets.size());
  for (auto r : fp.classes_of_dim(n - 2)) {
    auto fs = detail::facets_above(fp, r);
    for (std::size_t i = 1; i < fs.size(); ++i) uf.unite(pos.at(fs[0]), pos.at(fs[i]));
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < facets.size(); ++i) groups[uf.find(i)].push_back(facets[i]);

  std::vector<BoundaryComponent> out;
  for (auto& [root, members] : groups) {
    if (n == 2) {
      out.push_back(detail::walk_polygon(fp, members.front(), members));
      continue;
    }
    BoundaryComponent bc;
    bc.facets = members;
    std::set<std::size_t> ridges;
    for (auto f : members) {
      for (auto r : detail::ridges_below(fp, f)) ridges.insert(r);
    }
    bc.corners.assign(ridges.begin(), ridges.end());
    out.push_back(std::move(bc));
  }
  std::sort(out.begin(), out.end(), [](const BoundaryComponent& a, const BoundaryComponent& b) {
    return *std::min_element(a.facets.begin(), a.facets.end()) < *std::min_element(b.facets.begin(), b.facets.end());
  });
  return out;
}

/// Chains of proper face classes; simplices are listed per dimension, each
/// as ascending class ids, lexicographically sorted.
struct OrderComplex {
  std::vector<std::size_t> vertices;
  std::vector<std::vector<std::vector<std::size_t>>> simplices;  ///< simplices[k] = k-simplices

  std::size_t dimension() const { return simplices.empty() ? 0 : simplices.size() - 1; }
  std::size_t count(std::size_t k) const { return k < simplices.size() ? simplices[k].size() : 0; }
};

inline OrderComplex order_complex(const FacePoset& fp) {
  OrderComplex oc;
  oc.vertices = fp.proper_classes();
  std::vector<std::vector<std::size_t>> chains;
  std::vector<std::size_t> chain;
  auto extend = [&](auto&& self, std::size_t x) -> void {
    chain.push_back(x);
    chains.push_back(chain);
    for (auto y : fp.above(x)) {
      if (fp.face_class(y).dim < fp.n()) self(self, y);
    }
    chain.pop_back();
  };
  for (auto v : oc.vertices) extend(extend, v);
  for (auto& c : chains) {
    std::sort(c.begin(), c.end());
    const std::size_t k = c.size() - 1;
    if (k >= fp.n()) throw StructuralError("order complex exceeds dimension n-1");
    if (oc.simplices.size() <= k) oc.simplices.resize(k + 1);
    oc.simplices[k].push_back(std::move(c));
  }
  for (auto& level : oc.simplices) std::sort(level.begin(), level.end());
  return oc;
}

}  // namespace origami
