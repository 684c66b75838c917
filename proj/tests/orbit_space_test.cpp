#include <gtest/gtest.h>

#include <set>

#include "origami/orbit_space.hpp"
#include "support.hpp"

using namespace origami;

namespace {

std::vector<long long> fv(const FacePoset& fp) {
  std::vector<long long> out;
  for (const auto& x : f_vector(fp)) out.push_back(static_cast<long long>(x));
  return out;
}

// faces of a fold facet counted straight from the polytope lattice:
// out[i] = number of faces of dimension n-2-i lying in the facet, out[-1] = 1
std::vector<long long> fold_faces(const OrigamiTemplate& t, const EdgeEnd& end) {
  const std::size_t n = t.n();
  const auto lattice = face_lattice(t.polytope(end.vertex));
  std::vector<long long> by_dim(n, 0);
  for (const auto& face : lattice.faces()) {
    if ((face.active & facet_bit(end.facet)) && face.dim + 1 < n) by_dim[face.dim] += 1;
  }
  std::vector<long long> out(n, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) out[i] = by_dim[n - 2 - i];
  return out;
}

}  // namespace

TEST(FaceClasses, FoldedSquares) {
  const auto fp = build_face_classes(load_fixture("t_fold2"));
  EXPECT_EQ(fv(fp), (std::vector<long long>{4, 4}));
  EXPECT_EQ(fp.classes_of_dim(2).size(), 1u);
  std::size_t merged = 0;
  for (auto id : fp.classes_of_dim(1)) {
    const auto& c = fp.face_class(id);
    if (c.constituents.size() == 2) {
      ++merged;
      EXPECT_EQ(c.gluing.size(), 1u);
    } else {
      EXPECT_EQ(c.constituents.size(), 1u);
    }
  }
  EXPECT_EQ(merged, 2u);
  const auto& top = fp.face_class(0);
  EXPECT_EQ(top.dim, 2u);
  EXPECT_EQ(top.constituents.size(), 2u);
  EXPECT_FALSE(fp.class_of(0, facet_bit(2)).has_value());
}

TEST(FaceClasses, Examples) {
  EXPECT_EQ(fv(build_face_classes(load_fixture("t_square"))), (std::vector<long long>{4, 4}));
  EXPECT_EQ(fv(build_face_classes(load_fixture("t_ring4"))), (std::vector<long long>{8, 8}));
  EXPECT_EQ(fv(build_face_classes(load_fixture("t_strips4"))), (std::vector<long long>{8, 8}));
  EXPECT_EQ(fv(build_face_classes(load_fixture("t_cube2"))), (std::vector<long long>{6, 12, 8}));
  EXPECT_EQ(fv(build_face_classes(load_fixture("t_chain4"))), (std::vector<long long>{12, 12}));

  const auto ring = build_face_classes(load_fixture("t_ring4"));
  for (auto id : ring.classes_of_dim(1)) EXPECT_EQ(ring.face_class(id).constituents.size(), 2u);
}

TEST(FaceClasses, IdsAreOrderedByDimension) {
  for (const auto& name : origami::testing::all_fixtures()) {
    const auto fp = build_face_classes(load_fixture(name));
    for (std::size_t i = 0; i < fp.classes().size(); ++i) {
      EXPECT_EQ(fp.face_class(i).id, i);
      if (i > 0) EXPECT_GE(fp.face_class(i - 1).dim, fp.face_class(i).dim) << name;
    }
  }
}

TEST(FaceClasses, RejectsNonCoorientable) {
  const auto sq = load_fixture("t_square").polytope(0);
  OrigamiTemplate loop(2, {sq}, {TemplateEdge{EdgeEnd{0, 0}, EdgeEnd{0, 2}}});
  EXPECT_THROW(build_face_classes(loop), PreconditionError);
}

TEST(Acyclicity, Examples) {
  EXPECT_EQ(acyclicity_report(build_face_classes(load_fixture("t_ring4"))).r_min, 1u);
  EXPECT_EQ(acyclicity_report(build_face_classes(load_fixture("t_cube2"))).r_min, 1u);
  const auto fp = build_face_classes(load_fixture("t_prismring"));
  const auto r = acyclicity_report(fp);
  EXPECT_EQ(r.r_min, 2u);
  ASSERT_EQ(r.non_acyclic.size(), 2u);
  for (auto [id, rank] : r.non_acyclic) {
    EXPECT_EQ(fp.face_class(id).dim, 2u);
    EXPECT_EQ(rank, 1u);
  }
  EXPECT_FALSE(r.all_proper_acyclic());
  // the whole space has the cycle of the graph
  EXPECT_EQ(r.cycle_ranks[0], 1u);
}

TEST(BoundaryComponents, Examples) {
  auto square = boundary_components(build_face_classes(load_fixture("t_square")));
  ASSERT_EQ(square.size(), 1u);
  EXPECT_EQ(square[0].facets.size(), 4u);
  EXPECT_EQ(square[0].corners.size(), 4u);

  auto fold = boundary_components(build_face_classes(load_fixture("t_fold2")));
  ASSERT_EQ(fold.size(), 1u);
  EXPECT_EQ(fold[0].facets.size(), 4u);

  auto ring = boundary_components(build_face_classes(load_fixture("t_ring4")));
  ASSERT_EQ(ring.size(), 2u);
  for (const auto& c : ring) {
    EXPECT_EQ(c.facets.size(), 4u);
    EXPECT_EQ(c.corners.size(), 4u);
  }
  EXPECT_EQ(boundary_components(build_face_classes(load_fixture("t_cube2"))).size(), 1u);
}

TEST(BoundaryComponents, CyclesAreConsistent) {
  for (const auto& name : {"t_square", "t_fold2", "t_ring4", "t_strips4", "t_chain4"}) {
    const auto fp = build_face_classes(load_fixture(name));
    std::set<std::size_t> seen;
    for (const auto& c : boundary_components(fp)) {
      const std::size_t k = c.facets.size();
      ASSERT_EQ(c.corners.size(), k);
      EXPECT_EQ(c.facets.front(), *std::min_element(c.facets.begin(), c.facets.end())) << name;
      if (k > 2) EXPECT_LT(c.facets[1], c.facets.back()) << name;
      for (std::size_t i = 0; i < k; ++i) {
        EXPECT_TRUE(fp.less(c.corners[i], c.facets[i])) << name;
        EXPECT_TRUE(fp.less(c.corners[i], c.facets[(i + 1) % k])) << name;
        EXPECT_TRUE(seen.insert(c.facets[i]).second) << name;
      }
    }
    EXPECT_EQ(seen.size(), fp.classes_of_dim(1).size()) << name;
  }
}

TEST(BoundaryComponents, PlanarCountIsCycleRankPlusOne) {
  for (const auto& name : origami::testing::acyclic_fixtures()) {
    const auto t = load_fixture(name);
    if (t.n() != 2) continue;
    EXPECT_EQ(boundary_components(build_face_classes(t)).size(), graph_cycle_rank(t) + 1) << name;
  }
}

TEST(OrderComplex, Examples) {
  auto sq = order_complex(build_face_classes(load_fixture("t_square")));
  EXPECT_EQ(sq.count(0), 8u);
  EXPECT_EQ(sq.count(1), 8u);
  EXPECT_EQ(sq.dimension(), 1u);

  auto ring = order_complex(build_face_classes(load_fixture("t_ring4")));
  EXPECT_EQ(ring.count(0), 16u);
  EXPECT_EQ(ring.count(1), 16u);

  auto cube = order_complex(build_face_classes(load_fixture("t_cube2")));
  EXPECT_EQ(cube.count(0), 26u);
  EXPECT_EQ(cube.dimension(), 2u);
  EXPECT_EQ(cube.count(1), 72u);
  EXPECT_EQ(cube.count(2), 48u);
}

TEST(OrderComplex, SimplicesAreChains) {
  for (const auto& name : origami::testing::all_fixtures()) {
    const auto fp = build_face_classes(load_fixture(name));
    const auto oc = order_complex(fp);
    EXPECT_LE(oc.dimension() + 1, fp.n()) << name;
    for (const auto& level : oc.simplices) {
      EXPECT_TRUE(std::is_sorted(level.begin(), level.end())) << name;
      for (const auto& s : level) {
        for (std::size_t i = 0; i < s.size(); ++i) {
          for (std::size_t j = i + 1; j < s.size(); ++j) {
            EXPECT_TRUE(fp.less(s[i], s[j]) || fp.less(s[j], s[i])) << name;
          }
        }
      }
    }
  }
}

// Every codim-k class lies in exactly k facet classes.
TEST(FacePosetProperty, LocalStandardness) {
  for (const auto& name : origami::testing::all_fixtures()) {
    const auto fp = build_face_classes(load_fixture(name));
    const std::size_t n = fp.n();
    const auto facets = fp.classes_of_dim(n - 1);
    EXPECT_EQ(fp.classes_of_dim(n).size(), 1u) << name;
    for (auto id : fp.proper_classes()) {
      std::size_t count = 0;
      for (auto f : facets) count += fp.less_equal(id, f) ? 1 : 0;
      EXPECT_EQ(count, n - fp.face_class(id).dim) << name << " class " << id;
    }
  }
}

TEST(FacePosetProperty, ConstituentsShareDimension) {
  for (const auto& name : origami::testing::all_fixtures()) {
    const auto fp = build_face_classes(load_fixture(name));
    for (const auto& c : fp.classes()) {
      for (const auto& k : c.constituents) {
        const auto& face = fp.lattices()[k.vertex].face(k.face);
        EXPECT_EQ(face.dim, c.dim) << name;
        EXPECT_EQ(fp.class_of(k.vertex, k.face), std::optional<std::size_t>(c.id)) << name;
      }
      EXPECT_TRUE(std::is_sorted(c.constituents.begin(), c.constituents.end()));
      EXPECT_GE(c.gluing.size() + 1, c.constituents.size());
    }
  }
}

namespace {

std::vector<OrigamiTemplate> acyclic_samples() {
  std::vector<OrigamiTemplate> out;
  for (const auto& name : origami::testing::acyclic_fixtures()) out.push_back(load_fixture(name));
  for (auto& t : origami::testing::random_templates(13, 10)) out.push_back(std::move(t));
  return out;
}

}  // namespace

// f_i(M') = f_i(M) + 2 f_{i-1}(F) + f_i(F), with f_{-1}(F) = 1
TEST(CutProperty, FVectorIdentity) {
  for (const auto& t : acyclic_samples()) {
    const std::string name = t.name().empty() ? serialize_template(t) : t.name();
    const auto before = fv(build_face_classes(t));
    for (auto e : non_bridge_edges(t)) {
      const auto after = fv(build_face_classes(cut(t, e).cut_template));
      const auto ff = fold_faces(t, t.edge(e).first);
      for (std::size_t i = 0; i < t.n(); ++i) {
        const long long prev = i == 0 ? 1 : ff[i - 1];
        EXPECT_EQ(after[i], before[i] + 2 * prev + ff[i]) << name << " edge " << e << " i=" << i;
      }
    }
  }
}

TEST(CutProperty, NoFacetMeetsBothCopies) {
  for (const auto& t : acyclic_samples()) {
    const std::string name = t.name().empty() ? serialize_template(t) : t.name();
    for (auto e : non_bridge_edges(t)) {
      const auto c = cut(t, e);
      const auto fp = build_face_classes(c.cut_template);
      const auto& [a, b] = t.edge(e);
      auto plus = fp.class_of(a.vertex, facet_bit(a.facet));
      auto minus = fp.class_of(b.vertex, facet_bit(b.facet));
      ASSERT_TRUE(plus && minus) << name;
      EXPECT_NE(*plus, *minus);
      for (auto f : fp.classes_of_dim(t.n() - 1)) {
        if (f == *plus || f == *minus) continue;
        EXPECT_FALSE(fp.meets(f, *plus) && fp.meets(f, *minus)) << name << " edge " << e << " facet class " << f;
      }
    }
  }
}

// With a cyclic top face the cut leaves that face in one piece: it still
// touches both copies of F and the facet count grows by 4 instead of 6.
TEST(CutProperty, CyclicFacetStaysWhole) {
  const auto t = load_fixture("t_prismring");
  const auto before = fv(build_face_classes(t));
  const auto c = cut(t, 0);
  const auto fp = build_face_classes(c.cut_template);
  EXPECT_EQ(fv(fp)[0], before[0] + 4);
  const auto& [a, b] = t.edge(0);
  const auto plus = *fp.class_of(a.vertex, facet_bit(a.facet));
  const auto minus = *fp.class_of(b.vertex, facet_bit(b.facet));
  std::size_t touching_both = 0;
  for (auto f : fp.classes_of_dim(2)) {
    if (f != plus && f != minus && fp.meets(f, plus) && fp.meets(f, minus)) ++touching_both;
  }
  EXPECT_EQ(touching_both, 2u);
  EXPECT_EQ(acyclicity_report(fp).r_min, 1u);
}
