#include <gtest/gtest.h>

#include <set>

#include "origami/delzant_polytope.hpp"
#include "support.hpp"

using namespace origami;

namespace {

DelzantPolytope make(std::size_t n, std::vector<std::pair<std::vector<long long>, Rational>> facets, std::string label = "p") {
  std::vector<Facet> fs;
  for (auto& [normal, offset] : facets) {
    IntVector v;
    for (auto c : normal) v.emplace_back(c);
    fs.push_back(Facet{v, offset});
  }
  return DelzantPolytope(n, std::move(fs), std::move(label));
}

DelzantPolytope square() { return make(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, 0}, 1}, {{0, -1}, 1}}, "square"); }

DelzantPolytope hexagon() {
  return make(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, 0}, 3}, {{0, -1}, 3}, {{1, 1}, -1}, {{-1, -1}, 5}}, "hexagon");
}

DelzantPolytope cube() {
  return make(3, {{{1, 0, 0}, 0}, {{0, 1, 0}, 0}, {{0, 0, 1}, 0}, {{-1, 0, 0}, 1}, {{0, -1, 0}, 1}, {{0, 0, -1}, 1}}, "cube");
}

RationalVector pt(std::initializer_list<long long> xs) {
  RationalVector v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

// Face counts from vertex sets alone: every facet subset cuts out a vertex
// set; distinct nonempty sets are faces, of dimension equal to their affine
// dimension. No simpleness is assumed.
std::vector<std::size_t> hull_face_counts(const DelzantPolytope& p) {
  const auto verts = enumerate_vertices(p);
  std::set<std::vector<std::size_t>> faces;
  const std::size_t m = p.facet_count();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
    std::vector<std::size_t> on;
    for (std::size_t v = 0; v < verts.size(); ++v) {
      bool all = true;
      for (std::size_t i = 0; i < m && all; ++i) {
        if ((s >> i) & 1) all = p.slack(i, verts[v]) == 0;
      }
      if (all) on.push_back(v);
    }
    if (!on.empty()) faces.insert(on);
  }
  std::vector<std::size_t> counts(p.dim() + 1, 0);
  for (const auto& f : faces) {
    std::vector<const RationalVector*> pts;
    for (auto v : f) pts.push_back(&verts[v]);
    counts[static_cast<std::size_t>(affine_dimension(pts))] += 1;
  }
  return counts;
}

}  // namespace

TEST(EnumerateVertices, UnitSquare) {
  EXPECT_EQ(enumerate_vertices(square()), (std::vector<RationalVector>{pt({0, 0}), pt({0, 1}), pt({1, 0}), pt({1, 1})}));
}

TEST(EnumerateVertices, Hexagon) {
  std::vector<RationalVector> expected{pt({0, 1}), pt({0, 3}), pt({1, 0}), pt({2, 3}), pt({3, 0}), pt({3, 2})};
  EXPECT_EQ(enumerate_vertices(hexagon()), expected);
}

TEST(EnumerateVertices, CubeAndRationalOffsets) {
  EXPECT_EQ(enumerate_vertices(cube()).size(), 8u);
  auto half = make(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, 0}, Rational(1, 2)}, {{0, -1}, Rational(3, 2)}});
  auto v = enumerate_vertices(half);
  EXPECT_EQ(v.back(), (RationalVector{Rational(1, 2), Rational(3, 2)}));
}

TEST(EnumerateVertices, NotAPolytope) {
  EXPECT_THROW(enumerate_vertices(make(2, {{{1, 0}, 0}, {{0, 1}, 0}})), NotAPolytopeError);
  // x >= 1 and x <= 0
  EXPECT_THROW(enumerate_vertices(make(2, {{{1, 0}, -1}, {{-1, 0}, 0}, {{0, 1}, 0}, {{0, -1}, 1}})), NotAPolytopeError);
  // a segment: x = 0 exactly
  EXPECT_THROW(enumerate_vertices(make(2, {{{1, 0}, 0}, {{-1, 0}, 0}, {{0, 1}, 0}, {{0, -1}, 1}})), NotAPolytopeError);
}

TEST(CheckDelzant, AcceptsSmoothPolytopes) {
  EXPECT_TRUE(check_delzant(square()).ok());
  EXPECT_TRUE(check_delzant(hexagon()).ok());
  EXPECT_TRUE(check_delzant(cube()).ok());
}

TEST(CheckDelzant, NonUnimodularCorner) {
  auto tri = make(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -2}, 2}}, "triangle");
  auto d = check_delzant(tri);
  ASSERT_TRUE(d.has("non-unimodular-vertex"));
  ASSERT_EQ(d.violations.size(), 1u);
  EXPECT_EQ(d.violations[0].facets, (std::vector<std::size_t>{0, 2}));
}

TEST(CheckDelzant, OtherViolations) {
  EXPECT_TRUE(check_delzant(make(2, {{{1, 0}, 0}, {{0, 1}, 0}})).has("unbounded"));
  // square with an extra facet that never touches it
  EXPECT_TRUE(check_delzant(make(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, 0}, 1}, {{0, -1}, 1}, {{-1, -1}, 5}})).has("redundant-facet"));
  // diamond: every vertex is non-unimodular
  EXPECT_FALSE(check_delzant(make(2, {{{1, 1}, 1}, {{-1, 1}, 1}, {{1, -1}, 1}, {{-1, -1}, 1}})).ok());
  // square pyramid apex lies on four facets
  auto pyramid = make(3, {{{0, 0, 1}, 0}, {{0, 1, -1}, 1}, {{0, -1, -1}, 1}, {{1, 0, -1}, 1}, {{-1, 0, -1}, 1}});
  EXPECT_TRUE(check_delzant(pyramid).has("non-simple-vertex"));
}

TEST(DelzantPolytope, NormalizesNonPrimitiveNormals) {
  auto p = make(2, {{{2, 0}, 0}, {{0, 1}, 0}, {{-1, 0}, 1}, {{0, -3}, 3}});
  EXPECT_EQ(p.facet(0).normal, (IntVector{1, 0}));
  EXPECT_EQ(p.facet(3).normal, (IntVector{0, -1}));
  EXPECT_EQ(p.facet(3).offset, 1);
  EXPECT_EQ(p.notes().size(), 2u);
  EXPECT_TRUE(check_delzant(p).ok());
}

TEST(DelzantPolytope, RejectsWrongNormalLength) {
  EXPECT_THROW(make(2, {{{1, 0, 0}, 0}}), DimensionError);
}

TEST(FaceLattice, Counts) {
  EXPECT_EQ(face_lattice(square()).face_counts(), (std::vector<std::size_t>{4, 4, 1}));
  EXPECT_EQ(face_lattice(hexagon()).face_counts(), (std::vector<std::size_t>{6, 6, 1}));
  EXPECT_EQ(face_lattice(cube()).face_counts(), (std::vector<std::size_t>{8, 12, 6, 1}));
}

TEST(FaceLattice, RequiresDelzant) {
  EXPECT_THROW(face_lattice(make(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -2}, 2}})), PreconditionError);
}

TEST(FaceLattice, MatchesVertexHullCount) {
  for (const auto& p : {square(), hexagon(), cube()}) EXPECT_EQ(face_lattice(p).face_counts(), hull_face_counts(p));
  for (const auto& name : origami::testing::all_fixtures()) {
    const auto t = load_fixture(name);
    for (const auto& p : t.polytopes()) EXPECT_EQ(face_lattice(p).face_counts(), hull_face_counts(p)) << name;
  }
}

TEST(FaceLattice, EulerRelationAndSimpleness) {
  for (const auto& name : origami::testing::all_fixtures()) {
    const auto t = load_fixture(name);
    for (const auto& p : t.polytopes()) {
      const auto lat = face_lattice(p);
      long long chi = 0;
      const auto counts = lat.face_counts();
      for (std::size_t d = 0; d < counts.size(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(counts[d]);
      EXPECT_EQ(chi, 1) << name;
      for (const auto& v : lat.vertices()) EXPECT_EQ(facet_count(v.tight), p.dim()) << name;
      for (const auto& f : lat.faces()) EXPECT_EQ(f.dim + facet_count(f.active), p.dim());
    }
  }
}

TEST(FacetHVector, Examples) {
  EXPECT_EQ(facet_h_vector(square(), 0), (HVector{1, 1}));
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(facet_h_vector(cube(), i), (HVector{1, 2, 1}));
  EXPECT_EQ(facet_h_vector(hexagon(), 5), (HVector{1, 1}));
  EXPECT_THROW(facet_h_vector(square(), 4), std::out_of_range);
}

TEST(FacetHVector, SymmetricOnEveryFixtureFacet) {
  for (const auto& name : origami::testing::all_fixtures()) {
    const auto t = load_fixture(name);
    for (const auto& p : t.polytopes()) {
      for (std::size_t i = 0; i < p.facet_count(); ++i) {
        auto h = facet_h_vector(p, i);
        for (std::size_t k = 0; k < h.size(); ++k) EXPECT_EQ(h[k], h[h.size() - 1 - k]) << name;
        EXPECT_EQ(h[0], 1);
      }
    }
  }
}

TEST(FaceVectors, HVectorExpansion) {
  EXPECT_EQ(h_vector({4, 4}, 2), (HVector{1, 2, 1}));
  EXPECT_EQ(h_vector({8, 8}, 2), (HVector{1, 6, 1}));
  EXPECT_EQ(h_vector({6, 12, 8}, 3), (HVector{1, 3, 3, 1}));
  EXPECT_THROW(h_vector({1, 2, 3}, 2), DimensionError);
}
