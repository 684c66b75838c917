#pragma once

#include <random>
#include <string>
#include <vector>

#include "origami/exact_linalg.hpp"
#include "origami/fixtures.hpp"
#include "origami/origami_template.hpp"

namespace origami::testing {

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  }
  return m;
}

/// Laplace expansion along the first row.
inline Integer cofactor_determinant(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t c = 0, cc = 0; c < n; ++c) {
        if (c != j) minor(r - 1, cc++) = m(r, c);
      }
    }
    const Integer term = m(0, j) * cofactor_determinant(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

/// All k-element subsets of {0..n-1}, lexicographic.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline const std::vector<std::string>& all_fixtures() {
  static const std::vector<std::string> names = fixture_names();
  return names;
}

/// Fixtures whose proper faces are all acyclic.
inline std::vector<std::string> acyclic_fixtures() {
  std::vector<std::string> out;
  for (const auto& n : all_fixtures()) {
    if (n != "t_prismring") out.push_back(n);
  }
  return out;
}

/// Random strip shape: the square [0,a]^2 with corners cut along x+y=c1
/// (facet 4) and x+y=2a-c2 (facet 5), optionally also -x+y=c3-a (facet 6).
struct StripShape {
  long long a = 3, c1 = 1, c2 = 1, c3 = 0;
  long long height = 0;  ///< > 0 makes it a prism of that height (n = 3)
};

inline StripShape random_shape(std::mt19937& rng, bool prism = false) {
  StripShape s;
  s.a = std::uniform_int_distribution<long long>(4, 7)(rng);
  std::uniform_int_distribution<long long> cut(1, (s.a - 1) / 2);
  s.c1 = cut(rng);
  s.c2 = cut(rng);
  s.c3 = rng() % 2 ? cut(rng) : 0;
  if (prism) s.height = std::uniform_int_distribution<long long>(1, 3)(rng);
  return s;
}

inline DelzantPolytope strip(const StripShape& s, std::string label) {
  const bool prism = s.height > 0;
  auto normal = [&](long long x, long long y, long long z = 0) {
    IntVector v{Integer(x), Integer(y)};
    if (prism) v.emplace_back(z);
    return v;
  };
  std::vector<Facet> fs{
      {normal(1, 0), Rational(0)},           {normal(0, 1), Rational(0)},
      {normal(-1, 0), Rational(s.a)},        {normal(0, -1), Rational(s.a)},
      {normal(1, 1), Rational(-s.c1)},       {normal(-1, -1), Rational(2 * s.a - s.c2)},
  };
  if (s.c3 > 0) fs.push_back({normal(-1, 1), Rational(s.a - s.c3)});
  if (prism) {
    fs.push_back({normal(0, 0, 1), Rational(0)});
    fs.push_back({normal(0, 0, -1), Rational(s.height)});
  }
  return DelzantPolytope(prism ? 3 : 2, std::move(fs), std::move(label));
}

/// k copies of one strip glued alternately along facets 4 and 5; closed into
/// a ring when `ring` (k must then be even so the graph stays bipartite).
inline OrigamiTemplate strip_template(const StripShape& s, std::size_t k, bool ring) {
  std::vector<DelzantPolytope> ps;
  for (std::size_t i = 0; i < k; ++i) ps.push_back(strip(s, "S" + std::to_string(i)));
  std::vector<TemplateEdge> es;
  const std::size_t count = ring ? k : k - 1;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t f = i % 2 == 0 ? 4 : 5;
    es.push_back(TemplateEdge{EdgeEnd{i, f}, EdgeEnd{(i + 1) % k, f}});
  }
  const std::size_t n = ps.front().dim();
  return OrigamiTemplate(n, std::move(ps), std::move(es));
}

/// A handful of random ring and chain templates, reproducible from `seed`.
inline std::vector<OrigamiTemplate> random_templates(unsigned seed, std::size_t count, bool prisms = false) {
  std::mt19937 rng(seed);
  std::vector<OrigamiTemplate> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto shape = random_shape(rng, prisms);
    const bool ring = !prisms && rng() % 2 == 0;
    const std::size_t k = ring ? 2 * std::uniform_int_distribution<std::size_t>(1, 3)(rng)
                               : std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    out.push_back(strip_template(shape, k, ring));
  }
  return out;
}

}  // namespace origami::testing
