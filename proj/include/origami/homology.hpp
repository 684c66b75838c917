#pragma once

// Integer simplicial homology of an order complex via Smith normal form.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "origami/errors.hpp"
#include "origami/exact_linalg.hpp"
#include "origami/orbit_space.hpp"

namespace origami {

/// boundaries[k] maps k-chains to (k-1)-chains, so boundaries[0] is empty
/// (0 x dims[0]) unless the complex is augmented, in which case it is the
/// 1 x dims[0] row of ones.
struct ChainComplex {
  std::vector<std::size_t> dims;
  std::vector<IntMatrix> boundaries;
  bool reduced = false;
};

namespace detail {

inline void check_square_zero(const ChainComplex& cc) {
  for (std::size_t k = 1; k < cc.boundaries.size(); ++k) {
    const auto& lower = cc.boundaries[k - 1];
    const auto& upper = cc.boundaries[k];
    if (lower.rows() == 0 || lower.cols() == 0 || upper.cols() == 0) continue;
    if (!multiply(lower, upper).is_zero()) {
      throw InconsistencyError("boundary of boundary is nonzero in degree " + std::to_string(k));
    }
  }
}

}  // namespace detail

/// Builds boundary matrices from simplices given as sorted vertex lists.
/// Face i of a simplex (vertex i deleted) carries sign (-1)^i.
inline ChainComplex chain_complex(const std::vector<std::vector<std::vector<std::size_t>>>& simplices, bool reduced) {
  ChainComplex cc;
  cc.reduced = reduced;
  for (const auto& level : simplices) cc.dims.push_back(level.size());
  const std::size_t top = cc.dims.size();

  std::vector<std::map<std::vector<std::size_t>, std::size_t>> index(top);
  for (std::size_t k = 0; k < top; ++k) {
    for (std::size_t i = 0; i < simplices[k].size(); ++i) index[k].emplace(simplices[k][i], i);
  }

  for (std::size_t k = 0; k < top; ++k) {
    if (k == 0) {
      IntMatrix d(reduced ? 1 : 0, cc.dims[0]);
      if (reduced) {
        for (std::size_t j = 0; j < cc.dims[0]; ++j) d(0, j) = 1;
      }
      cc.boundaries.push_back(std::move(d));
      continue;
    }
    IntMatrix d(cc.dims[k - 1], cc.dims[k]);
    for (std::size_t j = 0; j < simplices[k].size(); ++j) {
      const auto& s = simplices[k][j];
      for (std::size_t i = 0; i < s.size(); ++i) {
        std::vector<std::size_t> face;
        face.reserve(s.size() - 1);
        for (std::size_t m = 0; m < s.size(); ++m) {
          if (m != i) face.push_back(s[m]);
        }
        auto it = index[k - 1].find(face);
        if (it == index[k - 1].end()) throw StructuralError("simplicial complex is missing a face");
        d(it->second, j) = (i % 2 == 0) ? 1 : -1;
      }
    }
    cc.boundaries.push_back(std::move(d));
  }
  detail::check_square_zero(cc);
  return cc;
}

/// Chain complex of the order complex. With `reverse_order` the vertices of
/// each simplex are oriented by descending class id instead of ascending.
inline ChainComplex chain_complex(const OrderComplex& oc, bool reduced, bool reverse_order = false) {
  if (!reverse_order) return chain_complex(oc.simplices, reduced);
  auto flipped = oc.simplices;
  for (auto& level : flipped) {
    for (auto& s : level) std::reverse(s.begin(), s.end());
    std::sort(level.begin(), level.end());
  }
  return chain_complex(flipped, reduced);
}

struct HomologyGroup {
  std::size_t rank = 0;
  std::vector<Integer> torsion;  ///< invariant factors > 1

  bool operator==(const HomologyGroup&) const = default;
};

struct HomologyProfile {
  std::vector<HomologyGroup> groups;  ///< groups[i] = H_i (or reduced H~_i)
  bool reduced = false;

  std::size_t rank(std::size_t i) const { return i < groups.size() ? groups[i].rank : 0; }
  bool torsion_free() const {
    return std::all_of(groups.begin(), groups.end(), [](const HomologyGroup& g) { return g.torsion.empty(); });
  }
  std::vector<std::size_t> ranks() const {
    std::vector<std::size_t> r;
    for (const auto& g : groups) r.push_back(g.rank);
    return r;
  }
  /// Ranks compared with trailing zero groups ignored; torsion must match.
  bool same_as(const HomologyProfile& o) const {
    const std::size_t len = std::max(groups.size(), o.groups.size());
    for (std::size_t i = 0; i < len; ++i) {
      HomologyGroup a = i < groups.size() ? groups[i] : HomologyGroup{};
      HomologyGroup b = i < o.groups.size() ? o.groups[i] : HomologyGroup{};
      if (!(a == b)) return false;
    }
    return true;
  }
  long long euler_characteristic() const {
    long long chi = 0;
    for (std::size_t i = 0; i < groups.size(); ++i) chi += (i % 2 == 0 ? 1 : -1) * static_cast<long long>(groups[i].rank);
    return chi;
  }
  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      if (i) out += ", ";
      out += (reduced ? "H~" : "H") + std::to_string(i) + "=Z^" + std::to_string(groups[i].rank);
      for (const auto& t : groups[i].torsion) out += "+Z/" + t.str();
    }
    return out;
  }
};

inline HomologyProfile homology(const ChainComplex& cc) {
  detail::check_square_zero(cc);
  const std::size_t top = cc.dims.size();
  std::vector<std::vector<Integer>> snf(top + 1);
  for (std::size_t k = 0; k < top; ++k) snf[k] = smith_normal_form(cc.boundaries[k]);

  HomologyProfile hp;
  hp.reduced = cc.reduced;
  for (std::size_t i = 0; i < top; ++i) {
    HomologyGroup g;
    const std::size_t kernel = cc.dims[i] - snf[i].size();
    const std::size_t image = snf[i + 1].size();
    g.rank = kernel - image;
    for (const auto& d : snf[i + 1]) {
      if (d > 1) g.torsion.push_back(d);
    }
    hp.groups.push_back(std::move(g));
  }
  return hp;
}

/// Reduced homology of S^{n-1} # b1 (S^1 x S^{n-2}).
inline HomologyProfile expected_dual_homology(std::size_t n, std::size_t b1) {
  if (n < 2) throw DomainError("expected_dual_homology needs n >= 2");
  HomologyProfile hp;
  hp.reduced = true;
  hp.groups.assign(n, HomologyGroup{});
  if (n == 2) {
    hp.groups[0].rank = b1;
    hp.groups[1].rank = b1 + 1;
  } else if (n == 3) {
    hp.groups[1].rank = 2 * b1;
    hp.groups[2].rank = 1;
  } else {
    hp.groups[1].rank = b1;
    hp.groups[n - 2].rank = b1;
    hp.groups[n - 1].rank = 1;
  }
  return hp;
}

}  // namespace origami
