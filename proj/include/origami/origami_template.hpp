#pragma once

// Origami templates: a connected multigraph whose vertices carry Delzant
// polytopes and whose edges carry fold facets shared by both endpoints.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "origami/delzant_polytope.hpp"
#include "origami/diagnostics.hpp"
#include "origami/errors.hpp"

namespace origami {

struct EdgeEnd {
  std::size_t vertex = 0;
  std::size_t facet = 0;

  friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
};

struct TemplateEdge {
  EdgeEnd first;
  EdgeEnd second;

  bool is_loop() const noexcept { return first.vertex == second.vertex; }
  friend bool operator==(const TemplateEdge&, const TemplateEdge&) = default;
};

class OrigamiTemplate {
 public:
  OrigamiTemplate(std::size_t n, std::vector<DelzantPolytope> polytopes, std::vector<TemplateEdge> edges,
                  std::string name = {})
      : n_(n), polytopes_(std::move(polytopes)), edges_(std::move(edges)), name_(std::move(name)) {
    if (n_ < 1) throw DimensionError("template dimension must be positive");
    if (polytopes_.empty()) throw PreconditionError("template has no polytopes");
    for (std::size_t v = 0; v < polytopes_.size(); ++v) {
      if (polytopes_[v].dim() != n_) {
        throw DimensionError("polytope " + std::to_string(v) + " has dimension " +
                             std::to_string(polytopes_[v].dim()) + ", template has n = " + std::to_string(n_));
      }
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      for (const EdgeEnd* end : {&edges_[e].first, &edges_[e].second}) {
        if (end->vertex >= polytopes_.size()) {
          throw std::out_of_range("edge " + std::to_string(e) + " references missing vertex " +
                                  std::to_string(end->vertex));
        }
        if (end->facet >= polytopes_[end->vertex].facet_count()) {
          throw std::out_of_range("edge " + std::to_string(e) + " references missing facet " +
                                  std::to_string(end->facet) + " of vertex " + std::to_string(end->vertex));
        }
      }
    }
  }

  std::size_t n() const noexcept { return n_; }
  const std::vector<DelzantPolytope>& polytopes() const noexcept { return polytopes_; }
  const DelzantPolytope& polytope(std::size_t v) const { return polytopes_.at(v); }
  const std::vector<TemplateEdge>& edges() const noexcept { return edges_; }
  const TemplateEdge& edge(std::size_t e) const { return edges_.at(e); }
  std::size_t vertex_count() const noexcept { return polytopes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::string& name() const noexcept { return name_; }

  std::vector<std::string> notes() const {
    std::vector<std::string> out;
    for (const auto& p : polytopes_) out.insert(out.end(), p.notes().begin(), p.notes().end());
    return out;
  }

  /// Same template with one edge deleted; remaining edges keep their order.
  OrigamiTemplate without_edge(std::size_t e) const {
    if (e >= edges_.size()) throw std::out_of_range("edge id " + std::to_string(e) + " out of range");
    auto edges = edges_;
    edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(e));
    return OrigamiTemplate(n_, polytopes_, std::move(edges), name_);
  }

  friend bool operator==(const OrigamiTemplate&, const OrigamiTemplate&) = default;

 private:
  std::size_t n_;
  std::vector<DelzantPolytope> polytopes_;
  std::vector<TemplateEdge> edges_;
  std::string name_;
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

inline std::size_t component_count(std::size_t vertices, const std::vector<TemplateEdge>& edges,
                                   std::optional<std::size_t> skip = std::nullopt) {
  UnionFind uf(vertices);
  std::size_t comps = vertices;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (skip && *skip == e) continue;
    if (uf.unite(edges[e].first.vertex, edges[e].second.vertex)) --comps;
  }
  return comps;
}

}  // namespace detail

inline bool is_connected(const OrigamiTemplate& t) {
  return detail::component_count(t.vertex_count(), t.edges()) == 1;
}

/// Deleting the edge disconnects its endpoints.
inline bool is_bridge(const OrigamiTemplate& t, std::size_t e) {
  const auto& edges = t.edges();
  if (e >= edges.size()) throw std::out_of_range("edge id " + std::to_string(e) + " out of range");
  return detail::component_count(t.vertex_count(), edges, e) > detail::component_count(t.vertex_count(), edges);
}

inline std::vector<std::size_t> non_bridge_edges(const OrigamiTemplate& t) {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < t.edge_count(); ++e) {
    if (!is_bridge(t, e)) out.push_back(e);
  }
  return out;
}

/// b1(G) = |E| - |V| + 1 of a connected template graph.
inline std::size_t graph_cycle_rank(const OrigamiTemplate& t) {
  if (!is_connected(t)) throw PreconditionError("graph_cycle_rank: template graph is disconnected");
  return t.edge_count() + 1 - t.vertex_count();
}

inline bool check_coorientable(const OrigamiTemplate& t) {
  return std::none_of(t.edges().begin(), t.edges().end(), [](const TemplateEdge& e) { return e.is_loop(); });
}

/// Two-colouring of the template graph (+1 for the class of vertex 0), or
/// nullopt when some closed walk has odd length.
inline std::optional<std::vector<int>> orientation_signs(const OrigamiTemplate& t) {
  std::vector<std::vector<std::size_t>> adj(t.vertex_count());
  for (const auto& e : t.edges()) {
    adj[e.first.vertex].push_back(e.second.vertex);
    adj[e.second.vertex].push_back(e.first.vertex);
  }
  std::vector<int> sign(t.vertex_count(), 0);
  for (std::size_t s = 0; s < t.vertex_count(); ++s) {
    if (sign[s] != 0) continue;
    sign[s] = 1;
    std::queue<std::size_t> q;
    q.push(s);
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      for (auto w : adj[v]) {
        if (sign[w] == 0) {
          sign[w] = -sign[v];
          q.push(w);
        } else if (sign[w] == sign[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return sign;
}

/// Heuristic criterion: coorientable and the graph is bipartite. Folding
/// across an edge reverses the ambient orientation, so the polytopes can be
/// oriented consistently iff every cycle has even length.
inline bool check_orientable(const OrigamiTemplate& t) {
  return check_coorientable(t) && orientation_signs(t).has_value();
}

/// Edges outside the spanning tree grown by adding edges in id order.
/// Their fold classes freely generate H^1 (and H_{2n-1}); all their
/// products vanish.
inline std::vector<std::size_t> cycle_edge_basis(const OrigamiTemplate& t) {
  if (!is_connected(t)) throw PreconditionError("cycle_edge_basis: template graph is disconnected");
  detail::UnionFind uf(t.vertex_count());
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < t.edge_count(); ++e) {
    if (!uf.unite(t.edge(e).first.vertex, t.edge(e).second.vertex)) out.push_back(e);
  }
  return out;
}

/// For a fold between P1 (facet f1) and P2 (facet f2): maps each facet g of
/// P1 meeting the fold to the facet of P2 with the same half-space. Missing
/// partners and mismatching traces on the fold are reported to `diag`.
inline std::map<std::size_t, std::size_t> fold_neighbour_map(const DelzantPolytope& p1, const FaceLattice& l1,
                                                            std::size_t f1, const DelzantPolytope& p2,
                                                            const FaceLattice& l2, std::size_t f2,
                                                            Diagnostics* diag, std::optional<std::size_t> edge) {
  std::map<std::size_t, std::size_t> out;
  auto report = [&](std::string code, std::string msg) {
    if (diag) diag->add(std::move(code), std::move(msg)).edge = edge;
  };
  const std::string where = edge ? "edge " + std::to_string(*edge) + ": " : std::string();
  for (std::size_t g = 0; g < p1.facet_count(); ++g) {
    if (g == f1) continue;
    const FacetMask k1 = facet_bit(g) | facet_bit(f1);
    if (!l1.has_face(k1)) continue;
    std::optional<std::size_t> partner;
    for (std::size_t h = 0; h < p2.facet_count(); ++h) {
      if (h != f2 && same_halfspace(p1.facet(g), p2.facet(h))) partner = h;
    }
    if (!partner) {
      report("fold-neighbourhood-mismatch", where + "facet " + std::to_string(g) + " of '" + p1.label() +
                                                "' meets the fold but '" + p2.label() +
                                                "' has no facet on the same hyperplane");
      continue;
    }
    const FacetMask k2 = facet_bit(*partner) | facet_bit(f2);
    if (!l2.has_face(k2) || l1.points(l1.face(k1)) != l2.points(l2.face(k2))) {
      report("fold-neighbourhood-mismatch", where + "facet " + std::to_string(g) + " of '" + p1.label() +
                                                "' and facet " + std::to_string(*partner) + " of '" + p2.label() +
                                                "' cut the fold in different faces");
      continue;
    }
    out.emplace(g, *partner);
  }
  return out;
}

/// Checks the template axioms: every polytope is Delzant, the graph is
/// connected, each fold facet is the same facet of both endpoint polytopes
/// and the polytopes coincide near it, and distinct fold facets at one
/// vertex are disjoint.
inline Diagnostics validate_template(const OrigamiTemplate& t) {
  Diagnostics d;
  d.notes = t.notes();
  std::vector<std::optional<FaceLattice>> lattices(t.vertex_count());
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    auto pd = check_delzant(t.polytope(v));
    for (auto& viol : pd.violations) {
      viol.polytope = v;
      d.violations.push_back(std::move(viol));
    }
    if (pd.ok()) lattices[v] = face_lattice(t.polytope(v));
  }
  if (!is_connected(t)) d.add("disconnected", "template graph is not connected");

  for (std::size_t e = 0; e < t.edge_count(); ++e) {
    const auto& [a, b] = t.edge(e);
    if (!lattices[a.vertex] || !lattices[b.vertex]) continue;
    const auto& p1 = t.polytope(a.vertex);
    const auto& p2 = t.polytope(b.vertex);
    const auto& l1 = *lattices[a.vertex];
    const auto& l2 = *lattices[b.vertex];
    const std::string where = "edge " + std::to_string(e) + ": ";
    if (!same_halfspace(p1.facet(a.facet), p2.facet(b.facet))) {
      d.add("fold-hyperplane-mismatch", where + "facet " + std::to_string(a.facet) + " of '" + p1.label() +
                                            "' and facet " + std::to_string(b.facet) + " of '" + p2.label() +
                                            "' lie on different half-spaces")
          .edge = e;
      continue;
    }
    if (l1.points(l1.face(facet_bit(a.facet))) != l2.points(l2.face(facet_bit(b.facet)))) {
      d.add("fold-facet-mismatch", where + "fold facets have different vertex sets").edge = e;
      continue;
    }
    fold_neighbour_map(p1, l1, a.facet, p2, l2, b.facet, &d, e);
    fold_neighbour_map(p2, l2, b.facet, p1, l1, a.facet, &d, e);
  }

  // distinct fold facets at one vertex must be disjoint
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> folds_at(t.vertex_count());
  for (std::size_t e = 0; e < t.edge_count(); ++e) {
    const auto& edge = t.edge(e);
    folds_at[edge.first.vertex].emplace_back(e, edge.first.facet);
    if (!edge.is_loop()) folds_at[edge.second.vertex].emplace_back(e, edge.second.facet);
  }
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    if (!lattices[v]) continue;
    const auto& folds = folds_at[v];
    for (std::size_t i = 0; i < folds.size(); ++i) {
      for (std::size_t j = i + 1; j < folds.size(); ++j) {
        const auto [e1, g1] = folds[i];
        const auto [e2, g2] = folds[j];
        if (g1 == g2 || lattices[v]->has_face(facet_bit(g1) | facet_bit(g2))) {
          auto& viol = d.add("fold-facets-not-disjoint",
                             "vertex " + std::to_string(v) + ": fold facets of edges " + std::to_string(e1) +
                                 " and " + std::to_string(e2) + " are not disjoint");
          viol.polytope = v;
          viol.edge = e2;
          viol.facets = {g1, g2};
        }
      }
    }
  }
  return d;
}

enum class CutMode { cycle_only, any_edge };

struct CutResult {
  OrigamiTemplate cut_template;
  HVector folded_facet_h;
};

/// Deletes a fold edge; the fold facet becomes an ordinary facet on both
/// sides. In cycle_only mode the edge must lie on a cycle so the result
/// stays connected.
inline CutResult cut(const OrigamiTemplate& t, std::size_t edge_id, CutMode mode = CutMode::cycle_only) {
  if (edge_id >= t.edge_count()) throw std::out_of_range("edge id " + std::to_string(edge_id) + " out of range");
  if (mode == CutMode::cycle_only && is_bridge(t, edge_id)) {
    throw PreconditionError("edge " + std::to_string(edge_id) + " is a bridge; cutting it disconnects the template");
  }
  const auto& end = t.edge(edge_id).first;
  return CutResult{t.without_edge(edge_id), facet_h_vector(t.polytope(end.vertex), end.facet)};
}

}  // namespace origami
