#pragma once

// Numeric invariants of a toric origami manifold M read off its template:
// Betti numbers (closed form and by cutting folds), Schenzel-corrected
// h-vectors, Dehn-Sommerville and Euler checks, equivariant Poincare series,
// restriction-map rank bookkeeping, and partial data when some proper faces
// of M/T are not acyclic.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "origami/errors.hpp"
#include "origami/exact_linalg.hpp"
#include "origami/face_vectors.hpp"
#include "origami/homology.hpp"
#include "origami/orbit_space.hpp"
#include "origami/origami_template.hpp"
#include "origami/polynomial.hpp"

namespace origami {

/// b_0 .. b_{2n}
using BettiVector = std::vector<Integer>;

inline std::string format_vector(const std::vector<Integer>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + ")";
}

namespace detail {

inline Integer sign_pow(std::size_t i) { return i % 2 == 0 ? Integer(1) : Integer(-1); }

inline Integer at_or_zero(const std::vector<Integer>& v, long long i) {
  return (i < 0 || static_cast<std::size_t>(i) >= v.size()) ? Integer(0) : v[static_cast<std::size_t>(i)];
}

}  // namespace detail

inline BettiVector betti_closed_form(const HVector& h, const Integer& b1, std::size_t n) {
  if (n < 2) throw DomainError("betti_closed_form needs n >= 2");
  if (h.size() != n + 1) throw DimensionError("h-vector must have n+1 entries");
  BettiVector b(2 * n + 1, 0);
  b[0] = 1;
  for (std::size_t i = 1; i + 1 <= n; ++i) b[2 * i] = h[i] - detail::sign_pow(i) * binomial(n, i) * b1;
  b[2 * n] = h[n] + (1 - detail::sign_pow(n)) * b1;
  b[1] = b1;
  b[2 * n - 1] = b1;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j] < 0) {
      throw InconsistencyError("closed-form Betti number b_" + std::to_string(j) + " = " + b[j].str() +
                               " is negative; the template does not have acyclic proper faces");
    }
  }
  return b;
}

/// Face classes of a valid template together with the checks every
/// invariant computation relies on.
inline FacePoset orbit_space_of(const OrigamiTemplate& t) { return build_face_classes(t); }

inline HVector template_h_vector(const FacePoset& fp) { return h_vector(f_vector(fp), fp.n()); }

/// Betti numbers by repeatedly cutting the lowest-id non-bridge fold until
/// the graph is a tree, where b_{2i} = h_i(M/T).
inline BettiVector betti_inductive(const OrigamiTemplate& t) {
  const std::size_t n = t.n();
  if (n < 2) throw DomainError("betti_inductive needs n >= 2");
  if (!check_orientable(t)) throw PreconditionError("betti_inductive needs a coorientable, orientable template");
  const auto fp = build_face_classes(t);
  if (acyclicity_report(fp).r_min != 1) {
    throw PreconditionError("some proper face of M/T is not acyclic; use the relaxed report instead");
  }
  const auto cycle_edges = non_bridge_edges(t);
  if (cycle_edges.empty()) {
    const auto h = template_h_vector(fp);
    BettiVector b(2 * n + 1, 0);
    for (std::size_t i = 0; i <= n; ++i) b[2 * i] = h[i];
    return b;
  }
  const auto c = cut(t, cycle_edges.front(), CutMode::cycle_only);
  BettiVector b = betti_inductive(c.cut_template);
  const auto& hf = c.folded_facet_h;
  for (std::size_t i = 1; i < n; ++i) {
    b[2 * i] -= detail::at_or_zero(hf, static_cast<long long>(i)) + detail::at_or_zero(hf, static_cast<long long>(i) - 1);
  }
  b[1] += 1;
  b[2 * n - 1] = b[1];
  return b;
}

/// Violated structural properties of a Betti vector (empty if none):
/// b_0 = b_2n = 1, b_1 = b_{2n-1} = b1, odd vanishing, Poincare duality.
inline std::vector<std::string> betti_structure_failures(const BettiVector& b, const Integer& b1, std::size_t n) {
  std::vector<std::string> out;
  if (b.size() != 2 * n + 1) return {"wrong length"};
  if (b[0] != 1 || b[2 * n] != 1) out.push_back("b_0 and b_2n must be 1");
  if (b[1] != b1 || b[2 * n - 1] != b1) out.push_back("b_1 and b_{2n-1} must equal b_1(G)");
  for (std::size_t i = 1; i + 2 <= n; ++i) {
    if (b[2 * i + 1] != 0) out.push_back("b_" + std::to_string(2 * i + 1) + " must vanish");
  }
  for (std::size_t j = 0; j <= 2 * n; ++j) {
    if (b[j] != b[2 * n - j]) out.push_back("Poincare duality fails in degree " + std::to_string(j));
  }
  for (const auto& x : b) {
    if (x < 0) {
      out.push_back("negative Betti number");
      break;
    }
  }
  return out;
}

/// h'_j = h_j + C(n,j) sum_{i=-1}^{j-2} (-1)^{j-i} dim H~_i, with H~_{-1} = 0.
inline HVector schenzel_h_prime(const HVector& h, const HomologyProfile& dual, std::size_t n) {
  if (h.size() != n + 1) throw DimensionError("h-vector must have n+1 entries");
  if (!dual.torsion_free()) throw InconsistencyError("dual homology has torsion; Schenzel data would depend on the field");
  HVector hp = h;
  for (std::size_t j = 1; j <= n; ++j) {
    Integer corr = 0;
    for (std::size_t i = 0; i + 2 <= j; ++i) corr += detail::sign_pow(j - i) * Integer(dual.rank(i));
    hp[j] += binomial(n, j) * corr;
  }
  return hp;
}

/// h''_j = h'_j - C(n,j) dim H~_{j-1} for 1 <= j <= n-1; values[j-1] holds h''_j.
struct HDoublePrime {
  std::vector<Integer> values;

  const Integer& at(std::size_t j) const { return values.at(j - 1); }
};

inline HDoublePrime h_double_prime(const HVector& h_prime, const HomologyProfile& dual, std::size_t n) {
  if (h_prime.size() != n + 1) throw DimensionError("h'-vector must have n+1 entries");
  HDoublePrime out;
  for (std::size_t j = 1; j < n; ++j) out.values.push_back(h_prime[j] - binomial(n, j) * Integer(dual.rank(j - 1)));
  for (std::size_t j = 1; j < n; ++j) {
    if (out.at(j) < 0) throw InconsistencyError("h''_" + std::to_string(j) + " is negative");
    if (out.at(j) != out.at(n - j)) throw InconsistencyError("h'' is not symmetric at degree " + std::to_string(j));
  }
  return out;
}

/// h''_j - (b_{2j} - n b1 [j == 1] - n b1 [j == n-1]) for 1 <= j <= n-1.
inline std::vector<Integer> h_double_prime_residual(const HDoublePrime& hpp, const BettiVector& b, const Integer& b1,
                                                    std::size_t n) {
  std::vector<Integer> r;
  for (std::size_t j = 1; j < n; ++j) {
    Integer expect = b[2 * j];
    if (j == 1) expect -= Integer(n) * b1;
    if (j == n - 1) expect -= Integer(n) * b1;
    r.push_back(hpp.at(j) - expect);
  }
  return r;
}

/// chi of the boundary from the face counts: sum_i (-1)^{n-1-i} f_i.
inline Integer boundary_euler_characteristic(const FVector& f, std::size_t n) {
  Integer chi = 0;
  for (std::size_t i = 0; i < n; ++i) chi += detail::sign_pow(n - 1 - i) * f[i];
  return chi;
}

inline Integer sphere_euler_characteristic(std::size_t dim) { return dim % 2 == 0 ? 2 : 0; }

/// Residuals h_{n-i} - h_i - (-1)^i (chi(boundary) - chi(S^{n-1})) C(n,i), i = 0..n.
inline std::vector<Integer> dehn_sommerville_check(const HVector& h, const Integer& chi_boundary, std::size_t n) {
  if (h.size() != n + 1) throw DimensionError("h-vector must have n+1 entries");
  std::vector<Integer> r;
  const Integer diff = chi_boundary - sphere_euler_characteristic(n - 1);
  for (std::size_t i = 0; i <= n; ++i) r.push_back(h[n - i] - h[i] - detail::sign_pow(i) * diff * binomial(n, i));
  return r;
}

inline Integer euler_characteristic(const BettiVector& b) {
  Integer chi = 0;
  for (std::size_t j = 0; j < b.size(); ++j) chi += detail::sign_pow(j) * b[j];
  return chi;
}

/// Relations between M and the manifold M' obtained by cutting one fold.
struct CutCheck {
  std::size_t edge = 0;
  HVector folded_facet_h;
  Polynomial h_identity_residual;         ///< h_M'(t) - h_M(t) - (t+1) h_F(t) + (t-1)^n
  std::vector<Integer> f_identity_residual;  ///< f_i(M') - f_i(M) - 2 f_{i-1}(F) - f_i(F)
  Integer euler_residual;                 ///< chi(M') - chi(M) - 2 chi(B), chi(B) = sum h_i(F)
  std::vector<Integer> betti_residual;    ///< b_2i(M') - b_2i(M) - h_i(F) - h_{i-1}(F), i = 1..n-1
  long long b1_drop = 0;

  bool holds() const {
    auto zero = [](const std::vector<Integer>& v) {
      for (const auto& x : v) {
        if (x != 0) return false;
      }
      return true;
    };
    return h_identity_residual.is_zero() && zero(f_identity_residual) && euler_residual == 0 && zero(betti_residual) &&
           b1_drop == 1;
  }
};

inline CutCheck cut_check(const OrigamiTemplate& t, std::size_t edge) {
  const std::size_t n = t.n();
  const auto c = cut(t, edge, CutMode::cycle_only);
  const auto fp = build_face_classes(t);
  const auto fp2 = build_face_classes(c.cut_template);
  const auto f = f_vector(fp);
  const auto f2 = f_vector(fp2);
  const auto& end = t.edge(edge).first;
  const auto ff = facet_f_vector(face_lattice(t.polytope(end.vertex)), end.facet);

  CutCheck out;
  out.edge = edge;
  out.folded_facet_h = c.folded_facet_h;

  // h_F(t) = sum_i h_i(F) t^{n-1-i}
  std::vector<Integer> hf_coeffs(n, 0);
  for (std::size_t i = 0; i < n; ++i) hf_coeffs[n - 1 - i] = c.folded_facet_h[i];
  const Polynomial hf(hf_coeffs);
  out.h_identity_residual =
      h_polynomial(f2, n) - h_polynomial(f, n) - Polynomial{1, 1} * hf + Polynomial::binomial_power(-1, n);

  for (std::size_t i = 0; i < n; ++i) {
    const Integer fprev = i == 0 ? Integer(1) : ff[i - 1];
    const Integer fi = i + 1 < n ? ff[i] : Integer(0);
    out.f_identity_residual.push_back(f2[i] - f[i] - 2 * fprev - fi);
  }

  const Integer b1 = graph_cycle_rank(t);
  const Integer b1c = graph_cycle_rank(c.cut_template);
  out.b1_drop = static_cast<long long>(b1 - b1c);
  const auto b = betti_closed_form(template_h_vector(fp), b1, n);
  const auto b2 = betti_closed_form(template_h_vector(fp2), b1c, n);
  Integer chi_b = 0;
  for (const auto& x : c.folded_facet_h) chi_b += x;
  out.euler_residual = euler_characteristic(b2) - euler_characteristic(b) - 2 * chi_b;
  const auto& hfv = c.folded_facet_h;
  for (std::size_t i = 1; i < n; ++i) {
    out.betti_residual.push_back(b2[2 * i] - b[2 * i] - detail::at_or_zero(hfv, static_cast<long long>(i)) -
                                 detail::at_or_zero(hfv, static_cast<long long>(i) - 1));
  }
  return out;
}

struct EulerReport {
  Integer chi_manifold;       ///< from the Betti vector
  Integer chi_boundary;       ///< of the boundary of M/T
  Integer vertex_classes;     ///< f_{n-1}; must equal chi_manifold
  std::vector<CutCheck> cuts; ///< one per non-bridge edge

  bool holds() const {
    if (chi_manifold != vertex_classes) return false;
    for (const auto& c : cuts) {
      if (c.euler_residual != 0) return false;
    }
    return true;
  }
};

inline EulerReport euler_checks(const OrigamiTemplate& t) {
  const auto fp = build_face_classes(t);
  const auto f = f_vector(fp);
  const std::size_t n = t.n();
  EulerReport r;
  r.chi_manifold = euler_characteristic(betti_closed_form(h_vector(f, n), graph_cycle_rank(t), n));
  r.chi_boundary = boundary_euler_characteristic(f, n);
  r.vertex_classes = f[n - 1];
  for (auto e : non_bridge_edges(t)) r.cuts.push_back(cut_check(t, e));
  return r;
}

/// Ranks of H^d_T(M) for d = 0..degree_cap: even degrees from
/// sum_j h_j t^{2j} / (1 - t^2)^n, degree 1 is b1, other odd degrees 0.
inline std::vector<Integer> equivariant_poincare_series(const HVector& h, const Integer& b1, std::size_t n,
                                                        std::size_t degree_cap) {
  std::vector<Integer> out(degree_cap + 1, 0);
  for (std::size_t d = 0; d <= degree_cap; d += 2) {
    const std::size_t k = d / 2;
    Integer c = 0;
    for (std::size_t j = 0; j <= k && j < h.size(); ++j) c += h[j] * binomial(static_cast<long long>(k - j + n - 1), n - 1);
    out[d] = c;
  }
  if (degree_cap >= 1) out[1] = b1;
  return out;
}

/// Ranks around the restriction map from equivariant cohomology of M to that
/// of the fixed data: cokernel in degree 2, kernel in degree 4.
struct RestrictionRanks {
  Integer coker2;
  Integer ker4;
  std::vector<std::size_t> mono_degrees;  ///< injective but not surjective
  std::vector<std::size_t> epi_degrees;   ///< surjective but not injective
  std::string summary;
};

inline RestrictionRanks restriction_rank_report(const Integer& b1, std::size_t n) {
  RestrictionRanks r;
  r.coker2 = Integer(n) * b1;
  r.ker4 = binomial(n, 2) * b1;
  r.mono_degrees = {2, 2 * n - 1};
  r.epi_degrees = {4};
  r.summary = "isomorphism in every degree except 2 and " + std::to_string(2 * n - 1) +
              " (injective) and 4 (surjective)";
  return r;
}

/// h'(t) - (sum b_2i t^i - n b1 t + C(n,2) b1 t^2); zero when every proper
/// face is acyclic.
inline Polynomial h_prime_betti_residual(const HVector& h_prime, const BettiVector& b, const Integer& b1, std::size_t n) {
  std::vector<Integer> even(n + 1);
  for (std::size_t i = 0; i <= n; ++i) even[i] = b[2 * i];
  return Polynomial(h_prime) - Polynomial(even) + Polynomial::monomial(Integer(n) * b1, 1) -
         Polynomial::monomial(binomial(n, 2) * b1, 2);
}

/// What can still be said when only faces of codimension >= r_min are acyclic.
struct RelaxedReport {
  std::size_t r_min = 1;
  std::vector<std::pair<std::size_t, std::size_t>> non_acyclic;  ///< (class id, cycle rank)
  long long vanish_lo = 0, vanish_hi = -1;  ///< b_{2i+1} = 0 for lo <= i <= hi
  long long cut_lo = 0, cut_hi = -1;        ///< cut relation holds for lo <= i <= hi
  std::vector<std::string> constraints;

  bool full_betti_available() const noexcept { return r_min == 1; }
};

inline RelaxedReport relaxed_report(const OrigamiTemplate& t) {
  const std::size_t n = t.n();
  const auto fp = build_face_classes(t);
  const auto acyc = acyclicity_report(fp);
  RelaxedReport r;
  r.r_min = acyc.r_min;
  r.non_acyclic = acyc.non_acyclic;
  const long long rr = static_cast<long long>(r.r_min);
  const long long nn = static_cast<long long>(n);
  if (r.r_min == 1) {
    r.vanish_lo = 1;
    r.vanish_hi = nn - 2;
    r.cut_lo = 1;
    r.cut_hi = nn - 1;
  } else {
    r.vanish_lo = rr;
    r.vanish_hi = nn - rr - 1;
    r.cut_lo = rr;
    r.cut_hi = nn - rr;
  }
  for (long long i = r.vanish_lo; i <= r.vanish_hi; ++i) {
    r.constraints.push_back("b_" + std::to_string(2 * i + 1) + "(M) = 0");
  }
  const auto edges = non_bridge_edges(t);
  if (!edges.empty() && r.cut_lo <= r.cut_hi) {
    const auto& end = t.edge(edges.front()).first;
    const auto hf = facet_h_vector(t.polytope(end.vertex), end.facet);
    for (long long i = r.cut_lo; i <= r.cut_hi; ++i) {
      const Integer delta = detail::at_or_zero(hf, i) + detail::at_or_zero(hf, i - 1);
      r.constraints.push_back("cutting edge " + std::to_string(edges.front()) + ": b_" + std::to_string(2 * i) +
                              "(M') = b_" + std::to_string(2 * i) + "(M) + " + delta.str());
    }
  }
  return r;
}

/// Everything computable for a template whose proper faces are all acyclic.
struct InvariantReport {
  std::size_t n = 0;
  Integer b1;
  FVector f;
  HVector h;
  HomologyProfile dual_homology;
  HVector h_prime;
  HDoublePrime h_double_prime;
  std::vector<Integer> h_double_prime_residual;
  std::optional<BettiVector> betti_closed;
  std::optional<BettiVector> betti_inductive;
  bool methods_agree = true;
  Integer chi_manifold;
  Integer chi_boundary;
  std::vector<Integer> dehn_sommerville;
  RestrictionRanks restriction;
  Polynomial h_prime_residual;
  std::vector<Integer> equivariant_series;
  std::size_t r_min = 1;
  bool coorientable = true;
  bool orientable = true;
};

enum class BettiMode { closed, inductive, both };

inline InvariantReport invariant_report(const OrigamiTemplate& t, BettiMode mode = BettiMode::both) {
  const std::size_t n = t.n();
  if (n < 2) throw DomainError("invariants need n >= 2");
  InvariantReport r;
  r.n = n;
  r.coorientable = check_coorientable(t);
  r.orientable = check_orientable(t);
  const auto fp = build_face_classes(t);
  r.r_min = acyclicity_report(fp).r_min;
  if (r.r_min != 1) {
    throw PreconditionError("r_min = " + std::to_string(r.r_min) +
                            ": some proper face of M/T is not acyclic, so the Betti numbers are not determined; "
                            "use the relaxed report");
  }
  r.b1 = graph_cycle_rank(t);
  r.f = f_vector(fp);
  r.h = h_vector(r.f, n);
  r.dual_homology = homology(chain_complex(order_complex(fp), true));
  r.h_prime = schenzel_h_prime(r.h, r.dual_homology, n);
  r.h_double_prime = h_double_prime(r.h_prime, r.dual_homology, n);

  const auto closed = betti_closed_form(r.h, r.b1, n);
  if (mode != BettiMode::inductive) r.betti_closed = closed;
  if (mode != BettiMode::closed) r.betti_inductive = betti_inductive(t);
  if (r.betti_closed && r.betti_inductive) r.methods_agree = *r.betti_closed == *r.betti_inductive;
  const BettiVector& b = r.betti_closed ? *r.betti_closed : *r.betti_inductive;

  r.h_double_prime_residual = h_double_prime_residual(r.h_double_prime, b, r.b1, n);
  r.chi_manifold = euler_characteristic(b);
  r.chi_boundary = boundary_euler_characteristic(r.f, n);
  r.dehn_sommerville = dehn_sommerville_check(r.h, r.chi_boundary, n);
  r.restriction = restriction_rank_report(r.b1, n);
  r.h_prime_residual = h_prime_betti_residual(r.h_prime, b, r.b1, n);
  r.equivariant_series = equivariant_poincare_series(r.h, r.b1, n, 2 * n);
  return r;
}

}  // namespace origami
