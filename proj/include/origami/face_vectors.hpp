#pragma once

// f-vector / h-vector transforms for n-dimensional manifolds with corners.
// f_i counts faces of dimension n-1-i (i = 0..n-1).

#include <cstddef>
#include <vector>

#include "origami/errors.hpp"
#include "origami/polynomial.hpp"

namespace origami {

using FVector = std::vector<Integer>;
using HVector = std::vector<Integer>;

/// f_Q(t) = t^n + sum_i f_i t^(n-1-i)
inline Polynomial f_polynomial(const FVector& f, std::size_t n) {
  if (f.size() != n) throw DimensionError("f-vector length must equal n");
  std::vector<Integer> c(n + 1);
  c[n] = 1;
  for (std::size_t i = 0; i < n; ++i) c[n - 1 - i] += f[i];
  return Polynomial(std::move(c));
}

/// h_Q(t) = f_Q(t - 1) = sum_i h_i t^(n-i)
inline Polynomial h_polynomial(const FVector& f, std::size_t n) { return f_polynomial(f, n).shifted(-1); }

/// h_0..h_n from sum h_i t^(n-i) = (t-1)^n + sum f_i (t-1)^(n-1-i).
inline HVector h_vector(const FVector& f, std::size_t n) {
  if (f.size() != n) throw DimensionError("f-vector length must equal n");
  Polynomial p = Polynomial::binomial_power(-1, n);
  for (std::size_t i = 0; i < n; ++i) p = p + f[i] * Polynomial::binomial_power(-1, n - 1 - i);
  HVector h(n + 1);
  for (std::size_t i = 0; i <= n; ++i) h[i] = p[n - i];
  return h;
}

/// sum_i h_i t^i
inline Polynomial h_series(const HVector& h) { return Polynomial(h); }

}  // namespace origami
