#pragma once

// Exact integer and rational linear algebra: Bareiss determinants and
// echelon ranks, rational system solving, Smith normal form and
// Fourier-Motzkin feasibility. Everything works on arbitrary precision
// values; there is no floating point anywhere in the library.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "origami/errors.hpp"

namespace origami {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

inline Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(Integer a, Integer b) {
  a = abs_value(a);
  b = abs_value(b);
  while (!b.is_zero()) {
    Integer r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Integer binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// "p/q", or "p" for integral values.
inline std::string to_string(const Rational& q) { return q.str(); }
inline std::string to_string(const Integer& z) { return z.str(); }

/// Dense row-major matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionError("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  const std::vector<T>& entries() const noexcept { return data_; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  void append_row(std::span<const T> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) throw DimensionError("appended row has wrong length");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == 0; });
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

template <typename T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (b(k, j) != 0) out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

/// Exact determinant by Bareiss fraction-free elimination.
inline Integer determinant(IntMatrix m) {
  if (!m.square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m(p, k).is_zero()) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Rank over Q. Integer input uses fraction-free echelon form (every
/// division is exact), rational input plain Gaussian elimination.
template <typename T>
std::size_t rank(Matrix<T> m) {
  std::size_t r = 0;
  T prev = 1;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if constexpr (std::is_same_v<T, Integer>) {
        for (std::size_t j = c + 1; j < m.cols(); ++j) {
          m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
        }
      } else {
        if (m(i, c) == 0) continue;
        T f = m(i, c) / m(r, c);
        for (std::size_t j = c + 1; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
      }
      m(i, c) = 0;
    }
    if constexpr (std::is_same_v<T, Integer>) prev = m(r, c);
    ++r;
  }
  return r;
}

/// Unique solution of a·x = b, or nullopt when a is singular.
inline std::optional<RationalVector> solve_rational(RationalMatrix a, RationalVector b) {
  if (!a.square() || a.rows() != b.size()) throw DimensionError("solve_rational: dimension mismatch");
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return std::nullopt;
    a.swap_rows(k, p);
    std::swap(b[k], b[p]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  for (std::size_t k = 0; k < n; ++k) b[k] /= a(k, k);
  return b;
}

/// Invariant factors d1 | d2 | ... | dk (all positive, k = rank) of an
/// integer matrix.
inline std::vector<Integer> smith_normal_form(IntMatrix m) {
  std::vector<Integer> diag;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();

  auto smallest_in = [&](std::size_t r0, std::size_t r1, std::size_t c0,
                         std::size_t c1) -> std::optional<std::pair<std::size_t, std::size_t>> {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = r0; i < r1; ++i) {
      for (std::size_t j = c0; j < c1; ++j) {
        const Integer& x = m(i, j);
        if (x.is_zero()) continue;
        Integer ax = abs_value(x);
        if (!best || ax < best_abs) {
          best = std::pair{i, j};
          best_abs = std::move(ax);
          if (best_abs == 1) return best;
        }
      }
    }
    return best;
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    auto pivot = smallest_in(t, rows, t, cols);
    if (!pivot) break;
    m.swap_rows(t, pivot->first);
    m.swap_cols(t, pivot->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m(i, t).is_zero()) continue;
        Integer q = m(i, t) / m(t, t);
        for (std::size_t j = t; j < cols; ++j) {
          if (!m(t, j).is_zero()) m(i, j) -= q * m(t, j);
        }
        if (!m(i, t).is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m(t, j).is_zero()) continue;
        Integer q = m(t, j) / m(t, t);
        for (std::size_t i = t; i < rows; ++i) {
          if (!m(i, t).is_zero()) m(i, j) -= q * m(i, t);
        }
        if (!m(t, j).is_zero()) clean = false;
      }
      if (clean) break;
      // A remainder survived: move the smallest entry of row/column t to the pivot.
      auto in_col = smallest_in(t, rows, t, t + 1);
      auto in_row = smallest_in(t, t + 1, t, cols);
      auto a = in_col ? abs_value(m(in_col->first, t)) : Integer(0);
      auto b = in_row ? abs_value(m(t, in_row->second)) : Integer(0);
      if (in_col && (!in_row || a <= b)) {
        m.swap_rows(t, in_col->first);
      } else {
        m.swap_cols(t, in_row->second);
      }
    }
    diag.push_back(abs_value(m(t, t)));
  }

  // Diagonal to divisibility chain: (a, b) -> (gcd, lcm) pairwise.
  for (std::size_t i = 0; i < diag.size(); ++i) {
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      Integer g = gcd(diag[i], diag[j]);
      Integer l = diag[i] / g * diag[j];
      diag[i] = std::move(g);
      diag[j] = std::move(l);
    }
  }
  return diag;
}

/// One linear inequality coeffs·y >= rhs.
struct Inequality {
  RationalVector coeffs;
  Rational rhs;

  friend bool operator<(const Inequality& a, const Inequality& b) {
    if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
    return a.rhs < b.rhs;
  }
};

/// Rational feasibility of a system of inequalities by Fourier-Motzkin
/// elimination.
inline bool fourier_motzkin_feasible(std::vector<Inequality> system, std::size_t num_vars) {
  auto normalize = [](Inequality q) {
    for (const auto& c : q.coeffs) {
      if (c != 0) {
        Rational s = c < 0 ? Rational(-c) : c;
        for (auto& x : q.coeffs) x /= s;
        q.rhs /= s;
        break;
      }
    }
    return q;
  };
  std::set<Inequality> current;
  for (auto& q : system) {
    if (q.coeffs.size() != num_vars) throw DimensionError("inequality has wrong arity");
    current.insert(normalize(std::move(q)));
  }
  for (std::size_t k = num_vars; k-- > 0;) {
    std::vector<Inequality> pos, neg;
    std::set<Inequality> next;
    for (const auto& q : current) {
      if (q.coeffs[k] > 0) {
        pos.push_back(q);
      } else if (q.coeffs[k] < 0) {
        neg.push_back(q);
      } else {
        next.insert(q);
      }
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        // p.coeffs[k] == 1 and q.coeffs[k] == -1 after normalization.
        Inequality s{RationalVector(num_vars), p.rhs + q.rhs};
        for (std::size_t j = 0; j < num_vars; ++j) s.coeffs[j] = p.coeffs[j] + q.coeffs[j];
        s.coeffs[k] = 0;
        next.insert(normalize(std::move(s)));
      }
    }
    current = std::move(next);
  }
  return std::all_of(current.begin(), current.end(), [](const Inequality& q) { return q.rhs <= 0; });
}

/// True iff no nonzero x satisfies <a_i, x> >= 0 for every i, i.e. the
/// vectors positively span R^dim (equivalently, a polytope with these
/// inward normals is bounded).
inline bool positively_spans(std::span<const IntVector> normals, std::size_t dim) {
  if (dim == 0) return true;
  if (normals.empty()) return false;
  for (const auto& a : normals) {
    if (a.size() != dim) throw DimensionError("positively_spans: vector of wrong length");
  }
  // Any nonzero x in the cone can be scaled so that some x_j = +-1.
  for (std::size_t j = 0; j < dim; ++j) {
    for (int s : {1, -1}) {
      std::vector<Inequality> sys;
      for (const auto& a : normals) {
        Inequality q{RationalVector(), Rational(-s * a[j])};
        for (std::size_t c = 0; c < dim; ++c) {
          if (c != j) q.coeffs.emplace_back(a[c]);
        }
        sys.push_back(std::move(q));
      }
      if (fourier_motzkin_feasible(std::move(sys), dim - 1)) return false;
    }
  }
  return true;
}

}  // namespace origami
