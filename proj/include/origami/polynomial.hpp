#pragma once

// Dense univariate integer polynomials. Index i holds the coefficient of t^i.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "origami/exact_linalg.hpp"

namespace origami {

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<long long> coeffs) {
    for (long long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }
  explicit Polynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(Integer c, std::size_t degree) {
    std::vector<Integer> v(degree + 1);
    v[degree] = std::move(c);
    return Polynomial(std::move(v));
  }

  /// (t + a)^k
  static Polynomial binomial_power(long long a, std::size_t k) {
    Polynomial p{1};
    const Polynomial lin{a, 1};
    for (std::size_t i = 0; i < k; ++i) p = p * lin;
    return p;
  }

  /// -1 for the zero polynomial.
  long long degree() const { return static_cast<long long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient of t^i (zero beyond the degree).
  Integer operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }
  const std::vector<Integer>& coefficients() const { return coeffs_; }

  /// Coefficients t^0..t^(len-1), zero padded.
  std::vector<Integer> padded(std::size_t len) const {
    std::vector<Integer> v(len);
    for (std::size_t i = 0; i < std::min(len, coeffs_.size()); ++i) v[i] = coeffs_[i];
    return v;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Integer> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
    return Polynomial(std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Integer> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
    return Polynomial(std::move(v));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(v));
  }
  friend Polynomial operator*(const Integer& c, const Polynomial& p) {
    std::vector<Integer> v = p.coeffs_;
    for (auto& x : v) x *= c;
    return Polynomial(std::move(v));
  }

  /// p(t + a)
  Polynomial shifted(long long a) const {
    Polynomial out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (!coeffs_[i].is_zero()) out = out + coeffs_[i] * binomial_power(a, i);
    }
    return out;
  }

  /// t^d p(1/t) for d >= degree.
  Polynomial reversed(std::size_t d) const {
    std::vector<Integer> v(d + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[d - i] = coeffs_[i];
    return Polynomial(std::move(v));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      const Integer& c = coeffs_[i];
      if (c.is_zero()) continue;
      Integer a = abs_value(c);
      if (s.empty()) {
        if (c < 0) s += "-";
      } else {
        s += c < 0 ? " - " : " + ";
      }
      if (a != 1 || i == 0) s += a.str();
      if (i >= 1) s += "t";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<Integer> coeffs_;
};

}  // namespace origami
