#pragma once

// Univariate polynomials over Q, just enough to split endomorphisms:
// minimal polynomials, gcd, squarefree parts, rational roots.

#include <vector>

#include "rectilt/linalg.hpp"

namespace rectilt {

/// Coefficients from the constant term upwards; no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);

  static Poly monomial(const Rational& c, std::size_t degree);
  /// t - r
  static Poly linear_root(const Rational& r);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree of the zero polynomial is reported as -1.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  const Rational& leading() const { return coeffs_.back(); }

  Poly monic() const;
  Poly derivative() const;
  Rational operator()(const Rational& x) const;
  /// p(A) for a square matrix A.
  Mat operator()(const Mat& a) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct PolyDivision {
  Poly quotient;
  Poly remainder;
};
PolyDivision divide(const Poly& a, const Poly& b);

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

/// Product of the distinct irreducible factors, monic.
Poly squarefree_part(const Poly& p);

/// Distinct rational roots in increasing order (rational root test on the
/// integer-scaled polynomial). Candidates are capped: if a coefficient needs
/// more than `max_divisor_candidates` divisors the search is abandoned and
/// whatever was found so far is returned.
std::vector<Rational> rational_roots(const Poly& p, std::size_t max_divisor_candidates = 4096);

/// Minimal polynomial of a square matrix (monic).
Poly minimal_polynomial(const Mat& a);

}  // namespace rectilt
