#include "rectilt/polynomial.hpp"

#include <algorithm>
#include <set>

#include "rectilt/errors.hpp"

namespace rectilt {

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Poly Poly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Poly(std::move(v));
}

Poly Poly::linear_root(const Rational& r) { return Poly({-r, Rational(1)}); }

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Poly p = *this;
  const Rational lead = leading();
  for (auto& c : p.coeffs_) c /= lead;
  return p;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly();
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Poly(std::move(d));
}

Rational Poly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Mat Poly::operator()(const Mat& a) const {
  if (!a.is_square()) throw InternalError("polynomial of a non-square matrix");
  Mat acc(a.rows(), a.cols());
  const Mat id = Mat::identity(a.rows());
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * a + id * (*it);
  return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(c));
}

PolyDivision divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw InternalError("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly(), a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1));
  for (int k = a.degree() - db; k >= 0; --k) {
    const Rational c = rem[static_cast<std::size_t>(k + db)] / b.leading();
    quo[static_cast<std::size_t>(k)] = c;
    if (sgn(c) == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divide(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly squarefree_part(const Poly& p) {
  if (p.degree() <= 0) return p.monic();
  return divide(p, gcd(p, p.derivative())).quotient.monic();
}

namespace {

// Positive divisors of |n| (n != 0) by trial division; empty when the
// candidate budget is exceeded.
std::vector<mpz_class> divisors(const mpz_class& n, std::size_t budget) {
  mpz_class m = abs(n);
  std::vector<std::pair<mpz_class, unsigned>> factors;
  for (mpz_class d = 2; d * d <= m; ++d) {
    if (d > 1000000) return {};
    unsigned e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    if (e > 0) factors.emplace_back(d, e);
  }
  if (m > 1) factors.emplace_back(m, 1);
  std::vector<mpz_class> divs{1};
  for (const auto& [prime, e] : factors) {
    const std::size_t base = divs.size();
    mpz_class pw = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pw *= prime;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pw);
      if (divs.size() > budget) return {};
    }
  }
  return divs;
}

}  // namespace

std::vector<Rational> rational_roots(const Poly& p, std::size_t max_divisor_candidates) {
  std::set<Rational> roots;
  if (p.degree() <= 0) return {};
  // Integer-scale.
  mpz_class lcm_den = 1;
  for (const auto& c : p.coeffs()) lcm_den = lcm(lcm_den, c.get_den());
  std::vector<mpz_class> ints;
  for (const auto& c : p.coeffs()) ints.push_back(mpz_class(c * lcm_den));
  std::size_t shift = 0;
  while (shift < ints.size() && ints[shift] == 0) ++shift;
  if (shift > 0) roots.insert(Rational(0));
  ints.erase(ints.begin(), ints.begin() + static_cast<std::ptrdiff_t>(shift));
  if (ints.size() >= 2) {
    const auto num_divs = divisors(ints.front(), max_divisor_candidates);
    const auto den_divs = divisors(ints.back(), max_divisor_candidates);
    for (const auto& a : num_divs) {
      for (const auto& b : den_divs) {
        for (int sign : {1, -1}) {
          Rational cand(a * sign, b);
          cand.canonicalize();
          if (sgn(p(cand)) == 0) roots.insert(cand);
        }
      }
    }
  }
  return {roots.begin(), roots.end()};
}

Poly minimal_polynomial(const Mat& a) {
  if (!a.is_square()) throw InternalError("minimal polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  auto flatten = [n](const Mat& m) {
    Mat v(n * n, 1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v(i * n + j, 0) = m(i, j);
    return v;
  };
  std::vector<Mat> powers_flat;
  Mat power = Mat::identity(n);
  for (std::size_t k = 0; k <= n; ++k) {
    Mat v = flatten(power);
    if (!powers_flat.empty()) {
      const Mat basis = hstack(powers_flat, n * n);
      if (auto x = solve(basis, v)) {
        std::vector<Rational> coeffs(k + 1);
        for (std::size_t i = 0; i < k; ++i) coeffs[i] = -(*x)(i, 0);
        coeffs[k] = 1;
        return Poly(std::move(coeffs));
      }
    } else if (n == 0) {
      return Poly({Rational(1)});
    }
    powers_flat.push_back(std::move(v));
    power = power * a;
  }
  throw InternalError("minimal polynomial: Cayley-Hamilton violated");
}

}  // namespace rectilt
