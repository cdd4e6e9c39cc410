#pragma once

// Exact dense linear algebra over Q.
//
// Everything above this layer reduces to rref / kernel / solve / quotient on
// small dense matrices. Pivoting is deterministic (leftmost column, topmost
// nonzero row), so every derived basis is reproducible bit for bit.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rectilt {

using Rational = mpq_class;

/// Canonical text form: "p/q" in lowest terms, integers without "/1".
std::string to_string(const Rational& q);
/// Accepts "p", "-p", "p/q". Throws InputError on anything else or q == 0.
Rational parse_rational(std::string_view text);

class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols);
  Mat(std::initializer_list<std::initializer_list<Rational>> rows);

  static Mat identity(std::size_t n);
  static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
  /// Column vector from entries.
  static Mat column(const std::vector<Rational>& entries);
  /// Standard basis vector e_i of length n, as a column.
  static Mat unit(std::size_t n, std::size_t i);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  bool is_square() const noexcept { return rows_ == cols_; }
  Rational trace() const;

  Mat transpose() const;
  Mat col(std::size_t c) const;
  Mat row(std::size_t r) const;
  /// Columns [first, first + count).
  Mat col_range(std::size_t first, std::size_t count) const;
  /// Rows [first, first + count).
  Mat row_range(std::size_t first, std::size_t count) const;
  /// Sub-block with the given top-left corner and shape.
  Mat block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;
  void set_block(std::size_t r0, std::size_t c0, const Mat& b);
  /// The entries of column c, as a plain vector.
  std::vector<Rational> col_entries(std::size_t c) const;

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(const Rational& s);

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(Mat a, const Rational& s) { return a *= s; }
  friend Mat operator*(const Rational& s, Mat a) { return a *= s; }
  friend Mat operator*(const Mat& a, const Mat& b);
  friend bool operator==(const Mat& a, const Mat& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Mat hstack(const std::vector<Mat>& blocks, std::size_t rows);
Mat vstack(const std::vector<Mat>& blocks, std::size_t cols);
inline Mat hstack(const Mat& a, const Mat& b) { return hstack({a, b}, a.rows()); }
inline Mat vstack(const Mat& a, const Mat& b) { return vstack({a, b}, a.cols()); }
Mat block_diag(const std::vector<Mat>& blocks);
Mat kronecker(const Mat& a, const Mat& b);

struct RrefResult {
  Mat reduced;
  std::vector<std::size_t> pivots;  // strictly increasing column indices
};

RrefResult rref(const Mat& m);
std::size_t rank(const Mat& m);

/// Columns form a basis of the null space; column count = cols - rank.
/// One column per free variable, in increasing free-column order.
Mat kernel_basis(const Mat& m);

/// The pivot columns of m: a basis of its column space drawn from m itself.
Mat column_space_basis(const Mat& m);

/// Some X with m * X = rhs, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
std::optional<Mat> solve(const Mat& m, const Mat& rhs);

std::optional<Mat> inverse(const Mat& m);

/// V / span(subspace columns) for V = Q^ambient.
///
/// `projection` (dim x ambient) is surjective with kernel exactly the span;
/// `section` (ambient x dim) is a right inverse of `projection` made of
/// standard basis vectors (the non-pivot coordinates).
struct Quotient {
  std::size_t dim = 0;
  Mat projection;
  Mat section;
};
Quotient quotient(std::size_t ambient, const Mat& subspace);

/// True iff every column of `sub` lies in the column span of `space`.
bool contained_in(const Mat& sub, const Mat& space);

/// Linear span equality of two column sets in the same ambient space.
bool same_span(const Mat& a, const Mat& b);

}  // namespace rectilt
