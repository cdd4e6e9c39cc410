#include "rectilt/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "rectilt/errors.hpp"

namespace rectilt {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  auto is_integer = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den) || den.front() == '-' || den.front() == '+') {
    throw InputError("not a rational number: \"" + std::string(text) + "\"");
  }
  if (num.front() == '+') num.remove_prefix(1);
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw InputError("zero denominator: \"" + std::string(text) + "\"");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Mat::Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Mat::Mat(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::column(const std::vector<Rational>& entries) {
  Mat m(entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
  return m;
}

Mat Mat::unit(std::size_t n, std::size_t i) {
  Mat m(n, 1);
  m(i, 0) = 1;
  return m;
}

bool Mat::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

Rational Mat::trace() const {
  Rational t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Mat Mat::col(std::size_t c) const { return block(0, c, rows_, 1); }
Mat Mat::row(std::size_t r) const { return block(r, 0, 1, cols_); }
Mat Mat::col_range(std::size_t first, std::size_t count) const { return block(0, first, rows_, count); }
Mat Mat::row_range(std::size_t first, std::size_t count) const { return block(first, 0, count, cols_); }

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
  if (r0 + nrows > rows_ || c0 + ncols > cols_) throw InternalError("Mat::block out of range");
  Mat b(nrows, ncols);
  for (std::size_t r = 0; r < nrows; ++r)
    for (std::size_t c = 0; c < ncols; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw InternalError("Mat::set_block out of range");
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

std::vector<Rational> Mat::col_entries(std::size_t c) const {
  std::vector<Rational> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Mat& Mat::operator+=(const Mat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InternalError("Mat + shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InternalError("Mat - shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Mat& Mat::operator*=(const Rational& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) throw InternalError("Mat * shape mismatch");
  Mat p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (sgn(b(k, j)) != 0) p(i, j) += aik * b(k, j);
      }
    }
  }
  return p;
}

bool operator==(const Mat& a, const Mat& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Mat hstack(const std::vector<Mat>& blocks, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw InternalError("hstack row mismatch");
    cols += b.cols();
  }
  Mat m(rows, cols);
  std::size_t at = 0;
  for (const auto& b : blocks) {
    m.set_block(0, at, b);
    at += b.cols();
  }
  return m;
}

Mat vstack(const std::vector<Mat>& blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw InternalError("vstack column mismatch");
    rows += b.rows();
  }
  Mat m(rows, cols);
  std::size_t at = 0;
  for (const auto& b : blocks) {
    m.set_block(at, 0, b);
    at += b.rows();
  }
  return m;
}

Mat block_diag(const std::vector<Mat>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Mat m(rows, cols);
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return m;
}

Mat kronecker(const Mat& a, const Mat& b) {
  Mat k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

RrefResult rref(const Mat& m) {
  RrefResult out{m, {}};
  Mat& a = out.reduced;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t row = 0;
  Rational factor;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t pivot = row;
    while (pivot < rows && sgn(a(pivot, c)) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != row)
      for (std::size_t k = c; k < cols; ++k) swap(a(pivot, k), a(row, k));
    const Rational inv = 1 / a(row, c);
    for (std::size_t k = c; k < cols; ++k) a(row, k) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || sgn(a(r, c)) == 0) continue;
      factor = a(r, c);
      for (std::size_t k = c; k < cols; ++k) {
        if (sgn(a(row, k)) != 0) a(r, k) -= factor * a(row, k);
      }
    }
    out.pivots.push_back(c);
    ++row;
  }
  return out;
}

std::size_t rank(const Mat& m) { return rref(m).pivots.size(); }

Mat kernel_basis(const Mat& m) {
  const auto [r, pivots] = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  Mat k(n, n - pivots.size());
  std::size_t col = 0;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    k(f, col) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) k(pivots[i], col) = -r(i, f);
    ++col;
  }
  return k;
}

Mat column_space_basis(const Mat& m) {
  const auto pivots = rref(m).pivots;
  Mat b(m.rows(), pivots.size());
  for (std::size_t j = 0; j < pivots.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) b(i, j) = m(i, pivots[j]);
  return b;
}

std::optional<Mat> solve(const Mat& m, const Mat& rhs) {
  if (m.rows() != rhs.rows()) throw InternalError("solve: row counts differ");
  const std::size_t n = m.cols();
  const auto [r, pivots] = rref(hstack(m, rhs));
  if (!pivots.empty() && pivots.back() >= n) return std::nullopt;
  Mat x(n, rhs.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < rhs.cols(); ++j) x(pivots[i], j) = r(i, n + j);
  return x;
}

std::optional<Mat> inverse(const Mat& m) {
  if (!m.is_square() || rank(m) != m.rows()) return std::nullopt;
  return solve(m, Mat::identity(m.rows()));
}

Quotient quotient(std::size_t ambient, const Mat& subspace) {
  if (subspace.rows() != ambient) throw InternalError("quotient: subspace lives in the wrong ambient space");
  // Rows of rref(S^T) span the subspace, with a unit in each pivot coordinate.
  // Subtracting v[p_i] * row_i clears the pivot coordinates of v, which is the
  // projection along the subspace onto the remaining coordinates.
  const auto [r, pivots] = rref(subspace.transpose());
  std::vector<bool> is_pivot(ambient, false);
  for (auto p : pivots) is_pivot[p] = true;
  Quotient q;
  q.dim = ambient - pivots.size();
  q.projection = Mat(q.dim, ambient);
  q.section = Mat(ambient, q.dim);
  std::size_t k = 0;
  for (std::size_t c = 0; c < ambient; ++c) {
    if (is_pivot[c]) continue;
    q.projection(k, c) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) q.projection(k, pivots[i]) = -r(i, c);
    q.section(c, k) = 1;
    ++k;
  }
  return q;
}

bool contained_in(const Mat& sub, const Mat& space) {
  if (sub.cols() == 0) return true;
  return rank(hstack(space, sub)) == rank(space);
}

bool same_span(const Mat& a, const Mat& b) {
  const std::size_t ra = rank(a);
  return ra == rank(b) && rank(hstack(a, b)) == ra;
}

}  // namespace rectilt
