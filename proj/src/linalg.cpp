#include "mds22/linalg.hpp"

#include <sstream>
#include <utility>

#include "mds22/error.hpp"

namespace mds22 {

namespace {

void require_same_field(const Mat& a, const Mat& b) {
  if (!same_field(a, b)) throw Error(Errc::field_mismatch, "operands live in different fields");
}

// In-place Gauss-Jordan on m; returns pivot columns.
std::vector<std::size_t> reduce(Mat& m) {
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Symbol s = f.inv(m(r, c));
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), s);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Symbol factor = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Mat::Mat(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, 0) {
  if (!field_) throw Error(Errc::bad_argument, "matrix without a field");
}

Mat::Mat(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Symbol> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (!field_) throw Error(Errc::bad_argument, "matrix without a field");
  if (entries_.size() != rows_ * cols_)
    throw Error(Errc::dimension_mismatch, "entry count differs from rows*cols");
  for (Symbol v : entries_)
    if (!field_->contains(v)) throw Error(Errc::bad_argument, "entry outside the field");
}

Mat Mat::identity(FieldPtr field, std::size_t n) {
  Mat m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(FieldPtr field, std::initializer_list<std::initializer_list<Symbol>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Symbol> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(Errc::dimension_mismatch, "ragged row list");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return Mat(std::move(field), r, c, std::move(entries));
}

Mat Mat::lambda_vector(FieldPtr field, Symbol lambda) {
  return Mat(std::move(field), 2, 1, {1, lambda});
}

bool Mat::is_zero() const noexcept {
  for (Symbol v : entries_)
    if (v != 0) return false;
  return true;
}

Mat Mat::row(std::size_t r) const {
  const std::size_t idx[] = {r};
  return select_rows(idx);
}

Mat Mat::column(std::size_t c) const {
  const std::size_t idx[] = {c};
  return select_columns(idx);
}

Mat Mat::select_rows(std::span<const std::size_t> rows) const {
  Mat out(field_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= rows_) throw Error(Errc::dimension_mismatch, "row index out of range");
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(rows[i], j);
  }
  return out;
}

Mat Mat::select_columns(std::span<const std::size_t> cols) const {
  Mat out(field_, rows_, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= cols_) throw Error(Errc::dimension_mismatch, "column index out of range");
    for (std::size_t i = 0; i < rows_; ++i) out(i, j) = (*this)(i, cols[j]);
  }
  return out;
}

bool operator==(const Mat& a, const Mat& b) noexcept {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && same_field(a, b) && a.entries_ == b.entries_;
}

bool same_field(const Mat& a, const Mat& b) noexcept {
  return a.field_ptr() == b.field_ptr() || a.field().same_as(b.field());
}

Mat mat_mul(const Mat& a, const Mat& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows()) throw Error(Errc::dimension_mismatch, "inner dimensions differ");
  const Field& f = a.field();
  Mat out(a.field_ptr(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t t = 0; t < a.cols(); ++t) {
      const Symbol x = a(i, t);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(x, b(t, j)));
    }
  }
  return out;
}

Mat operator*(const Mat& a, const Mat& b) { return mat_mul(a, b); }

Mat operator+(const Mat& a, const Mat& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(Errc::dimension_mismatch, "sum of differently shaped matrices");
  Mat out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().add(a(i, j), b(i, j));
  return out;
}

Mat negate(const Mat& a) {
  Mat out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().neg(a(i, j));
  return out;
}

Mat scale(const Mat& a, Symbol s) {
  if (!a.field().contains(s)) throw Error(Errc::bad_argument, "scalar outside the field");
  Mat out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().mul(a(i, j), s);
  return out;
}

std::size_t rank(const Mat& a) {
  Mat work = a;
  return reduce(work).size();
}

std::size_t nonzero_columns(const Mat& a) {
  std::size_t count = 0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (a(i, j) != 0) {
        ++count;
        break;
      }
    }
  }
  return count;
}

Mat inverse(const Mat& a) {
  if (!a.is_square()) throw Error(Errc::not_square, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Mat aug = hstack(a, Mat::identity(a.field_ptr(), n));
  const auto pivots = reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1)
    throw Error(Errc::singular, "matrix is singular");
  std::vector<std::size_t> right(n);
  for (std::size_t j = 0; j < n; ++j) right[j] = n + j;
  return aug.select_columns(right);
}

RowEchelon rref(const Mat& a) {
  Mat form = a;
  auto pivots = reduce(form);
  return {std::move(form), std::move(pivots)};
}

ColumnFactors column_factorize(const Mat& a) {
  // RREF pivot columns are the leftmost maximal independent column set, and
  // the nonzero rows of the RREF hold the coefficients that rebuild a.
  auto [form, pivots] = rref(a);
  std::vector<std::size_t> top(pivots.size());
  for (std::size_t i = 0; i < top.size(); ++i) top[i] = i;
  return {a.select_columns(pivots), form.select_rows(top)};
}

Mat solve(const Mat& a, const Mat& b) {
  require_same_field(a, b);
  if (!a.is_square()) throw Error(Errc::not_square, "solve with a non-square system");
  if (a.rows() != b.rows()) throw Error(Errc::dimension_mismatch, "right-hand side height differs");
  const std::size_t n = a.rows();
  Mat aug = hstack(a, b);
  const auto pivots = reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1)
    throw Error(Errc::singular, "system matrix is singular");
  std::vector<std::size_t> right(b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) right[j] = n + j;
  return aug.select_columns(right);
}

Mat hstack(std::span<const Mat> parts) {
  if (parts.empty()) throw Error(Errc::dimension_mismatch, "hstack of nothing");
  std::size_t cols = 0;
  for (const auto& p : parts) {
    require_same_field(parts[0], p);
    if (p.rows() != parts[0].rows()) throw Error(Errc::dimension_mismatch, "hstack row counts differ");
    cols += p.cols();
  }
  Mat out(parts[0].field_ptr(), parts[0].rows(), cols);
  std::size_t offset = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rows(); ++i)
      for (std::size_t j = 0; j < p.cols(); ++j) out(i, offset + j) = p(i, j);
    offset += p.cols();
  }
  return out;
}

Mat hstack(const Mat& a, const Mat& b) {
  const Mat parts[] = {a, b};
  return hstack(parts);
}

Mat vstack(std::span<const Mat> parts) {
  if (parts.empty()) throw Error(Errc::dimension_mismatch, "vstack of nothing");
  std::size_t rows = 0;
  for (const auto& p : parts) {
    require_same_field(parts[0], p);
    if (p.cols() != parts[0].cols()) throw Error(Errc::dimension_mismatch, "vstack column counts differ");
    rows += p.rows();
  }
  Mat out(parts[0].field_ptr(), rows, parts[0].cols());
  std::size_t offset = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rows(); ++i)
      for (std::size_t j = 0; j < p.cols(); ++j) out(offset + i, j) = p(i, j);
    offset += p.rows();
  }
  return out;
}

Mat vstack(const Mat& a, const Mat& b) {
  const Mat parts[] = {a, b};
  return vstack(parts);
}

Mat block(const std::vector<std::vector<Mat>>& grid) {
  std::vector<Mat> bands;
  bands.reserve(grid.size());
  for (const auto& row : grid) bands.push_back(hstack(row));
  return vstack(bands);
}

std::string to_string(const Mat& a) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? ", " : "") << a(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace mds22
