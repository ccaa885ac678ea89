#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "mds22/gf.hpp"

namespace mds22 {

/// Small dense row-major matrix over a finite field. Value type; every
/// operation returns a fresh matrix. Zero-sized dimensions are allowed
/// (e.g. the empty factors of a zero matrix).
class Mat {
 public:
  Mat(FieldPtr field, std::size_t rows, std::size_t cols);
  Mat(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Symbol> entries);

  static Mat identity(FieldPtr field, std::size_t n);
  static Mat from_rows(FieldPtr field, std::initializer_list<std::initializer_list<Symbol>> rows);
  /// 2x1 column [1, lambda]^T.
  static Mat lambda_vector(FieldPtr field, Symbol lambda);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  const Field& field() const noexcept { return *field_; }

  Symbol operator()(std::size_t r, std::size_t c) const noexcept { return entries_[r * cols_ + c]; }
  Symbol& operator()(std::size_t r, std::size_t c) noexcept { return entries_[r * cols_ + c]; }
  std::span<const Symbol> entries() const noexcept { return entries_; }

  bool is_zero() const noexcept;
  bool is_square() const noexcept { return rows_ == cols_; }
  Mat row(std::size_t r) const;
  Mat column(std::size_t c) const;
  Mat select_rows(std::span<const std::size_t> rows) const;
  Mat select_columns(std::span<const std::size_t> cols) const;

  friend bool operator==(const Mat& a, const Mat& b) noexcept;

 private:
  FieldPtr field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Symbol> entries_;
};

bool same_field(const Mat& a, const Mat& b) noexcept;

Mat mat_mul(const Mat& a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
Mat operator+(const Mat& a, const Mat& b);
Mat negate(const Mat& a);
Mat scale(const Mat& a, Symbol s);

std::size_t rank(const Mat& a);
std::size_t nonzero_columns(const Mat& a);
Mat inverse(const Mat& a);

struct RowEchelon {
  Mat form;
  std::vector<std::size_t> pivots;
};
/// Reduced row-echelon form: pivots scaled to 1 and cleared above and below.
/// Two matrices share a row space iff their RREFs (zero rows included) match.
RowEchelon rref(const Mat& a);

struct ColumnFactors {
  Mat left;   // rows x r, leftmost maximal independent columns of a
  Mat right;  // r x cols, left * right == a
};
ColumnFactors column_factorize(const Mat& a);

/// x with a * x == b; a must be square and invertible.
Mat solve(const Mat& a, const Mat& b);

Mat hstack(std::span<const Mat> parts);
Mat hstack(const Mat& a, const Mat& b);
Mat vstack(std::span<const Mat> parts);
Mat vstack(const Mat& a, const Mat& b);
/// Block matrix from a grid of parts; rows of the grid must agree in height
/// and columns in width.
Mat block(const std::vector<std::vector<Mat>>& grid);

std::string to_string(const Mat& a);

}  // namespace mds22
