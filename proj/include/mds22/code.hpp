#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mds22/gf.hpp"
#include "mds22/linalg.hpp"

namespace mds22 {

enum class Construction { custom = 0, c1 = 1, c2 = 2 };

std::string to_string(Construction c);
Construction parse_construction(std::string_view name);

/// An (n = k+2, k, 2) array code given by parity-check blocks:
///
///   H_1 C_1 + H_2 C_2 + ... + H_n C_n = 0
///
/// where every H_i is 4x2 and every node column C_i is 2x1. Node indices in
/// this API are 1-based.
class CodeSpec {
 public:
  CodeSpec(FieldPtr field, std::vector<Mat> h_blocks,
           std::optional<std::vector<Mat>> designed_repair = std::nullopt,
           Construction construction = Construction::custom);

  std::size_t n() const noexcept { return h_blocks_.size(); }
  std::size_t k() const noexcept { return h_blocks_.size() - 2; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  const Field& field() const noexcept { return *field_; }
  Construction construction() const noexcept { return construction_; }

  const Mat& h(std::size_t node) const;
  const std::vector<Mat>& h_blocks() const noexcept { return h_blocks_; }
  bool has_designed_repair() const noexcept { return designed_.has_value(); }
  const Mat& designed_repair(std::size_t node) const;

 private:
  FieldPtr field_;
  std::vector<Mat> h_blocks_;
  std::optional<std::vector<Mat>> designed_;
  Construction construction_;
};

struct MdsCheck {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> failing_pair;
  explicit operator bool() const noexcept { return ok; }
};

/// True iff [H_i H_j] is invertible for every pair i < j.
MdsCheck mds_check(const CodeSpec& code);

/// One codeword: n node columns (2x1 each). Erased columns are kept as zero
/// placeholders and listed in `erased`.
struct Stripe {
  std::vector<Mat> columns;
  std::set<std::size_t> erased;

  const Mat& column(std::size_t node) const { return columns.at(node - 1); }
};

/// Linear map from surviving node symbols to the symbols of up to two erased
/// nodes. Built once per erasure pattern, then applied to raw symbol spans.
class ErasureDecoder {
 public:
  ErasureDecoder(const CodeSpec& code, std::vector<std::size_t> erased);

  const std::vector<std::size_t>& erased() const noexcept { return erased_; }
  const std::vector<std::size_t>& survivors() const noexcept { return survivors_; }
  /// `in` holds 2 symbols per survivor in survivor order; `out` receives 2
  /// symbols per erased node in erased order.
  void apply(std::span<const Symbol> in, std::span<Symbol> out) const;

 private:
  FieldPtr field_;
  std::vector<std::size_t> erased_;
  std::vector<std::size_t> survivors_;
  Mat coeffs_;
};

/// Places data on nodes 1..k (node i gets symbols 2(i-1), 2(i-1)+1) and
/// solves the last two columns from the parity-check equations.
Stripe encode(const CodeSpec& code, std::span<const Symbol> data);
bool verify_stripe(const CodeSpec& code, const Stripe& stripe);
Stripe decode_erasures(const CodeSpec& code, Stripe stripe);

}  // namespace mds22
