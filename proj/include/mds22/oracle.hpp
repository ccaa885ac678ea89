#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mds22/code.hpp"

namespace mds22 {

/// Largest field the exhaustive search accepts.
inline constexpr std::uint32_t kOracleMaxOrder = 16;

/// Exact non-negative rational, always reduced with den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of(std::int64_t num, std::int64_t den);
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return a.num * b.den <=> b.num * a.den;
  }
  /// Smallest integer >= this value.
  std::int64_t ceil() const;
  std::string str() const;
};

/// One RREF representative per 2-dimensional subspace of GF(q)^4, i.e.
/// (q^2+1)(q^2+q+1) full-rank 2x4 matrices. Order: pivot-column pairs
/// ascending, then free entries counting up with the last one fastest.
std::vector<Mat> enumerate_row_spaces(const FieldPtr& field);

struct NodeOptimum {
  std::size_t node = 0;
  std::size_t beta = 0;           // min BW over M with rank(M H_i) = 2
  std::size_t gamma = 0;          // min IO over the same set
  std::size_t gamma_relaxed = 0;  // min IO over full-rank M with nz(M H_i) = 2
  Mat witness_bw;
  Mat witness_io;
  std::vector<std::size_t> witness_bw_repairable;  // R(witness_bw)
};

/// Exhaustive per-node minima. `threads` = 0 picks the worker count from
/// MDS22_THREADS or the hardware; the result does not depend on it.
std::vector<NodeOptimum> node_optima(const CodeSpec& code, unsigned threads = 0);

struct BoundsReport {
  std::size_t k = 0;
  std::uint32_t q = 0;
  std::string field;
  Construction construction = Construction::custom;
  std::vector<NodeOptimum> per_node;

  Rational avg_beta;
  std::size_t max_beta = 0;
  Rational avg_gamma;
  std::size_t max_gamma = 0;

  Rational bound_avg_beta;       // 5k/4
  std::size_t bound_max_beta;    // ceil(5k/4)
  Rational bound_avg_gamma;      // (4k+1)/3
  std::size_t bound_max_gamma;   // ceil((4k+1)/3)

  bool avg_beta_ok = false;
  bool max_beta_ok = false;
  bool avg_gamma_ok = false;
  bool max_gamma_ok = false;

  bool all_satisfied() const noexcept { return avg_beta_ok && max_beta_ok && avg_gamma_ok && max_gamma_ok; }
};

BoundsReport bounds_report(const CodeSpec& code, unsigned threads = 0);
nlohmann::json to_json(const BoundsReport& report);

/// Strict total order on index sets: smaller size first, then dictionary
/// order of the ascending element sequences.
bool subset_less(std::span<const std::size_t> s, std::span<const std::size_t> t);

/// First representative M (enumeration order) that repairs node i while
/// contacting all n-1 helpers with IO(M) <= 2k. Throws NotFound otherwise.
Mat full_degree_witness(const CodeSpec& code, std::size_t node);

/// Worker count from MDS22_THREADS (0 or unset = hardware concurrency).
unsigned default_worker_count();

}  // namespace mds22
