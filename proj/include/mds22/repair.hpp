#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "mds22/code.hpp"

namespace mds22 {

/// Rank and nonzero-column count of M H_j for every node j (index j-1).
struct RepairFootprint {
  std::vector<std::uint8_t> rank;
  std::vector<std::uint8_t> nz;
  std::size_t total_rank = 0;
  std::size_t total_nz = 0;
  std::size_t touched = 0;  // nodes with M H_j != 0
};

RepairFootprint repair_footprint(const CodeSpec& code, const Mat& m);

struct RepairStats {
  std::size_t bandwidth = 0;  // sum over helpers of rank(M H_j)
  std::size_t io = 0;         // sum over helpers of nz(M H_j)
  std::size_t degree = 0;     // helpers with M H_j != 0
  std::vector<std::size_t> repairable_set;  // R(M): rank(M H_j) = 2
  std::vector<std::size_t> nz_set;          // N(M): nz(M H_j) = 2

  friend bool operator==(const RepairStats&, const RepairStats&) = default;
};

RepairStats repair_stats(const CodeSpec& code, const Mat& m, std::size_t failed);

/// M H_j = left * right for one helper; `combine` = -(M H_i)^{-1} * left maps
/// the helper's payload into the repaired column. Empty factors when
/// M H_j = 0.
struct HelperFactors {
  std::size_t node;
  Mat left;
  Mat right;
  Mat combine;

  std::size_t payload_length() const noexcept { return right.rows(); }
};

class RepairPlan {
 public:
  std::size_t failed() const noexcept { return failed_; }
  const Mat& m() const noexcept { return m_; }
  const Mat& inv_mhi() const noexcept { return inv_mhi_; }
  const RepairStats& stats() const noexcept { return stats_; }
  const FieldPtr& field_ptr() const noexcept { return m_.field_ptr(); }

  /// Every node but the failed one, ascending.
  const std::vector<HelperFactors>& helpers() const noexcept { return helpers_; }
  const HelperFactors& helper(std::size_t node) const;
  /// Helpers that actually send something (M H_j != 0), ascending.
  const std::vector<std::size_t>& contacted() const noexcept { return contacted_; }
  /// Positions (0 = top, 1 = bottom) of C_j that must be read to build the
  /// payload, i.e. the nonzero columns of R_j.
  std::vector<std::size_t> read_positions(std::size_t node) const;

 private:
  friend RepairPlan plan_repair(const CodeSpec&, const Mat&, std::size_t);
  RepairPlan(std::size_t failed, Mat m, Mat inv_mhi)
      : failed_(failed), m_(std::move(m)), inv_mhi_(std::move(inv_mhi)) {}

  std::size_t failed_;
  Mat m_;
  Mat inv_mhi_;
  std::vector<HelperFactors> helpers_;
  std::vector<std::size_t> contacted_;
  RepairStats stats_;
};

/// Requires rank(M H_failed) = 2.
RepairPlan plan_repair(const CodeSpec& code, const Mat& m, std::size_t failed);

/// R_j C_j, one symbol per rank of M H_j.
std::vector<Symbol> helper_payload(const RepairPlan& plan, std::size_t node, const Mat& column);
/// Raw-symbol variant: `column` holds (top, bottom); writes the payload into
/// `out` and returns its length. Only the read positions of `column` are used.
std::size_t helper_payload(const RepairPlan& plan, std::size_t node, std::span<const Symbol> column,
                           std::span<Symbol> out);

/// -(M H_i)^{-1} * sum_j L_j payload_j.
Mat execute_repair(const RepairPlan& plan, const std::map<std::size_t, std::vector<Symbol>>& payloads);
/// Raw-symbol variant: payloads concatenated in `plan.contacted()` order.
void execute_repair(const RepairPlan& plan, std::span<const Symbol> payloads, std::span<Symbol> out);

/// |{j : M H_j != 0}| - 1.
std::size_t repair_degree(const CodeSpec& code, const Mat& m);

}  // namespace mds22
