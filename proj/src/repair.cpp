#include "mds22/repair.hpp"

#include "mds22/error.hpp"

namespace mds22 {

namespace {

void require_repair_shape(const CodeSpec& code, const Mat& m) {
  if (m.rows() != 2 || m.cols() != 4) throw Error(Errc::dimension_mismatch, "repair matrix must be 2x4");
  if (!m.field().same_as(code.field())) throw Error(Errc::field_mismatch, "repair matrix over another field");
}

}  // namespace

RepairFootprint repair_footprint(const CodeSpec& code, const Mat& m) {
  require_repair_shape(code, m);
  RepairFootprint fp;
  fp.rank.resize(code.n());
  fp.nz.resize(code.n());
  for (std::size_t j = 1; j <= code.n(); ++j) {
    const Mat mh = m * code.h(j);
    fp.rank[j - 1] = static_cast<std::uint8_t>(rank(mh));
    fp.nz[j - 1] = static_cast<std::uint8_t>(nonzero_columns(mh));
    fp.total_rank += fp.rank[j - 1];
    fp.total_nz += fp.nz[j - 1];
    if (fp.nz[j - 1] != 0) ++fp.touched;
  }
  return fp;
}

RepairStats repair_stats(const CodeSpec& code, const Mat& m, std::size_t failed) {
  if (failed < 1 || failed > code.n()) throw Error(Errc::bad_argument, "failed index out of range");
  const auto fp = repair_footprint(code, m);
  if (fp.rank[failed - 1] != 2) throw Error(Errc::not_a_repair_matrix, "rank(M H_i) < 2");
  RepairStats s;
  s.bandwidth = fp.total_rank - 2;
  s.io = fp.total_nz - 2;
  s.degree = fp.touched - 1;
  for (std::size_t j = 1; j <= code.n(); ++j) {
    if (fp.rank[j - 1] == 2) s.repairable_set.push_back(j);
    if (fp.nz[j - 1] == 2) s.nz_set.push_back(j);
  }
  return s;
}

const HelperFactors& RepairPlan::helper(std::size_t node) const {
  for (const auto& h : helpers_)
    if (h.node == node) return h;
  throw Error(Errc::bad_helper_index, "node " + std::to_string(node) + " is not a helper");
}

std::vector<std::size_t> RepairPlan::read_positions(std::size_t node) const {
  const Mat& r = helper(node).right;
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < r.cols(); ++c) {
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (r(i, c) != 0) {
        out.push_back(c);
        break;
      }
    }
  }
  return out;
}

RepairPlan plan_repair(const CodeSpec& code, const Mat& m, std::size_t failed) {
  require_repair_shape(code, m);
  if (failed < 1 || failed > code.n()) throw Error(Errc::bad_argument, "failed index out of range");
  const Mat mhi = m * code.h(failed);
  if (rank(mhi) != 2)
    throw Error(Errc::not_a_repair_matrix, "M does not repair node " + std::to_string(failed));

  RepairPlan plan(failed, m, inverse(mhi));
  const Mat neg_inv = negate(plan.inv_mhi_);
  for (std::size_t j = 1; j <= code.n(); ++j) {
    if (j == failed) continue;
    auto [left, right] = column_factorize(m * code.h(j));
    Mat combine = left.cols() == 0 ? Mat(code.field_ptr(), 2, 0) : neg_inv * left;
    if (right.rows() != 0) plan.contacted_.push_back(j);
    plan.helpers_.push_back({j, std::move(left), std::move(right), std::move(combine)});
  }
  plan.stats_ = repair_stats(code, m, failed);
  return plan;
}

std::vector<Symbol> helper_payload(const RepairPlan& plan, std::size_t node, const Mat& column) {
  if (column.rows() != 2 || column.cols() != 1) throw Error(Errc::dimension_mismatch, "node column must be 2x1");
  const Symbol raw[] = {column(0, 0), column(1, 0)};
  std::vector<Symbol> out(2);
  out.resize(helper_payload(plan, node, raw, out));
  return out;
}

std::size_t helper_payload(const RepairPlan& plan, std::size_t node, std::span<const Symbol> column,
                           std::span<Symbol> out) {
  if (node == plan.failed()) throw Error(Errc::bad_helper_index, "the failed node is not a helper");
  const HelperFactors& h = plan.helper(node);
  if (column.size() != 2) throw Error(Errc::dimension_mismatch, "node column must hold 2 symbols");
  const std::size_t len = h.payload_length();
  if (out.size() < len) throw Error(Errc::dimension_mismatch, "payload buffer too small");
  const Field& f = h.right.field();
  for (std::size_t r = 0; r < len; ++r) {
    Symbol acc = 0;
    for (std::size_t c = 0; c < 2; ++c)
      if (h.right(r, c) != 0) acc = f.add(acc, f.mul(h.right(r, c), column[c]));
    out[r] = acc;
  }
  return len;
}

Mat execute_repair(const RepairPlan& plan, const std::map<std::size_t, std::vector<Symbol>>& payloads) {
  std::vector<Symbol> flat;
  for (auto j : plan.contacted()) {
    auto it = payloads.find(j);
    if (it == payloads.end()) throw Error(Errc::missing_payload, "no payload from node " + std::to_string(j));
    if (it->second.size() != plan.helper(j).payload_length())
      throw Error(Errc::bad_argument, "payload from node " + std::to_string(j) + " has the wrong length");
    flat.insert(flat.end(), it->second.begin(), it->second.end());
  }
  std::vector<Symbol> out(2);
  execute_repair(plan, flat, out);
  return Mat(plan.field_ptr(), 2, 1, std::move(out));
}

void execute_repair(const RepairPlan& plan, std::span<const Symbol> payloads, std::span<Symbol> out) {
  if (out.size() != 2) throw Error(Errc::dimension_mismatch, "repaired column holds 2 symbols");
  const Field& f = *plan.field_ptr();
  Symbol top = 0, bottom = 0;
  std::size_t offset = 0;
  for (auto j : plan.contacted()) {
    const HelperFactors& h = plan.helper(j);
    const std::size_t len = h.payload_length();
    if (offset + len > payloads.size()) throw Error(Errc::missing_payload, "payload stream ends early");
    for (std::size_t t = 0; t < len; ++t) {
      const Symbol v = payloads[offset + t];
      top = f.add(top, f.mul(h.combine(0, t), v));
      bottom = f.add(bottom, f.mul(h.combine(1, t), v));
    }
    offset += len;
  }
  if (offset != payloads.size()) throw Error(Errc::bad_argument, "unconsumed payload symbols");
  out[0] = top;
  out[1] = bottom;
}

std::size_t repair_degree(const CodeSpec& code, const Mat& m) {
  require_repair_shape(code, m);
  if (m.is_zero()) throw Error(Errc::zero_matrix, "repair degree of the zero matrix");
  std::size_t touched = 0;
  for (std::size_t j = 1; j <= code.n(); ++j)
    if (!(m * code.h(j)).is_zero()) ++touched;
  // Only reachable on non-MDS codes, where M can annihilate every block.
  if (touched == 0) throw Error(Errc::not_mds, "M H_j = 0 for every node");
  return touched - 1;
}

}  // namespace mds22
