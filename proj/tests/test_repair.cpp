#include <gtest/gtest.h>

#include <optional>
#include <random>

#include "mds22/constructions.hpp"
#include "mds22/error.hpp"
#include "mds22/repair.hpp"
#include "support.hpp"

using namespace mds22;
using mds22::testing::count_nonzero_columns;
using mds22::testing::leibniz_det;
using mds22::testing::random_mat;

namespace {

Stripe random_stripe(const CodeSpec& code, std::mt19937_64& rng) {
  std::uniform_int_distribution<Symbol> d(0, code.field().order() - 1);
  std::vector<Symbol> data(2 * code.k());
  for (auto& v : data) v = d(rng);
  return encode(code, data);
}

Mat repair_with(const RepairPlan& plan, const Stripe& s) {
  std::map<std::size_t, std::vector<Symbol>> payloads;
  for (auto j : plan.contacted()) payloads[j] = helper_payload(plan, j, s.column(j));
  return execute_repair(plan, payloads);
}

std::optional<Errc> code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST(Repair, DesignedMatricesRebuildEveryNode) {
  std::mt19937_64 rng(1);
  for (std::size_t k = 2; k <= 12; ++k)
    for (auto c : {Construction::c1, Construction::c2}) {
      const auto code = build_code(c, k, default_field(c, k));
      for (int t = 0; t < 10; ++t) {
        const Stripe s = random_stripe(code, rng);
        for (std::size_t i = 1; i <= code.n(); ++i) {
          const auto plan = plan_repair(code, code.designed_repair(i), i);
          ASSERT_EQ(repair_with(plan, s), s.column(i)) << to_string(c) << " k=" << k << " node " << i;
        }
      }
    }
}

TEST(Repair, DesignedCostsFollowGroupSizes) {
  for (std::size_t k = 2; k <= 32; ++k) {
    const auto c1 = build_c1(k, default_field(Construction::c1, k));
    const auto g1 = group_partition(c1.n(), kC1Groups);
    const auto c2 = build_c2(k, default_field(Construction::c2, k));
    const auto g2 = group_partition(c2.n(), kC2Groups);
    for (std::size_t i = 1; i <= k + 2; ++i) {
      EXPECT_EQ(repair_stats(c1, c1.designed_repair(i), i).bandwidth, k + g1.size_of_group_containing(i));
      EXPECT_EQ(repair_stats(c2, c2.designed_repair(i), i).io, k + g2.size_of_group_containing(i));
    }
  }
}

TEST(Repair, StatedExamples) {
  const auto c1 = build_c1(4, Field::binary(8));
  EXPECT_EQ(repair_stats(c1, c1.designed_repair(5), 5).bandwidth, 5u);
  EXPECT_EQ(repair_stats(c1, c1.designed_repair(1), 1).bandwidth, 6u);
  EXPECT_EQ(repair_stats(c1, c1.designed_repair(6), 6).bandwidth, 5u);
  const auto c2 = build_c2(6, Field::binary(8));
  EXPECT_EQ(repair_stats(c2, c2.designed_repair(7), 7).io, 8u);
}

TEST(Repair, DesignedStatsOverSmallFields) {
  const auto c1 = build_c1(4, Field::prime(13));
  const std::vector<std::size_t> bw = {6, 6, 6, 6, 5, 5}, io = {6, 6, 6, 6, 6, 10};
  for (std::size_t i = 1; i <= 6; ++i) {
    const auto s = repair_stats(c1, c1.designed_repair(i), i);
    EXPECT_EQ(s.bandwidth, bw[i - 1]) << i;
    EXPECT_EQ(s.io, io[i - 1]) << i;
    EXPECT_EQ(s.degree, 5u);
  }
  const auto c2 = build_c2(2, Field::prime(5));
  const std::vector<std::size_t> c2_cost = {4, 4, 3, 3};
  for (std::size_t i = 1; i <= 4; ++i) {
    const auto s = repair_stats(c2, c2.designed_repair(i), i);
    EXPECT_EQ(s.bandwidth, c2_cost[i - 1]);
    EXPECT_EQ(s.io, c2_cost[i - 1]);
  }
}

TEST(Repair, AccountingMatchesPayloads) {
  std::mt19937_64 rng(2);
  for (const auto& code : {build_c1(6, Field::binary(8)), build_c2(5, Field::prime(11))}) {
    for (int t = 0; t < 300; ++t) {
      const std::size_t i = 1 + t % code.n();
      Mat m = random_mat(code.field_ptr(), 2, 4, rng);
      if (t % 2 == 0) m = code.designed_repair(i);
      if (rank(m * code.h(i)) != 2) continue;
      const auto plan = plan_repair(code, m, i);
      std::size_t sent = 0, read = 0;
      for (const auto& h : plan.helpers()) {
        sent += h.payload_length();
        read += count_nonzero_columns(h.right);
      }
      EXPECT_EQ(plan.stats().bandwidth, sent);
      EXPECT_EQ(plan.stats().io, read);
      EXPECT_EQ(plan.stats().degree, plan.contacted().size());
    }
  }
}

TEST(Repair, LeftFactorDoesNotChangeRepair) {
  std::mt19937_64 rng(3);
  for (const auto& code : {build_c1(5, Field::prime(11)), build_c2(7, Field::binary(8))}) {
    for (int t = 0; t < 300; ++t) {
      const std::size_t i = 1 + t % code.n();
      const Mat m = t % 3 ? random_mat(code.field_ptr(), 2, 4, rng) : code.designed_repair(i);
      const Mat lam = random_mat(code.field_ptr(), 2, 2, rng);
      if (leibniz_det(lam) == 0 || rank(m * code.h(i)) != 2) continue;
      const auto a = plan_repair(code, m, i);
      const auto b = plan_repair(code, lam * m, i);
      ASSERT_EQ(a.stats(), b.stats());
      const Stripe s = random_stripe(code, rng);
      ASSERT_EQ(repair_with(a, s), s.column(i));
      ASSERT_EQ(repair_with(b, s), s.column(i));
    }
  }
}

TEST(Repair, RandomMatricesRepairExactly) {
  std::mt19937_64 rng(4);
  const auto code = build_c2(8, Field::binary(8));
  int checked = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t i = 1 + t % code.n();
    const Mat m = random_mat(code.field_ptr(), 2, 4, rng);
    if (rank(m * code.h(i)) != 2) continue;
    const auto plan = plan_repair(code, m, i);
    const Stripe s = random_stripe(code, rng);
    ASSERT_EQ(repair_with(plan, s), s.column(i));
    ++checked;
  }
  EXPECT_GT(checked, 400);
}

TEST(Repair, DegreeAtLeastK) {
  std::mt19937_64 rng(5);
  std::vector<CodeSpec> codes = {build_c1(2, Field::prime(11)), build_c1(4, Field::prime(13)),
                                 build_c2(2, Field::prime(5)), build_c2(4, Field::prime(7))};
  codes.push_back(random_mds_code(3, Field::prime(3), rng));
  for (const auto& code : codes)
    for (int t = 0; t < 10000; ++t) {
      const Mat m = random_mat(code.field_ptr(), 2, 4, rng);
      if (m.is_zero()) continue;
      ASSERT_GE(repair_degree(code, m), code.k());
    }
}

TEST(Repair, ReadPositionsAreContiguousOrSingle) {
  const auto code = build_c2(6, Field::binary(8));
  for (std::size_t i = 1; i <= code.n(); ++i) {
    const auto plan = plan_repair(code, code.designed_repair(i), i);
    for (auto j : plan.contacted()) {
      const auto pos = plan.read_positions(j);
      const std::size_t nz = nonzero_columns(code.designed_repair(i) * code.h(j));
      ASSERT_EQ(pos.size(), nz);
      if (nz == 2) {
        EXPECT_EQ(pos, (std::vector<std::size_t>{0, 1}));
      }
    }
  }
}

TEST(Repair, RawPayloadPath) {
  std::mt19937_64 rng(6);
  const auto code = build_c1(4, Field::binary(8));
  const Stripe s = random_stripe(code, rng);
  const auto plan = plan_repair(code, code.designed_repair(2), 2);
  std::vector<Symbol> stream;
  for (auto j : plan.contacted()) {
    const Symbol col[] = {s.column(j)(0, 0), s.column(j)(1, 0)};
    Symbol buf[2];
    const std::size_t len = helper_payload(plan, j, col, buf);
    stream.insert(stream.end(), buf, buf + len);
  }
  EXPECT_EQ(stream.size(), plan.stats().bandwidth);
  Symbol out[2];
  execute_repair(plan, stream, out);
  EXPECT_EQ(out[0], s.column(2)(0, 0));
  EXPECT_EQ(out[1], s.column(2)(1, 0));
}

TEST(Repair, Errors) {
  const auto code = build_c1(4, Field::prime(13));
  const auto f = code.field_ptr();
  const Mat top = Mat::from_rows(f, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  EXPECT_EQ(code_of([&] { plan_repair(code, top, 5); }), Errc::not_a_repair_matrix);
  EXPECT_EQ(code_of([&] { plan_repair(code, Mat(f, 3, 4), 1); }), Errc::dimension_mismatch);
  EXPECT_EQ(code_of([&] { plan_repair(code, Mat(Field::prime(7), 2, 4), 1); }), Errc::field_mismatch);
  EXPECT_EQ(code_of([&] { repair_degree(code, Mat(f, 2, 4)); }), Errc::zero_matrix);
  const auto plan = plan_repair(code, top, 1);
  EXPECT_EQ(code_of([&] { plan.helper(1); }), Errc::bad_helper_index);
  EXPECT_EQ(code_of([&] { helper_payload(plan, 1, Mat(f, 2, 1)); }), Errc::bad_helper_index);
  EXPECT_EQ(code_of([&] { execute_repair(plan, std::map<std::size_t, std::vector<Symbol>>{}); }),
            Errc::missing_payload);
}
