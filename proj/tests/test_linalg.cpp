#include <gtest/gtest.h>

#include <optional>
#include <random>

#include "mds22/error.hpp"
#include "mds22/linalg.hpp"
#include "support.hpp"

using namespace mds22;
using mds22::testing::leibniz_det;
using mds22::testing::minor_rank_2xn;
using mds22::testing::random_mat;

TEST(Linalg, IdentityAndProducts) {
  const auto f = Field::prime(7);
  const Mat a = Mat::from_rows(f, {{1, 2}, {3, 4}});
  EXPECT_EQ(Mat::identity(f, 2) * a, a);
  EXPECT_EQ(a * Mat::identity(f, 2), a);
  EXPECT_EQ(a * a, Mat::from_rows(f, {{0, 3}, {1, 1}}));
  EXPECT_EQ(a + negate(a), Mat(f, 2, 2));
  EXPECT_EQ(scale(a, 2), Mat::from_rows(f, {{2, 4}, {6, 1}}));
  EXPECT_EQ(Mat::lambda_vector(f, 5), Mat::from_rows(f, {{1}, {5}}));
}

TEST(Linalg, InverseMatchesDeterminant) {
  std::mt19937_64 rng(11);
  for (const auto& f : {Field::prime(2), Field::prime(5), Field::prime(13), Field::binary(4), Field::binary(8)}) {
    for (int t = 0; t < 400; ++t) {
      const Mat a = random_mat(f, 4, 4, rng);
      const bool invertible = leibniz_det(a) != 0;
      EXPECT_EQ(rank(a) == 4, invertible);
      if (invertible) {
        const Mat inv = inverse(a);
        ASSERT_EQ(a * inv, Mat::identity(f, 4));
        ASSERT_EQ(inv * a, Mat::identity(f, 4));
      } else {
        EXPECT_THROW(inverse(a), Error);
      }
    }
  }
}

TEST(Linalg, RankOfTwoRowMatrices) {
  std::mt19937_64 rng(3);
  for (const auto& f : {Field::prime(3), Field::prime(11), Field::binary(3)})
    for (int t = 0; t < 2000; ++t) {
      const Mat a = random_mat(f, 2, 1 + t % 4, rng);
      ASSERT_EQ(rank(a), minor_rank_2xn(a));
    }
}

TEST(Linalg, RankIsTransposeInvariantAndBounded) {
  std::mt19937_64 rng(5);
  const auto f = Field::prime(5);
  for (int t = 0; t < 500; ++t) {
    const Mat a = random_mat(f, 3, 5, rng);
    Mat at(f, 5, 3);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 5; ++c) at(c, r) = a(r, c);
    ASSERT_EQ(rank(a), rank(at));
    ASSERT_LE(rank(a), 3u);
  }
}

TEST(Linalg, SolveRecoversX) {
  std::mt19937_64 rng(9);
  const auto f = Field::binary(8);
  for (int t = 0; t < 200; ++t) {
    const Mat a = random_mat(f, 4, 4, rng);
    if (leibniz_det(a) == 0) continue;
    const Mat x = random_mat(f, 4, 2, rng);
    ASSERT_EQ(solve(a, a * x), x);
  }
}

TEST(Linalg, RrefAndColumnFactorization) {
  const auto f = Field::prime(7);
  const Mat a = Mat::from_rows(f, {{2, 4, 1}, {1, 2, 5}});
  const auto e = rref(a);
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(e.form, Mat::from_rows(f, {{1, 2, 0}, {0, 0, 1}}));

  std::mt19937_64 rng(17);
  for (int t = 0; t < 2000; ++t) {
    Mat m = random_mat(f, 2, 2, rng);
    if (t % 3 == 0) m(1, 0) = m(1, 1) = 0;
    if (t % 7 == 0) m = Mat(f, 2, 2);
    const auto [left, right] = column_factorize(m);
    ASSERT_EQ(left.cols(), rank(m));
    ASSERT_EQ(right.rows(), rank(m));
    if (rank(m) > 0) {
      ASSERT_EQ(left * right, m);
    }
    ASSERT_EQ(rank(right), rank(m));
    ASSERT_EQ(nonzero_columns(right), nonzero_columns(m));
  }
}

TEST(Linalg, RankEqualsPivotCount) {
  std::mt19937_64 rng(19);
  const auto f = Field::prime(3);
  for (int t = 0; t < 1000; ++t) {
    const Mat a = random_mat(f, 3, 4, rng);
    const auto e = rref(a);
    ASSERT_EQ(rank(a), e.pivots.size());
    ASSERT_EQ(rank(e.form), e.pivots.size());
  }
}

TEST(Linalg, RowSpaceCanonicalUnderInvertibleLeftFactor) {
  std::mt19937_64 rng(23);
  for (const auto& f : {Field::prime(2), Field::prime(7), Field::binary(4)}) {
    for (int t = 0; t < 2000; ++t) {
      const Mat m = random_mat(f, 2, 4, rng);
      const Mat lam = random_mat(f, 2, 2, rng);
      if (leibniz_det(lam) == 0) continue;
      ASSERT_EQ(rref(lam * m).form, rref(m).form);
    }
  }
}

TEST(Linalg, NonzeroColumnsAndStacking) {
  const auto f = Field::prime(5);
  const Mat a = Mat::from_rows(f, {{0, 1, 0}, {0, 3, 2}});
  EXPECT_EQ(nonzero_columns(a), 2u);
  const Mat b = Mat::from_rows(f, {{4}, {4}});
  EXPECT_EQ(hstack(a, b), Mat::from_rows(f, {{0, 1, 0, 4}, {0, 3, 2, 4}}));
  EXPECT_EQ(vstack(a, a).rows(), 4u);
  EXPECT_EQ(block({{b, b}, {b, b}}), Mat::from_rows(f, {{4, 4}, {4, 4}, {4, 4}, {4, 4}}));
  EXPECT_EQ(a.select_columns(std::vector<std::size_t>{2, 1}), Mat::from_rows(f, {{0, 1}, {2, 3}}));
}

TEST(Linalg, Errors) {
  const auto f = Field::prime(5);
  const auto g = Field::prime(7);
  auto code_of = [](auto&& fn) -> std::optional<Errc> {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return std::nullopt;
  };
  EXPECT_EQ(code_of([&] { (void)(Mat(f, 2, 3) * Mat(f, 2, 3)); }), Errc::dimension_mismatch);
  EXPECT_EQ(code_of([&] { (void)(Mat(f, 2, 2) * Mat(g, 2, 2)); }), Errc::field_mismatch);
  EXPECT_EQ(code_of([&] { inverse(Mat(f, 2, 3)); }), Errc::not_square);
  EXPECT_EQ(code_of([&] { inverse(Mat(f, 2, 2)); }), Errc::singular);
  EXPECT_EQ(code_of([&] { solve(Mat(f, 2, 2), Mat(f, 2, 1)); }), Errc::singular);
  EXPECT_EQ(code_of([&] { Mat(f, 1, 1, {5}); }), Errc::bad_argument);
}
