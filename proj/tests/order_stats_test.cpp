#include "recdiv/order_stats.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace recdiv {
namespace {

const IntPoly kTribonacci = IntPoly::from_descending({1, -1, -1, -1});
const IntPoly kTwo = IntPoly({-2, 1});

TEST(RootOrderRow, Examples) {
  auto r7 = root_order_row(kTwo, 7);
  ASSERT_TRUE(r7);
  EXPECT_EQ(r7->root, 2u);
  EXPECT_EQ(r7->order, 3u);
  EXPECT_EQ(r7->index, 2u);
  auto r11 = root_order_row(kTwo, 11);
  ASSERT_TRUE(r11);
  EXPECT_EQ(r11->order, 10u);
  EXPECT_EQ(r11->index, 1u);
  EXPECT_FALSE(root_order_row(kTribonacci, 5));
  EXPECT_FALSE(root_order_row(kTwo, 2));                        // root 0
  EXPECT_FALSE(root_order_row(kTribonacci, 11));                // p | disc
  EXPECT_FALSE(root_order_row(IntPoly({1, 3}), 3));             // p | leading coefficient
}

TEST(RootOrderRow, RowsSatisfyInvariants) {
  for (const IntPoly& poly : {kTribonacci, kTwo, IntPoly::from_descending({1, 0, 0, -2}),
                              IntPoly::from_descending({1, 3, -7, 0, 12, 5})}) {
    for (const OrderRow& row : order_rows(poly, 3000)) {
      ASSERT_EQ(row.order * row.index, row.p - 1);
      ASSERT_EQ(pow_mod(row.root, row.order, row.p), 1u);
      ASSERT_EQ(row.order, oracle::order_naive(row.root, row.p));
      ASSERT_EQ(oracle::eval_mod(poly.coeffs(), row.root, row.p), 0u);
      ASSERT_EQ(oracle::roots_naive(poly.coeffs(), row.p).front(), row.root);
      ASSERT_NE(row.p, 2u);
    }
  }
}

TEST(IndexHistogram, MonotoneAndExhaustive) {
  auto rows = order_rows(kTribonacci, 20000);
  IndexHistogram h = index_histogram(rows, {1, 2, 4, 8, 16, 1'000'000});
  EXPECT_EQ(h.rows, rows.size());
  for (std::size_t i = 1; i < h.points.size(); ++i) {
    EXPECT_GE(h.points[i].count, h.points[i - 1].count);
    EXPECT_GE(h.points[i].density, h.points[i - 1].density);
  }
  EXPECT_EQ(h.points.back().density, 1.0);
  IndexHistogram at_max = index_histogram(rows, {h.max_index});
  EXPECT_EQ(at_max.points.front().density, 1.0);
  if (h.max_index > 1) {
    EXPECT_LT(index_histogram(rows, {h.max_index - 1}).points.front().density, 1.0);
  }
}

TEST(IndexHistogram, CountsMatchRows) {
  auto rows = order_rows(kTwo, 5000);
  IndexHistogram h = index_histogram(rows, {1, 3});
  u64 one = 0, three = 0;
  for (const auto& r : rows) {
    one += r.index <= 1;
    three += r.index <= 3;
  }
  EXPECT_EQ(h.points[0].count, one);
  EXPECT_EQ(h.points[1].count, three);
  EXPECT_DOUBLE_EQ(h.points[0].density, static_cast<double>(one) / rows.size());
}

TEST(IndexHistogram, Errors) {
  EXPECT_THROW(index_histogram(std::vector<OrderRow>{}, {1}), std::domain_error);
  // x^2 + 1 has no root modulo 3, the only odd prime up to 3.
  EXPECT_THROW(index_histogram(IntPoly::from_descending({1, 0, 1}), 3, {1}), std::domain_error);
}

TEST(Artin, Examples) {
  EXPECT_EQ(artin_count(4, 20000).primitive, 0u);
  // -1 is a primitive root only modulo 3.
  ArtinCount neg = artin_count(-1, 20000);
  EXPECT_EQ(neg.primitive, 1u);
  ArtinCount two = artin_count(2, 1000);
  u64 primitive = 0, primes = 0;
  for (u64 p : sieve_primes(1000)) {
    if (p == 2) continue;
    ++primes;
    primitive += oracle::order_naive(2, p) == p - 1;
  }
  EXPECT_EQ(two.primitive, primitive);
  EXPECT_EQ(two.primes, primes);
  EXPECT_DOUBLE_EQ(artin_fraction(2, 1000), static_cast<double>(primitive) / primes);
}

TEST(Artin, EqualsHistogramAtOne) {
  for (i64 a : {2, 3, 5, -3, 6, 10}) {
    ArtinCount count = artin_count(a, 50000);
    IndexHistogram h = index_histogram(IntPoly({-a, 1}), 50000, {1});
    EXPECT_EQ(h.rows, count.primes) << a;
    EXPECT_EQ(h.points.front().count, count.primitive) << a;
    EXPECT_EQ(h.points.front().density, count.fraction()) << a;
  }
}

}  // namespace
}  // namespace recdiv
