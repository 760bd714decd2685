#include <gtest/gtest.h>

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "slidesum/operators.hpp"
#include "slidesum/sequential.hpp"

using namespace slidesum;

namespace {

using U64 = std::uint64_t;
using Span = std::span<const U64>;

template <class Op>
void expect_monoid_laws(const Op& op, std::mt19937_64& rng) {
  for (int i = 0; i < 10000; ++i) {
    const U64 a = rng(), b = rng(), c = rng();
    ASSERT_EQ(op(op(a, b), c), op(a, op(b, c)));
    ASSERT_EQ(op(op.identity(), a), a);
    ASSERT_EQ(op(a, op.identity()), a);
  }
}

}  // namespace

TEST(Operators, MinMaxAddSatisfyMonoidLaws) {
  std::mt19937_64 rng(1);
  expect_monoid_laws(min_op<U64>{}, rng);
  expect_monoid_laws(max_op<U64>{}, rng);
  expect_monoid_laws(wrapping_add_op<U64>{}, rng);
}

TEST(Operators, ConcatIsAssociativeWithEmptyIdentity) {
  std::mt19937_64 rng(2);
  const concat_op op;
  auto frag = [&] {
    const auto len = static_cast<std::uint32_t>(rng() % 11);
    const U64 mask = len == 0 ? 0 : (U64{1} << (2 * len)) - 1;
    return KmerFragment{rng() & mask, len};
  };
  for (int i = 0; i < 10000; ++i) {
    const auto a = frag(), b = frag(), c = frag();
    ASSERT_EQ(op(op(a, b), c), op(a, op(b, c)));
    ASSERT_EQ(op(op.identity(), a), a);
    ASSERT_EQ(op(a, op.identity()), a);
  }
  EXPECT_EQ(op({0b01, 1}, {0b10, 1}), (KmerFragment{0b0110, 2}));
}

TEST(Operators, ConcatIsNotCommutative) {
  const concat_op op;
  EXPECT_NE(op({1, 1}, {2, 1}), op({2, 1}, {1, 1}));
}

TEST(Operators, AdjoinIdentityLeavesValuesAlone) {
  const adjoin_identity<oracle::subtract_op> op{{}};
  EXPECT_EQ(op(std::nullopt, 5), 5);
  EXPECT_EQ(op(5, std::nullopt), 5);
  EXPECT_EQ(op(5, 3), 2);
  EXPECT_FALSE(op.is_associative());
}

TEST(Operators, IdentitiesAreExtremes) {
  EXPECT_EQ(min_op<int>{}.identity(), std::numeric_limits<int>::max());
  EXPECT_EQ(max_op<int>{}.identity(), std::numeric_limits<int>::lowest());
  EXPECT_EQ(max_op<double>{}.identity(), std::numeric_limits<double>::lowest());
}

TEST(WindowSpec, RejectsZero) { EXPECT_THROW(WindowSpec(0), std::invalid_argument); }

TEST(WindowSpec, OutputCount) {
  EXPECT_EQ(WindowSpec(3).output_count(5), 3u);
  EXPECT_EQ(WindowSpec(3).output_count(3), 1u);
  EXPECT_EQ(WindowSpec(3).output_count(2), 0u);
  EXPECT_EQ(WindowSpec(1).output_count(0), 0u);
}

TEST(Sequential, PrefixSumExamples) {
  const std::vector<U64> xs{5, 3, 7, 1};
  EXPECT_EQ(prefix_sum(Span(xs), min_op<U64>{}), (std::vector<U64>{5, 3, 3, 1}));
  EXPECT_TRUE(prefix_sum(Span{}, min_op<U64>{}).empty());
}

TEST(Sequential, SuffixSumExamples) {
  const std::vector<U64> a{1, 2, 3};
  EXPECT_EQ(suffix_sums(Span(a), wrapping_add_op<U64>{}), (std::vector<U64>{6, 5, 3}));
  const std::vector<U64> b{4, 1, 2};
  EXPECT_EQ(suffix_sums(Span(b), min_op<U64>{}), (std::vector<U64>{1, 1, 2}));
}

TEST(Sequential, NaiveExamples) {
  const std::vector<U64> a{1, 3, 2, 5, 4};
  EXPECT_EQ(naive_sliding_sum(Span(a), WindowSpec(3), min_op<U64>{}), (std::vector<U64>{1, 2, 2}));
  const std::vector<U64> b{1, 2, 3, 4};
  EXPECT_EQ(naive_sliding_sum(Span(b), WindowSpec(2), wrapping_add_op<U64>{}),
            (std::vector<U64>{3, 5, 7}));
  EXPECT_TRUE(naive_sliding_sum(Span(b), WindowSpec(5), min_op<U64>{}).empty());
  EXPECT_EQ(naive_sliding_sum(Span(b), WindowSpec(1), min_op<U64>{}), b);
}

TEST(Sequential, NaiveIsLeftFoldForNonAssociativeOps) {
  const std::vector<std::int64_t> xs{10, 3, 2, 1};
  const auto out =
      naive_sliding_sum(std::span<const std::int64_t>(xs), WindowSpec(3), oracle::subtract_op{});
  EXPECT_EQ(out, (std::vector<std::int64_t>{5, 0}));
}

TEST(Sequential, DequeMinExamples) {
  const std::vector<U64> a{1, 3, 2, 5, 4};
  const auto r = deque_sliding_min(Span(a), WindowSpec(3));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0], (WindowMin<U64>{1, 0}));
  EXPECT_EQ(r[1], (WindowMin<U64>{2, 2}));
  EXPECT_EQ(r[2], (WindowMin<U64>{2, 2}));

  const std::vector<U64> b{9, 8, 7, 6};
  const auto s = deque_sliding_min(Span(b), WindowSpec(2));
  EXPECT_EQ(s, (std::vector<WindowMin<U64>>{{8, 1}, {7, 2}, {6, 3}}));
}

TEST(Sequential, DequeMinPicksLeftmostTie) {
  const std::vector<U64> xs{4, 4, 4, 4};
  const auto r = deque_sliding_min(Span(xs), WindowSpec(3));
  EXPECT_EQ(r, (std::vector<WindowMin<U64>>{{4, 0}, {4, 1}}));
}

TEST(Sequential, RandomAgreementWithOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<U64> xs(rng() % 60);
    for (auto& x : xs) x = rng() % 8;
    const std::size_t w = 1 + rng() % 12;
    const auto expect = oracle::window_folds(xs, w, [](U64 a, U64 b) { return std::min(a, b); });
    ASSERT_EQ(naive_sliding_sum(Span(xs), WindowSpec(w), min_op<U64>{}), expect);
    const auto dq = deque_sliding_min(Span(xs), WindowSpec(w));
    ASSERT_EQ(dq.size(), expect.size());
    for (std::size_t i = 0; i < dq.size(); ++i) {
      ASSERT_EQ(dq[i].value, expect[i]);
      ASSERT_EQ(xs[dq[i].position], expect[i]);
      for (std::size_t j = i; j < dq[i].position; ++j) ASSERT_GT(xs[j], expect[i]);
    }
  }
}
