// Compiled once for the host and once per forced instruction set, so every
// register backend gets checked against the portable lane path.
#include <gtest/gtest.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "slidesum/lanes.hpp"

using namespace slidesum;

namespace {

using U64 = std::uint64_t;
using Span = std::span<const U64>;

#ifdef SLIDESUM_EXPECT_BACKEND
TEST(SimdBackend, IsTheRequestedOne) {
  ASSERT_TRUE(simd::kAvailable);
  EXPECT_EQ(std::string(simd::Backend::name), SLIDESUM_EXPECT_BACKEND);
}
#endif

TEST(SimdBackend, AccelerationOnlyForBuiltinMinMax) {
  if (!simd::kAvailable) GTEST_SKIP() << "no vector backend on this target";
  EXPECT_TRUE((simd::Accelerated<min_op<U64>, 64>));
  EXPECT_TRUE((simd::Accelerated<max_op<U64>, 64>));
  EXPECT_FALSE((simd::Accelerated<oracle::plain_min_op, 64>));
  EXPECT_FALSE((simd::Accelerated<wrapping_add_op<U64>, 64>));
}

template <class Op>
void compare_paths(const Op& op, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t lanes : {2u, 4u, 8u, 16u, 32u, 64u}) {
    for (std::size_t w = 1; w <= lanes; ++w) {
      for (int t = 0; t < 6; ++t) {
        std::vector<U64> xs(rng() % (5 * lanes + 9));
        const U64 range = t % 2 == 0 ? 4 : ~U64{0};
        for (auto& x : xs) x = range == ~U64{0} ? rng() : rng() % range;
        const auto expect = naive_sliding_sum(Span(xs), WindowSpec(w), op);
        ASSERT_EQ(vector_input_sliding_sum(Span(xs), WindowSpec(w), op, lanes), expect)
            << "P=" << lanes << " w=" << w;
        ASSERT_EQ(scalar_input_sliding_sum(Span(xs), WindowSpec(w), op, lanes), expect)
            << "P=" << lanes << " w=" << w;
        std::vector<U64> direct(expect.size());
        vector_input_sliding_sum(Span(xs), WindowSpec(w), op, lanes, direct.data());
        ASSERT_EQ(direct, expect);
      }
    }
  }
}

TEST(SimdBackend, MinMatchesNaive) { compare_paths(min_op<U64>{}, 101); }
TEST(SimdBackend, MaxMatchesNaive) { compare_paths(max_op<U64>{}, 102); }

TEST(SimdBackend, ExtremeValues) {
  const std::vector<U64> xs{~U64{0}, 0, U64{1} << 63, (U64{1} << 63) - 1, ~U64{0}, 1, 0, 7, 9};
  for (std::size_t w = 1; w <= 4; ++w) {
    EXPECT_EQ(vector_input_sliding_sum(Span(xs), WindowSpec(w), min_op<U64>{}, 4),
              naive_sliding_sum(Span(xs), WindowSpec(w), min_op<U64>{}));
    EXPECT_EQ(vector_input_sliding_sum(Span(xs), WindowSpec(w), max_op<U64>{}, 4),
              naive_sliding_sum(Span(xs), WindowSpec(w), max_op<U64>{}));
  }
}

}  // namespace
