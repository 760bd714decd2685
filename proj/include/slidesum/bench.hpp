// bench.hpp -- sliding-minimum benchmark harness.
//
// Every algorithm writes its window minima into the same preallocated buffer;
// only that call is timed. The checksum is computed afterwards and must agree
// across algorithms for a given input and w.
#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "slidesum/hash.hpp"
#include "slidesum/lanes.hpp"
#include "slidesum/operators.hpp"
#include "slidesum/sequential.hpp"
#include "slidesum/sink.hpp"

namespace slidesum {

enum class BenchAlgorithm { deque, array, scalar_lanes, vector_lanes };

inline constexpr BenchAlgorithm kAllBenchAlgorithms[] = {
    BenchAlgorithm::deque, BenchAlgorithm::array, BenchAlgorithm::scalar_lanes,
    BenchAlgorithm::vector_lanes};

inline std::string_view to_string(BenchAlgorithm a) {
  switch (a) {
    case BenchAlgorithm::deque: return "deque";
    case BenchAlgorithm::array: return "array";
    case BenchAlgorithm::scalar_lanes: return "scalar-lanes";
    case BenchAlgorithm::vector_lanes: return "vector-lanes";
  }
  return "?";
}

inline BenchAlgorithm parse_bench_algorithm(std::string_view name) {
  for (auto a : kAllBenchAlgorithms)
    if (to_string(a) == name) return a;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

struct BenchResult {
  std::string algorithm;
  std::size_t w = 0;
  std::size_t n = 0;
  double seconds = 0.0;
  std::uint64_t checksum = 0;
};

class BenchMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// XOR of all outputs, each rotated by its index mod 64 so that reordered or
/// shifted outputs do not cancel out.
inline std::uint64_t output_checksum(std::span<const std::uint64_t> outputs) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < outputs.size(); ++i)
    acc ^= std::rotl(outputs[i], static_cast<int>(i & 63));
  return acc;
}

/// Sliding minimum of `values` into `out` (which must hold N - w + 1 values).
inline void run_sliding_min(BenchAlgorithm algo, std::span<const std::uint64_t> values,
                            std::size_t w, std::uint64_t* out) {
  const WindowSpec spec(w);
  const min_op<std::uint64_t> op;
  switch (algo) {
    case BenchAlgorithm::deque: {
      auto store = [&out](const WindowMin<std::uint64_t>& m) { *out++ = m.value; };
      deque_sliding_min(values, spec, sink_iterator(store));
      break;
    }
    case BenchAlgorithm::array:
      naive_sliding_sum(values, spec, op, out);
      break;
    case BenchAlgorithm::scalar_lanes:
      scalar_input_sliding_sum(values, spec, op, default_lane_count<std::uint64_t>(w), out);
      break;
    case BenchAlgorithm::vector_lanes:
      vector_input_sliding_sum(values, spec, op, default_lane_count<std::uint64_t>(w), out);
      break;
  }
}

/// Times `reps` runs and keeps the fastest.
inline BenchResult bench_one(BenchAlgorithm algo, std::span<const std::uint64_t> values,
                             std::size_t w, unsigned reps, std::vector<std::uint64_t>& scratch) {
  if (reps == 0) throw std::invalid_argument("repetitions must be at least 1");
  const std::size_t count = WindowSpec(w).output_count(values.size());
  scratch.assign(count, 0);
  double best = std::numeric_limits<double>::infinity();
  for (unsigned r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    run_sliding_min(algo, values, w, scratch.data());
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return {std::string(to_string(algo)), w, values.size(), best, output_checksum(scratch)};
}

/// Runs every (w, algorithm) pair, w outermost. Throws BenchMismatch as soon
/// as two algorithms disagree on a checksum for the same w.
inline std::vector<BenchResult> run_benchmark(std::span<const std::uint64_t> values,
                                              std::size_t w_lo, std::size_t w_hi,
                                              std::span<const BenchAlgorithm> algos,
                                              unsigned reps) {
  if (w_lo < 1 || w_lo > w_hi) throw std::invalid_argument("empty window range");
  if (algos.empty()) throw std::invalid_argument("no algorithms selected");
  std::vector<BenchResult> results;
  std::vector<std::uint64_t> scratch;
  for (std::size_t w = w_lo; w <= w_hi; ++w) {
    const std::size_t first = results.size();
    for (auto a : algos) {
      results.push_back(bench_one(a, values, w, reps, scratch));
      if (results.back().checksum != results[first].checksum)
        throw BenchMismatch("checksum mismatch at w=" + std::to_string(w) + ": " +
                            results[first].algorithm + " vs " + results.back().algorithm);
    }
  }
  return results;
}

inline void write_bench_csv(std::ostream& os, std::span<const BenchResult> results) {
  os << "algorithm,w,n,seconds,checksum\n";
  for (const auto& r : results)
    os << r.algorithm << ',' << r.w << ',' << r.n << ',' << r.seconds << ',' << r.checksum << '\n';
}

/// Hashed k-mers of a uniform random base sequence, n values.
inline std::vector<std::uint64_t> random_hashed_kmers(std::size_t n, unsigned k,
                                                      std::uint64_t seed) {
  if (k < 1 || k > 31) throw std::invalid_argument("k must be in [1, 31]");
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = (std::uint64_t{1} << (2 * k)) - 1;
  std::vector<std::uint64_t> out;
  out.reserve(n);
  std::uint64_t kmer = 0;
  std::uint64_t bits = 0;
  int avail = 0;
  for (std::size_t i = 0; i + 1 < n + k; ++i) {
    if (avail == 0) {
      bits = rng();
      avail = 32;
    }
    kmer = ((kmer << 2) | (bits & 3)) & mask;
    bits >>= 2;
    --avail;
    if (i + 1 >= k) out.push_back(hash64(kmer));
  }
  return out;
}

}  // namespace slidesum
