// minimizer.hpp -- minimizer selection over windows of w consecutive k-mers.
#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "slidesum/kmer.hpp"
#include "slidesum/lanes.hpp"
#include "slidesum/sequential.hpp"
#include "slidesum/sink.hpp"

namespace slidesum {

using MinimizerRecord = SeedHit;

/// Minimum by seed, then by position, which makes the leftmost of equal
/// seeds win.
struct seed_min_op {
  using value_type = SeedHit;
  constexpr SeedHit operator()(const SeedHit& a, const SeedHit& b) const { return b < a ? b : a; }
  constexpr bool is_associative() const { return true; }
  constexpr SeedHit identity() const {
    return {std::numeric_limits<std::uint64_t>::max(), std::numeric_limits<std::uint64_t>::max()};
  }
};

namespace detail {

// Splits k-mers into runs of consecutive positions and calls f(run) on each.
template <class F>
void for_each_run(std::span<const SeedHit> kmers, F&& f) {
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= kmers.size(); ++i) {
    if (i == kmers.size() || kmers[i].position != kmers[i - 1].position + 1) {
      f(kmers.subspan(begin, i - begin));
      begin = i;
    }
  }
}

struct RecordAppender {
  std::vector<MinimizerRecord>* out;
  void operator()(const SeedHit& h) {
    if (out->empty() || out->back() != h) out->push_back(h);
  }
};

}  // namespace detail

/// One record per distinct window winner; adjacent windows sharing a winner
/// store it once. Runs shorter than w contribute nothing.
inline std::vector<MinimizerRecord> minimizers(std::span<const SeedHit> kmers, std::size_t w,
                                               LaneOptions opts = {}) {
  const WindowSpec spec(w);
  std::vector<MinimizerRecord> out;
  detail::RecordAppender append{&out};
  detail::for_each_run(kmers, [&](std::span<const SeedHit> run) {
    sliding_sum(run, spec, seed_min_op{}, sink_iterator(append), opts);
  });
  return out;
}

/// Same selection through the monotonic deque over seed values.
inline std::vector<MinimizerRecord> minimizers_deque(std::span<const SeedHit> kmers,
                                                     std::size_t w) {
  const WindowSpec spec(w);
  std::vector<MinimizerRecord> out;
  detail::RecordAppender append{&out};
  std::vector<std::uint64_t> seeds;
  detail::for_each_run(kmers, [&](std::span<const SeedHit> run) {
    seeds.clear();
    for (const auto& h : run) seeds.push_back(h.seed);
    auto forward = [&](const WindowMin<std::uint64_t>& m) { append(run[m.position]); };
    deque_sliding_min(std::span<const std::uint64_t>(seeds), spec, sink_iterator(forward));
  });
  return out;
}

struct DensityStats {
  std::size_t records = 0;
  std::optional<double> mean_gap;  // absent with fewer than two records
  double density = 0.0;            // records per base
};

inline DensityStats density_stats(std::span<const MinimizerRecord> records,
                                  std::size_t sequence_length) {
  DensityStats s;
  s.records = records.size();
  if (sequence_length > 0)
    s.density = static_cast<double>(records.size()) / static_cast<double>(sequence_length);
  if (records.size() >= 2)
    s.mean_gap = static_cast<double>(records.back().position - records.front().position) /
                 static_cast<double>(records.size() - 1);
  return s;
}

}  // namespace slidesum
