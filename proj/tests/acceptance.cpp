// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "slidesum/slidesum.hpp"

using namespace slidesum;

namespace {

using U64 = std::uint64_t;

struct Outcome {
  bool pass;
  std::string detail;
};

// ---- 1. lane algorithms are bit-identical to the naive fold

template <class Op, class Gen>
bool equivalent_for(const Op& op, std::size_t lanes, std::mt19937_64& rng, Gen gen,
                    std::string& where) {
  using T = value_t<Op>;
  std::vector<T> xs;
  for (std::size_t w = 1; w <= std::min<std::size_t>(lanes, 64); ++w) {
    for (int t = 0; t < 1000; ++t) {
      xs.resize(rng() % (4 * lanes + 8));
      for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = gen(rng, i, w);
      const std::span<const T> in(xs);
      const auto expect = naive_sliding_sum(in, WindowSpec(w), op);
      if (scalar_input_sliding_sum(in, WindowSpec(w), op, lanes) != expect ||
          vector_input_sliding_sum(in, WindowSpec(w), op, lanes) != expect) {
        where = "P=" + std::to_string(lanes) + " w=" + std::to_string(w) +
                " n=" + std::to_string(xs.size());
        return false;
      }
    }
  }
  return true;
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(1001);
  auto small = [](std::mt19937_64& r, std::size_t, std::size_t) { return r() % 16; };
  auto wide = [](std::mt19937_64& r, std::size_t, std::size_t) { return r(); };
  // Fragments of zero or one base; with w = 32 every 32nd fragment is empty
  // so no window exceeds the 31-base capacity of a packed k-mer.
  auto frag = [](std::mt19937_64& r, std::size_t i, std::size_t w) {
    const bool empty = (w > kMaxK && i % 32 == 31) || r() % 8 == 0;
    return empty ? KmerFragment{} : KmerFragment{r() & 3, 1};
  };
  std::size_t combos = 0;
  for (std::size_t lanes : {4u, 8u, 16u, 32u}) {
    std::string where;
    if (!equivalent_for(min_op<U64>{}, lanes, rng, small, where))
      return {false, "min differs at " + where};
    if (!equivalent_for(max_op<U64>{}, lanes, rng, wide, where))
      return {false, "max differs at " + where};
    if (!equivalent_for(wrapping_add_op<U64>{}, lanes, rng, wide, where))
      return {false, "wrapping add differs at " + where};
    if (!equivalent_for(concat_op{}, lanes, rng, frag, where))
      return {false, "concat differs at " + where};
    combos += 4 * lanes;
  }
  return {true, std::to_string(combos) + " (operator, P, w) combinations x 1000 inputs"};
}

// ---- 2. non-associative operator

Outcome non_associative() {
  std::mt19937_64 rng(1002);
  const oracle::subtract_op op;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t lanes = std::size_t{4} << (t % 4);
    const std::size_t w = 1 + rng() % lanes;
    std::vector<std::int64_t> xs(rng() % (4 * lanes + 8));
    for (auto& x : xs) x = static_cast<std::int64_t>(rng());
    const std::span<const std::int64_t> in(xs);
    if (scalar_input_sliding_sum(in, WindowSpec(w), op, lanes) != oracle::window_folds(xs, w, op))
      return {false, "scalar input differs from the left fold, trial " + std::to_string(t)};
  }
  const std::vector<std::int64_t> xs{3, 2, 1};
  try {
    vector_input_sliding_sum(std::span<const std::int64_t>(xs), WindowSpec(2), op, 4);
    return {false, "vector input accepted subtraction"};
  } catch (const std::invalid_argument&) {
  }
  return {true, "1000 inputs match the left fold; vector input rejects the operator"};
}

// ---- 3. logarithmic scan

Outcome scan_rounds() {
  constexpr std::size_t P = 32;
  for (std::size_t w = 2; w <= 32; ++w) {
    std::size_t calls = 0;
    const oracle::counting_add_op op{&calls};
    const auto out = lane_windowed_prefix(LaneBlock<oracle::Traced, P>::filled({1, 0}), w, op);
    const unsigned rounds = oracle::ceil_log2(w);
    for (std::size_t i = 0; i < P; ++i)
      if (out[i].depth != rounds || out[i].value != std::min(i + 1, w))
        return {false, "w=" + std::to_string(w) + " lane " + std::to_string(i) + " depth " +
                           std::to_string(out[i].depth) + ", expected " + std::to_string(rounds)};
    if (calls != P * (2 * rounds - 1))
      return {false, "w=" + std::to_string(w) + " used " + std::to_string(calls) + " combines"};
  }
  return {true, "combine depth is ceil(log2 w) for w = 2..32 with P = 32"};
}

// ---- 4. minimizers, three ways

Outcome minimizer_agreement() {
  std::mt19937_64 rng(1004);
  std::size_t records = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto alphabet = t % 5 == 0 ? "ACN" : (t % 2 ? "AC" : "ACG");
    const auto s = oracle::random_dna(rng, rng() % 10001, alphabet);
    const unsigned k = 1 + static_cast<unsigned>(rng() % 6);
    const std::size_t w = 1 + rng() % 24;
    const auto km = kmers_by_sliding_sum(encode_sequence(s), k);
    const auto brute = oracle::minimizers(km, w);
    if (minimizers(km, w) != brute || minimizers_deque(km, w) != brute)
      return {false, "disagreement on sequence " + std::to_string(t)};
    records += brute.size();
  }
  return {true, "1000 sequences, " + std::to_string(records) + " records, identical"};
}

// ---- 5. density

Outcome density() {
  std::mt19937_64 rng(1005);
  double lo = 1e9, hi = 0, sum = 0;
  for (int t = 0; t < 10; ++t) {
    const auto s = oracle::random_dna(rng, 1000000, "ACGT");
    auto km = kmers_by_sliding_sum(encode_sequence(s), 15);
    hash_seeds(km);
    const auto st = density_stats(minimizers(km, 10), s.size());
    if (!st.mean_gap) return {false, "no mean gap"};
    lo = std::min(lo, *st.mean_gap);
    hi = std::max(hi, *st.mean_gap);
    sum += *st.mean_gap;
  }
  std::ostringstream d;
  d << "mean gap over 10 x 1e6 bases: " << sum / 10 << " (range " << lo << ".." << hi
    << ", bound [4.7, 6.3])";
  return {lo >= 4.7 && hi <= 6.3, d.str()};
}

// ---- 6. speed

Outcome speed() {
  const auto values = random_hashed_kmers(100000000, 15, 42);
  std::vector<U64> scratch;
  std::ostringstream d;
  bool ok = true;
  for (std::size_t w : {8u, 12u, 16u}) {
    const auto dq = bench_one(BenchAlgorithm::deque, values, w, 3, scratch);
    const auto ar = bench_one(BenchAlgorithm::array, values, w, 3, scratch);
    const auto vec = bench_one(BenchAlgorithm::vector_lanes, values, w, 3, scratch);
    const double vs_deque = dq.seconds / vec.seconds;
    const double vs_array = ar.seconds / vec.seconds;
    const bool same = dq.checksum == ar.checksum && ar.checksum == vec.checksum;
    ok = ok && same && vs_deque >= 2.5 && vs_array >= 2.0;
    d << "w=" << w << ": " << vs_deque << "x deque, " << vs_array << "x array"
      << (same ? "" : " CHECKSUM MISMATCH") << "; ";
  }
  d << "1e8 values, bounds 2.5x / 2x";
  return {ok, d.str()};
}

// ---- 7. seed table round trip

Outcome seed_table_round_trip() {
  std::mt19937_64 rng(1007);
  std::size_t lookups = 0;
  for (int t = 0; t < 100; ++t) {
    const bool hashed = t % 2 == 1;
    const unsigned k = hashed ? 15 : 4 + static_cast<unsigned>(rng() % 9);
    const unsigned w = 1 + static_cast<unsigned>(rng() % 16);
    const auto s = oracle::random_dna(rng, 2000 + rng() % 20000, t % 7 == 0 ? "ACGTN" : "ACGT");
    auto km = kmers_by_sliding_sum(encode_sequence(s), k);
    if (hashed) hash_seeds(km);
    const auto mode = hashed ? SeedTableMode::hashed : SeedTableMode::direct;
    const auto table = build_seed_table(minimizers(km, w), k, w, mode);

    std::stringstream buf;
    write_seed_table(buf, table);
    const auto back = read_seed_table(buf);
    if (!(back == table)) return {false, "genome " + std::to_string(t) + " changed in transit"};

    std::vector<SeedHit> concatenated;
    const auto entries = table.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i > 0 && entries[i].seed == entries[i - 1].seed) continue;
      const auto positions = back.lookup(entries[i].seed);
      if (positions != table.lookup(entries[i].seed))
        return {false, "lookup differs in genome " + std::to_string(t)};
      for (auto p : positions) concatenated.push_back({entries[i].seed, p});
      ++lookups;
    }
    if (!std::equal(concatenated.begin(), concatenated.end(), entries.begin(), entries.end()))
      return {false, "partition property fails in genome " + std::to_string(t)};
  }
  return {true, "100 genomes, " + std::to_string(lookups) + " seeds looked up after reload"};
}

// ---- 8. hash bijectivity

Outcome hash_bijective() {
  std::mt19937_64 rng(1008);
  for (int i = 0; i < 1000000; ++i) {
    const U64 x = rng();
    if (unhash64(hash64(x)) != x) return {false, "round trip fails"};
  }
  for (U64 x : {U64{0}, U64{1}, U64{1} << 63, ~U64{0}})
    if (unhash64(hash64(x)) != x) return {false, "edge value fails"};
  return {true, "1e6 random values and {0, 1, 2^63, 2^64-1}"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"non-associative operator", non_associative},
      {"logarithmic scan", scan_rounds},
      {"minimizer agreement", minimizer_agreement},
      {"minimizer density", density},
      {"speedup", speed},
      {"seed table round trip", seed_table_round_trip},
      {"hash bijectivity", hash_bijective},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first
              << ": " << o.detail << " (" << secs << " s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
