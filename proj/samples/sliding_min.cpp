// Sliding minimum of a few numbers, then minimizers of a short DNA string.
#include <cstdint>
#include <iostream>
#include <vector>

#include "slidesum/slidesum.hpp"

int main() {
  using namespace slidesum;

  const std::vector<std::uint64_t> xs{5, 3, 8, 6, 1, 9, 4, 7};
  std::vector<std::uint64_t> mins;
  auto r = sliding_sum(std::span<const std::uint64_t>(xs), WindowSpec(3),
                       min_op<std::uint64_t>{}, std::back_inserter(mins));
  std::cout << "path " << to_string(r.path) << " with " << r.lanes << " lanes:";
  for (auto m : mins) std::cout << ' ' << m;
  std::cout << '\n';

  const auto kmers = kmers_by_sliding_sum(encode_sequence("ACGTACGT"), 3);
  for (const auto& m : minimizers(kmers, 2))
    std::cout << decode_kmer(m.seed, 3) << " @ " << m.position << '\n';
}
