// kmer.hpp -- 2-bit DNA encoding and k-mer extraction.
//
// A k-mer is the sliding sum, over a window of k bases, of single-base
// fragments under string concatenation. Fragments pack bases two bits each,
// first base in the most significant position, so packed k-mers of equal
// length compare like the strings they encode.
#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "slidesum/hash.hpp"
#include "slidesum/lanes.hpp"
#include "slidesum/sink.hpp"

namespace slidesum {

inline constexpr unsigned kMaxK = 31;

struct EncodedSequence {
  std::vector<std::uint8_t> codes;  // A=0 C=1 G=2 T=3; 0 at invalid positions
  std::vector<std::uint8_t> valid;  // 1 where the source character was A/C/G/T

  std::size_t length() const noexcept { return codes.size(); }
};

inline EncodedSequence encode_sequence(std::string_view text) {
  EncodedSequence seq;
  seq.codes.reserve(text.size());
  seq.valid.reserve(text.size());
  for (char c : text) {
    std::uint8_t code = 0;
    bool ok = true;
    switch (c) {
      case 'A': case 'a': code = 0; break;
      case 'C': case 'c': code = 1; break;
      case 'G': case 'g': code = 2; break;
      case 'T': case 't': code = 3; break;
      default: ok = false;
    }
    seq.codes.push_back(code);
    seq.valid.push_back(ok);
  }
  return seq;
}

/// Packed run of up to 31 bases; only the low 2*len bits may be set.
struct KmerFragment {
  std::uint64_t bits = 0;
  std::uint32_t len = 0;

  friend bool operator==(const KmerFragment&, const KmerFragment&) = default;
};

/// String concatenation on fragments. Associative, not commutative; the
/// empty fragment is the identity. Defined while a.len + b.len <= 31.
struct concat_op {
  using value_type = KmerFragment;
  constexpr KmerFragment operator()(const KmerFragment& a, const KmerFragment& b) const {
    return {(a.bits << (2 * b.len)) | b.bits, a.len + b.len};
  }
  constexpr bool is_associative() const { return true; }
  constexpr KmerFragment identity() const { return {}; }
};

/// A seed value tied to the reference offset of its first base.
struct SeedHit {
  std::uint64_t seed;
  std::uint64_t position;

  friend auto operator<=>(const SeedHit&, const SeedHit&) = default;
};

inline void check_k(unsigned k) {
  if (k < 1 || k > kMaxK)
    throw std::invalid_argument("k must be in [1, 31], got " + std::to_string(k));
}

inline std::uint64_t pack_kmer(std::string_view bases) {
  if (bases.size() > kMaxK) throw std::invalid_argument("k-mer longer than 31 bases");
  const auto enc = encode_sequence(bases);
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < enc.length(); ++i) {
    if (!enc.valid[i])
      throw std::invalid_argument("invalid base '" + std::string(1, bases[i]) + "' in k-mer");
    v = (v << 2) | enc.codes[i];
  }
  return v;
}

inline std::string decode_kmer(std::uint64_t packed, unsigned k) {
  static constexpr char kBases[] = {'A', 'C', 'G', 'T'};
  std::string s(k, 'A');
  for (unsigned i = 0; i < k; ++i) s[k - 1 - i] = kBases[(packed >> (2 * i)) & 3];
  return s;
}

namespace detail {

// Bases per sliding-sum call; bounds the fragment buffer for long genomes.
inline constexpr std::size_t kKmerChunk = std::size_t{1} << 20;

}  // namespace detail

/// Calls emit(SeedHit) for every window of k valid bases, in position order,
/// computing the windows with the vector-input sliding sum over single-base
/// fragments.
template <class Emit>
void for_each_kmer(const EncodedSequence& seq, unsigned k, Emit&& emit) {
  check_k(k);
  const std::size_t n = seq.length();
  if (n < k) return;
  const std::size_t lanes = default_lane_count<KmerFragment>(k);

  // Position of the first invalid base at or after each chunk cursor.
  std::size_t next_invalid = 0;
  const auto advance_invalid = [&](std::size_t from) {
    next_invalid = std::max(next_invalid, from);
    while (next_invalid < n && seq.valid[next_invalid]) ++next_invalid;
  };

  std::vector<KmerFragment> frags;
  for (std::size_t start = 0; start + k <= n; start += detail::kKmerChunk) {
    const std::size_t end = std::min(n, start + detail::kKmerChunk + k - 1);
    frags.clear();
    for (std::size_t i = start; i < end; ++i) frags.push_back({seq.codes[i], 1});

    std::size_t pos = start;
    auto on_window = [&](const KmerFragment& f) {
      if (next_invalid < pos) advance_invalid(pos);
      if (next_invalid >= pos + k) emit(SeedHit{f.bits, pos});
      ++pos;
    };
    advance_invalid(start);
    vector_input_sliding_sum(std::span<const KmerFragment>(frags), WindowSpec(k), concat_op{},
                             lanes, sink_iterator(on_window));
  }
}

inline std::vector<SeedHit> kmers_by_sliding_sum(const EncodedSequence& seq, unsigned k) {
  std::vector<SeedHit> out;
  for_each_kmer(seq, k, [&](const SeedHit& h) { out.push_back(h); });
  return out;
}

/// Shift-and-mask k-mer extraction with a validity countdown. Independent of
/// the sliding-sum path; used to cross-check it.
inline std::vector<SeedHit> kmers_rolling_oracle(const EncodedSequence& seq, unsigned k) {
  check_k(k);
  const std::uint64_t mask = (std::uint64_t{1} << (2 * k)) - 1;
  std::vector<SeedHit> out;
  std::uint64_t cur = 0;
  std::size_t valid_run = 0;
  for (std::size_t i = 0; i < seq.length(); ++i) {
    cur = ((cur << 2) | seq.codes[i]) & mask;
    valid_run = seq.valid[i] ? valid_run + 1 : 0;
    if (valid_run >= k) out.push_back({cur, i + 1 - k});
  }
  return out;
}

inline void hash_seeds(std::span<SeedHit> hits) {
  for (auto& h : hits) h.seed = hash64(h.seed);
}

}  // namespace slidesum
