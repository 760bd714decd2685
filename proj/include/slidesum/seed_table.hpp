// seed_table.hpp -- seed pointer table + seed position table, and their
// on-disk form.
//
// File layout, all integers little-endian:
//
//   "MSDT"                       magic
//   u32   version (1)
//   u8    mode (0 = direct index, 1 = sorted hash)
//   u8    k
//   u8    w
//   u8    reserved (0)
//   u64   entry count
//   u64   pointer offsets [4^k + 1]     direct mode only
//   (u64 seed, u64 position) [count]
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "slidesum/kmer.hpp"
#include "slidesum/minimizer.hpp"

namespace slidesum {

enum class SeedTableMode : std::uint8_t { direct = 0, hashed = 1 };

inline constexpr unsigned kMaxDirectK = 12;
inline constexpr std::uint32_t kSeedTableVersion = 1;
inline constexpr std::array<char, 4> kSeedTableMagic = {'M', 'S', 'D', 'T'};

class SeedTableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SeedTable {
 public:
  SeedTable() = default;

  SeedTable(SeedTableMode mode, unsigned k, unsigned w, std::vector<std::uint64_t> pointers,
            std::vector<SeedHit> entries)
      : mode_(mode), k_(k), w_(w), pointers_(std::move(pointers)), entries_(std::move(entries)) {}

  SeedTableMode mode() const noexcept { return mode_; }
  unsigned k() const noexcept { return k_; }
  unsigned w() const noexcept { return w_; }
  std::span<const std::uint64_t> pointers() const noexcept { return pointers_; }
  std::span<const SeedHit> entries() const noexcept { return entries_; }

  /// Entries stored for `seed`, positions increasing. Empty when absent.
  std::span<const SeedHit> hits(std::uint64_t seed) const {
    if (mode_ == SeedTableMode::direct) {
      if (seed + 1 >= pointers_.size()) return {};
      const auto first = static_cast<std::ptrdiff_t>(pointers_[seed]);
      const auto last = static_cast<std::ptrdiff_t>(pointers_[seed + 1]);
      return std::span<const SeedHit>(entries_.begin() + first, entries_.begin() + last);
    }
    const auto lo = std::lower_bound(entries_.begin(), entries_.end(), seed,
                                     [](const SeedHit& h, std::uint64_t s) { return h.seed < s; });
    const auto hi = std::upper_bound(lo, entries_.end(), seed,
                                     [](std::uint64_t s, const SeedHit& h) { return s < h.seed; });
    return std::span<const SeedHit>(lo, hi);
  }

  std::vector<std::uint64_t> lookup(std::uint64_t seed) const {
    std::vector<std::uint64_t> positions;
    for (const auto& h : hits(seed)) positions.push_back(h.position);
    return positions;
  }

  friend bool operator==(const SeedTable&, const SeedTable&) = default;

 private:
  SeedTableMode mode_ = SeedTableMode::hashed;
  unsigned k_ = 0;
  unsigned w_ = 0;
  std::vector<std::uint64_t> pointers_;
  std::vector<SeedHit> entries_;
};

/// Sorts records by (seed, position). Direct mode additionally builds the
/// 4^k + 1 pointer table by counting sort and requires raw seeds with k <= 12.
inline SeedTable build_seed_table(std::span<const MinimizerRecord> records, unsigned k, unsigned w,
                                  SeedTableMode mode) {
  check_k(k);
  if (w < 1 || w > 255) throw std::invalid_argument("w must be in [1, 255]");

  if (mode == SeedTableMode::hashed) {
    std::vector<SeedHit> entries(records.begin(), records.end());
    std::sort(entries.begin(), entries.end());
    return SeedTable(mode, k, w, {}, std::move(entries));
  }

  if (k > kMaxDirectK)
    throw std::invalid_argument("direct-index seed tables need k <= 12, got " + std::to_string(k));
  const std::uint64_t seed_count = std::uint64_t{1} << (2 * k);
  std::vector<std::uint64_t> pointers(seed_count + 1, 0);
  for (const auto& r : records) {
    if (r.seed >= seed_count)
      throw std::invalid_argument("seed value exceeds 4^k; direct-index tables need raw seeds");
    ++pointers[r.seed + 1];
  }
  for (std::uint64_t s = 0; s < seed_count; ++s) pointers[s + 1] += pointers[s];

  // Counting sort is stable, so position order within a seed follows the
  // input once the input is position-ordered.
  std::vector<SeedHit> by_position(records.begin(), records.end());
  if (!std::is_sorted(by_position.begin(), by_position.end(),
                      [](const SeedHit& a, const SeedHit& b) { return a.position < b.position; }))
    std::sort(by_position.begin(), by_position.end(),
              [](const SeedHit& a, const SeedHit& b) {
                return a.position != b.position ? a.position < b.position : a.seed < b.seed;
              });
  std::vector<SeedHit> entries(records.size());
  std::vector<std::uint64_t> cursor(pointers.begin(), pointers.end() - 1);
  for (const auto& r : by_position) entries[cursor[r.seed]++] = r;
  return SeedTable(mode, k, w, std::move(pointers), std::move(entries));
}

namespace detail {

inline void put_le(std::ostream& os, std::uint64_t v, int bytes) {
  char buf[8];
  for (int i = 0; i < bytes; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(buf, bytes);
}

inline std::uint64_t get_le(std::istream& is, int bytes, const char* what) {
  unsigned char buf[8];
  if (!is.read(reinterpret_cast<char*>(buf), bytes))
    throw SeedTableError(std::string("seed table truncated while reading ") + what);
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= std::uint64_t{buf[i]} << (8 * i);
  return v;
}

// Bulk little-endian u64 array I/O.
inline void put_u64s(std::ostream& os, std::span<const std::uint64_t> vs) {
  std::vector<unsigned char> buf(vs.size() * 8);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (int b = 0; b < 8; ++b) buf[8 * i + b] = static_cast<unsigned char>(vs[i] >> (8 * b));
  os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

inline std::vector<std::uint64_t> get_u64s(std::istream& is, std::uint64_t count,
                                           const char* what) {
  std::vector<unsigned char> buf;
  std::vector<std::uint64_t> out;
  constexpr std::uint64_t kChunk = std::uint64_t{1} << 16;
  while (out.size() < count) {
    const std::uint64_t n = std::min(kChunk, count - out.size());
    buf.resize(n * 8);
    if (!is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size())))
      throw SeedTableError(std::string("seed table truncated while reading ") + what);
    for (std::uint64_t i = 0; i < n; ++i) {
      std::uint64_t v = 0;
      for (int b = 0; b < 8; ++b) v |= std::uint64_t{buf[8 * i + b]} << (8 * b);
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace detail

inline void write_seed_table(std::ostream& os, const SeedTable& t) {
  os.write(kSeedTableMagic.data(), kSeedTableMagic.size());
  detail::put_le(os, kSeedTableVersion, 4);
  detail::put_le(os, static_cast<std::uint8_t>(t.mode()), 1);
  detail::put_le(os, t.k(), 1);
  detail::put_le(os, t.w(), 1);
  detail::put_le(os, 0, 1);
  detail::put_le(os, t.entries().size(), 8);
  if (t.mode() == SeedTableMode::direct) detail::put_u64s(os, t.pointers());
  std::vector<std::uint64_t> flat;
  flat.reserve(2 * t.entries().size());
  for (const auto& e : t.entries()) {
    flat.push_back(e.seed);
    flat.push_back(e.position);
  }
  detail::put_u64s(os, flat);
  if (!os) throw SeedTableError("failed writing seed table");
}

inline SeedTable read_seed_table(std::istream& is) {
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kSeedTableMagic)
    throw SeedTableError("not a seed table (bad magic)");
  const auto version = detail::get_le(is, 4, "version");
  if (version != kSeedTableVersion)
    throw SeedTableError("unsupported seed table version " + std::to_string(version));
  const auto mode_byte = detail::get_le(is, 1, "mode");
  if (mode_byte > 1) throw SeedTableError("unknown seed table mode " + std::to_string(mode_byte));
  const auto mode = static_cast<SeedTableMode>(mode_byte);
  const auto k = static_cast<unsigned>(detail::get_le(is, 1, "k"));
  const auto w = static_cast<unsigned>(detail::get_le(is, 1, "w"));
  detail::get_le(is, 1, "reserved");
  const auto count = detail::get_le(is, 8, "entry count");
  if (k < 1 || k > kMaxK || (mode == SeedTableMode::direct && k > kMaxDirectK))
    throw SeedTableError("seed table has invalid k " + std::to_string(k));
  if (w < 1) throw SeedTableError("seed table has invalid w 0");

  std::vector<std::uint64_t> pointers;
  if (mode == SeedTableMode::direct) {
    pointers = detail::get_u64s(is, (std::uint64_t{1} << (2 * k)) + 1, "pointer table");
    if (pointers.front() != 0 || pointers.back() != count ||
        !std::is_sorted(pointers.begin(), pointers.end()))
      throw SeedTableError("seed table pointer offsets are inconsistent");
  }
  const auto flat = detail::get_u64s(is, 2 * count, "entries");
  std::vector<SeedHit> entries(count);
  for (std::uint64_t i = 0; i < count; ++i) entries[i] = {flat[2 * i], flat[2 * i + 1]};
  if (!std::is_sorted(entries.begin(), entries.end()))
    throw SeedTableError("seed table entries are not sorted");
  if (mode == SeedTableMode::direct) {
    for (std::uint64_t s = 0; s + 1 < pointers.size(); ++s)
      for (auto i = pointers[s]; i < pointers[s + 1]; ++i)
        if (entries[i].seed != s) throw SeedTableError("seed table entry outside its pointer range");
  }
  return SeedTable(mode, k, w, std::move(pointers), std::move(entries));
}

inline void save_seed_table(const std::filesystem::path& path, const SeedTable& t) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw SeedTableError("cannot open " + path.string() + " for writing");
  write_seed_table(os, t);
}

inline SeedTable load_seed_table(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SeedTableError("cannot open " + path.string());
  return read_seed_table(is);
}

}  // namespace slidesum
