// cli.hpp -- the slidesum command line, kept in a header so tests can drive it.
//
//   slidesum build   <fasta> --k K --w W --mode raw|hashed --out table.msdt
//   slidesum lookup  <table> <seed>
//   slidesum bench   <fasta|random:N> --w-range A..B --algo deque,array,... --reps R [--out csv]
//   slidesum density <fasta|random:N> --k K --w W --mode raw|hashed
#pragma once

#include <CLI11.hpp>

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "slidesum/slidesum.hpp"

namespace slidesum::cli {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WindowRange {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

inline std::size_t parse_count(std::string_view text, std::string_view what) {
  std::size_t pos = 0;
  std::size_t v = 0;
  try {
    v = std::stoull(std::string(text), &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (text.empty() || pos != text.size() || text.front() == '-')
    throw UsageError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  return v;
}

/// "A..B" with A <= B, or a single "A".
inline WindowRange parse_window_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const auto w = parse_count(text, "window range");
    return {w, w};
  }
  WindowRange r{parse_count(text.substr(0, dots), "window range"),
                parse_count(text.substr(dots + 2), "window range")};
  if (r.lo < 1 || r.lo > r.hi)
    throw UsageError("window range '" + std::string(text) + "' is empty");
  return r;
}

/// Comma-separated algorithm names. "all" selects deque, array and
/// vector-lanes; scalar-lanes runs only when named.
inline std::vector<BenchAlgorithm> parse_algorithms(std::string_view text) {
  std::vector<BenchAlgorithm> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = std::min(text.find(',', start), text.size());
    const auto name = text.substr(start, comma - start);
    if (name == "all") {
      out.insert(out.end(), {BenchAlgorithm::deque, BenchAlgorithm::array,
                             BenchAlgorithm::vector_lanes});
    } else {
      try {
        out.push_back(parse_bench_algorithm(name));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    start = comma + 1;
  }
  return out;
}

inline SeedTableMode parse_mode(std::string_view text) {
  if (text == "raw") return SeedTableMode::direct;
  if (text == "hashed") return SeedTableMode::hashed;
  throw UsageError("unknown mode '" + std::string(text) + "' (expected raw or hashed)");
}

/// Uniform random bases, for "random:N" inputs.
inline std::string random_bases(std::size_t n, std::uint64_t seed) {
  static constexpr char kBases[] = {'A', 'C', 'G', 'T'};
  std::mt19937_64 rng(seed);
  std::string s(n, 'A');
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 32 == 0) bits = rng();
    s[i] = kBases[bits & 3];
    bits >>= 2;
  }
  return s;
}

inline bool is_random_spec(std::string_view input) { return input.starts_with("random:"); }

inline std::size_t random_spec_length(std::string_view input) {
  return parse_count(input.substr(7), "random input length");
}

/// FASTA records, or one synthetic record for "random:N".
inline std::vector<FastaRecord> load_sequences(const std::string& input, std::uint64_t seed) {
  if (is_random_spec(input)) return {{"random", random_bases(random_spec_length(input), seed)}};
  return read_fasta(input);
}

/// Minimizers of every record, positions offset by the lengths of the
/// records before it so that all positions share one coordinate space.
inline std::vector<MinimizerRecord> collect_minimizers(const std::vector<FastaRecord>& records,
                                                       unsigned k, std::size_t w, bool hashed) {
  std::vector<MinimizerRecord> out;
  std::uint64_t offset = 0;
  for (const auto& rec : records) {
    auto kmers = kmers_by_sliding_sum(encode_sequence(rec.sequence), k);
    if (hashed) hash_seeds(kmers);
    for (auto m : minimizers(kmers, w)) {
      m.position += offset;
      out.push_back(m);
    }
    offset += rec.sequence.size();
  }
  return out;
}

inline std::uint64_t total_length(const std::vector<FastaRecord>& records) {
  std::uint64_t n = 0;
  for (const auto& r : records) n += r.sequence.size();
  return n;
}

inline void print_density(std::ostream& out, const DensityStats& s) {
  out << "records " << s.records << '\n';
  out << "mean_gap ";
  if (s.mean_gap) out << std::fixed << std::setprecision(4) << *s.mean_gap << '\n';
  else out << "NA\n";
  out << "density " << std::fixed << std::setprecision(6) << s.density << '\n';
  out.unsetf(std::ios::floatfield);
}

struct Options {
  std::string input;
  std::string table;
  std::string seed_text;
  unsigned k = 15;
  std::size_t w = 10;
  std::string w_range;
  std::string mode = "hashed";
  std::string algo = "all";
  unsigned reps = 1;
  std::string out_path;
  std::uint64_t rng_seed = 42;
};

inline void check_window(std::size_t w) {
  if (w < 1 || w > 255) throw UsageError("w must be in [1, 255], got " + std::to_string(w));
}

inline int cmd_build(const Options& o, std::ostream& out) {
  check_k(o.k);
  check_window(o.w);
  if (o.out_path.empty()) throw UsageError("build needs --out");
  const auto mode = parse_mode(o.mode);
  const auto records = load_sequences(o.input, o.rng_seed);
  const auto mins = collect_minimizers(records, o.k, o.w, mode == SeedTableMode::hashed);
  const auto table = build_seed_table(mins, o.k, static_cast<unsigned>(o.w), mode);
  save_seed_table(o.out_path, table);
  print_density(out, density_stats(mins, total_length(records)));
  return 0;
}

inline int cmd_lookup(const Options& o, std::ostream& out) {
  const auto table = load_seed_table(o.table);
  if (o.seed_text.size() != table.k())
    throw UsageError("seed '" + o.seed_text + "' has length " + std::to_string(o.seed_text.size()) +
                     ", table k is " + std::to_string(table.k()));
  std::uint64_t seed = pack_kmer(o.seed_text);
  if (table.mode() == SeedTableMode::hashed) seed = hash64(seed);
  for (auto p : table.lookup(seed)) out << p << '\n';
  return 0;
}

/// Hashed k-mers of the input as one stream, skipping windows that touch
/// invalid bases.
inline std::vector<std::uint64_t> bench_values(const Options& o) {
  if (is_random_spec(o.input))
    return random_hashed_kmers(random_spec_length(o.input), o.k, o.rng_seed);
  std::vector<std::uint64_t> values;
  for (const auto& rec : read_fasta(o.input))
    for_each_kmer(encode_sequence(rec.sequence), o.k,
                  [&](const SeedHit& h) { values.push_back(hash64(h.seed)); });
  return values;
}

inline int cmd_bench(const Options& o, std::ostream& out) {
  check_k(o.k);
  const auto range = o.w_range.empty() ? WindowRange{o.w, o.w} : parse_window_range(o.w_range);
  if (range.lo < 1 || range.hi > kMaxLanes)
    throw UsageError("window range must lie in [1, 64]");
  const auto algos = parse_algorithms(o.algo);
  if (o.reps < 1) throw UsageError("--reps must be at least 1");
  const auto values = bench_values(o);
  const auto results = run_benchmark(values, range.lo, range.hi, algos, o.reps);
  if (o.out_path.empty()) {
    write_bench_csv(out, results);
  } else {
    std::ofstream f(o.out_path);
    if (!f) throw std::runtime_error("cannot write " + o.out_path);
    write_bench_csv(f, results);
  }
  return 0;
}

inline int cmd_density(const Options& o, std::ostream& out) {
  check_k(o.k);
  check_window(o.w);
  const auto mode = parse_mode(o.mode);
  const auto records = load_sequences(o.input, o.rng_seed);
  const auto mins = collect_minimizers(records, o.k, o.w, mode == SeedTableMode::hashed);
  print_density(out, density_stats(mins, total_length(records)));
  return 0;
}

/// Runs the command line. Returns the process exit code; failures print one
/// diagnostic line to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sliding-window sums, minimizer seed tables and sliding-minimum benchmarks",
               "slidesum"};
  app.require_subcommand(1);
  Options o;

  auto* build = app.add_subcommand("build", "Build a minimizer seed table from FASTA");
  build->add_option("fasta", o.input, "FASTA file or random:N")->required();
  build->add_option("--k", o.k, "k-mer length")->capture_default_str();
  build->add_option("--w", o.w, "window length in k-mers")->capture_default_str();
  build->add_option("--mode", o.mode, "raw or hashed")->capture_default_str();
  build->add_option("--out", o.out_path, "output table file")->required();
  build->add_option("--seed", o.rng_seed, "RNG seed for random inputs")->capture_default_str();

  auto* lookup = app.add_subcommand("lookup", "Print the stored positions of a seed");
  lookup->add_option("table", o.table, "seed table file")->required();
  lookup->add_option("seed", o.seed_text, "k-mer to look up")->required();

  auto* bench = app.add_subcommand("bench", "Time sliding-minimum algorithms, CSV output");
  bench->add_option("input", o.input, "FASTA file or random:N")->required();
  bench->add_option("--k", o.k, "k-mer length of the hashed stream")->capture_default_str();
  bench->add_option("--w", o.w, "single window length")->capture_default_str();
  bench->add_option("--w-range", o.w_range, "window lengths A..B");
  bench->add_option("--algo", o.algo, "deque,array,scalar-lanes,vector-lanes or all")
      ->capture_default_str();
  bench->add_option("--reps", o.reps, "repetitions; the fastest is reported")
      ->capture_default_str();
  bench->add_option("--out", o.out_path, "CSV file (default: standard output)");
  bench->add_option("--seed", o.rng_seed, "RNG seed for random inputs")->capture_default_str();

  auto* density = app.add_subcommand("density", "Minimizer count and mean gap");
  density->add_option("input", o.input, "FASTA file or random:N")->required();
  density->add_option("--k", o.k, "k-mer length")->capture_default_str();
  density->add_option("--w", o.w, "window length in k-mers")->capture_default_str();
  density->add_option("--mode", o.mode, "raw or hashed")->capture_default_str();
  density->add_option("--seed", o.rng_seed, "RNG seed for random inputs")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "slidesum: " << e.what() << '\n';
    return 2;
  }

  try {
    if (build->parsed()) return cmd_build(o, out);
    if (lookup->parsed()) return cmd_lookup(o, out);
    if (bench->parsed()) return cmd_bench(o, out);
    return cmd_density(o, out);
  } catch (const UsageError& e) {
    err << "slidesum: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "slidesum: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace slidesum::cli
