#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace slidesum {

struct FastaRecord {
  std::string name;
  std::string sequence;

  friend bool operator==(const FastaRecord&, const FastaRecord&) = default;
};

class FastaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses '>' headers and joins the sequence lines that follow. Trailing
/// whitespace and CR line endings are dropped. Blank input yields no records.
inline std::vector<FastaRecord> read_fasta(std::istream& in) {
  std::vector<FastaRecord> records;
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::size_t line_start = offset;
    offset += line.size() + 1;
    const auto end = line.find_last_not_of(" \t\r\n\v\f");
    line.erase(end == std::string::npos ? 0 : end + 1);
    if (line.empty()) continue;
    if (line.front() == '>') {
      records.push_back({line.substr(1), {}});
      continue;
    }
    if (records.empty())
      throw FastaError("FASTA parse error at byte offset " + std::to_string(line_start) +
                       ": expected '>' header");
    records.back().sequence += line;
  }
  return records;
}

inline std::vector<FastaRecord> read_fasta(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FastaError("cannot open FASTA file " + path.string());
  return read_fasta(in);
}

}  // namespace slidesum
