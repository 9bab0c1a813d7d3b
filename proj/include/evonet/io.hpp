#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evonet/geometry.hpp"

namespace evonet {

/// Parse failure with the offending file and byte position.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal form of a double (std::to_chars), so that
/// serialized files are byte-stable across runs and platforms.
std::string format_double(double value);

/// A network together with the coordinates of its nodes, as stored on disk.
struct NetworkDocument {
  std::vector<Point> nodes;  // sorted by id
  Network net;
  int environment_index = 0;
  std::uint64_t seed = 0;
};

/// Canonical text form: fields in the order nodes, links, meta; nodes
/// sorted by id; links smaller-id first, sorted lexicographically.
std::string serialize_network(const NetworkDocument& doc);
NetworkDocument parse_network(const std::string& text,
                              const std::string& origin = "<network>");

std::string serialize_pool(const LocationPool& pool);
LocationPool parse_pool(const std::string& text,
                        const std::string& origin = "<pool>");

/// Uniform random pool over the region; ids are 0..count-1.
LocationPool generate_pool(const Region& region, int count,
                           std::uint64_t seed);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Minimal CSV writer: the header is fixed by the caller and rows are
/// appended as formatted fields.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);
  void add_row(const std::vector<std::string>& fields);
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t row_count() const { return rows_.size(); }
  std::string to_string() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> rows_;
};

}  // namespace evonet
