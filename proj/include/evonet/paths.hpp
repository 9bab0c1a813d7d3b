#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evonet/geometry.hpp"

namespace evonet {

enum class Exec { Serial, Parallel };

/// Compact index-space working graph. Node indices run 0..n-1 in ascending
/// node-id order, so index comparisons realize the id tie-break rules.
class WorkGraph {
 public:
  /// Complete metric over the given points; starts with no links.
  static WorkGraph from_points(const std::vector<Point>& points);
  /// Metric known only on existing links (lengths taken from the links).
  static WorkGraph from_network(const Network& net);

  int size() const { return n_; }
  NodeId id_of(int index) const { return ids_[index]; }
  int index_of(NodeId id) const;  // throws if unknown

  double length(int i, int j) const { return dist_[i * n_ + j]; }
  bool has_edge(int i, int j) const { return adj_[i * n_ + j] != 0; }
  void add_edge(int i, int j);
  void remove_edge(int i, int j);
  const std::vector<int>& neighbors(int i) const { return nbr_[i]; }
  std::vector<std::pair<int, int>> edges() const;  // i < j, sorted
  int edge_count() const { return edge_count_; }

  Network to_network() const;

 private:
  int n_ = 0;
  int edge_count_ = 0;
  std::vector<NodeId> ids_;
  std::vector<double> dist_;
  std::vector<std::uint8_t> adj_;
  std::vector<std::vector<int>> nbr_;
};

/// One u-v path: minimum delay, then fewest hops, then lexicographically
/// smallest node sequence (read from the smaller-id endpoint).
struct PathResult {
  bool exists = false;
  double delay = 0.0;
  int hops = 0;
  std::vector<NodeId> nodes;  // from u to v in the caller's orientation
};

PathResult primary_path(const Network& net, NodeId u, NodeId v);

/// Shortest u-v path after removing the primary's interior nodes and the
/// primary's own links (so a one-hop primary cannot double as secondary).
PathResult secondary_path(const Network& net, NodeId u, NodeId v,
                          const PathResult& primary);

enum class ViolationReason { NoPrimary, NoSecondary, PrimaryDelay, SecondaryDelay };

const char* to_string(ViolationReason reason);

struct Violation {
  NodeId u = 0;
  NodeId v = 0;
  ViolationReason reason = ViolationReason::NoPrimary;
  double delay = 0.0;  // offending delay when applicable
  double bound = 0.0;
};

struct AcceptanceReport {
  bool ok = false;
  std::optional<Violation> first;
};

/// Every unordered pair must have node-disjoint primary and secondary
/// paths with delays <= bound. Reports the first violating pair in
/// lexicographic id order.
AcceptanceReport check_acceptable(const Network& net, double delay_bound);

/// Index-space paths for one unordered pair, as used by the design loops
/// and the metrics kernels.
struct PairEntry {
  bool prim_ok = false;
  bool sec_ok = false;
  double prim_delay = 0.0;
  double sec_delay = 0.0;
  int prim_hops = 0;
  std::vector<int> prim_nodes;  // lo..hi; filled by PrimaryPaths and Full
  std::vector<int> sec_nodes;   // filled by Full
};

/// What an all-pairs build materializes. Delay and hop labels come straight
/// from the Dijkstra passes; node sequences require reconstruction and the
/// secondaries dominate the cost, so callers ask only for what they use.
enum class PairTableMode { PrimaryDelays, PrimaryPaths, Full };

/// All-pairs path table.
///
/// The parallel build and the serial build produce identical tables; the
/// serial one is the reference implementation and the benchmark baseline.
struct PairTable {
  int n = 0;
  std::vector<PairEntry> entries;

  static std::size_t pair_index(int n, int i, int j);
  const PairEntry& at(int i, int j) const;

  static PairTable build(const WorkGraph& g, PairTableMode mode,
                         Exec exec = Exec::Parallel);
};

/// Scratch buffers and single-pair evaluation used by the incremental
/// design engine; exposed for tests and benchmarks.
struct DijkstraBuf {
  std::vector<double> delay;
  std::vector<int> hops;
  std::vector<std::uint8_t> done;
  std::vector<std::uint8_t> blocked;
};

/// Recomputes one pair from scratch on the current graph.
PairEntry eval_pair(const WorkGraph& g, int lo, int hi, DijkstraBuf& a,
                    DijkstraBuf& b);

/// Recomputes only the secondary of an entry whose primary is still valid
/// on the current graph (used after removing a link the primary avoids).
void eval_secondary(const WorkGraph& g, int lo, int hi, PairEntry& entry,
                    DijkstraBuf& buf);

}  // namespace evonet
