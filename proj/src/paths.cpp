#include "evonet/paths.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace evonet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Array-based Dijkstra keyed on (delay, hops); the graphs here are small
/// and dense enough that the O(n^2) scan beats a heap.
/// `blocked` marks excluded nodes (may be null); (ex_a, ex_b) is one
/// excluded undirected edge, or (-1, -1).
void run_dijkstra(const WorkGraph& g, int src, const std::uint8_t* blocked,
                  int ex_a, int ex_b, DijkstraBuf& buf) {
  int n = g.size();
  buf.delay.assign(n, kInf);
  buf.hops.assign(n, 0);
  buf.done.assign(n, 0);
  buf.delay[src] = 0.0;
  for (;;) {
    int cur = -1;
    double best_d = kInf;
    int best_h = 0;
    for (int i = 0; i < n; ++i) {
      if (buf.done[i] || buf.delay[i] == kInf) continue;
      if (blocked && blocked[i]) continue;
      if (cur < 0 || buf.delay[i] < best_d ||
          (buf.delay[i] == best_d && buf.hops[i] < best_h)) {
        cur = i;
        best_d = buf.delay[i];
        best_h = buf.hops[i];
      }
    }
    if (cur < 0) break;
    buf.done[cur] = 1;
    for (int w : g.neighbors(cur)) {
      if (buf.done[w] || (blocked && blocked[w])) continue;
      if ((cur == ex_a && w == ex_b) || (cur == ex_b && w == ex_a)) continue;
      double nd = buf.delay[cur] + g.length(cur, w);
      int nh = buf.hops[cur] + 1;
      if (nd < buf.delay[w] || (nd == buf.delay[w] && nh < buf.hops[w])) {
        buf.delay[w] = nd;
        buf.hops[w] = nh;
      }
    }
  }
}

/// Walks from lo toward hi choosing at each step the smallest-index
/// neighbor whose remaining labels certify an optimal continuation. The
/// labels come from a Dijkstra rooted at hi, so the certifying equalities
/// hold exactly in floating point for at least one neighbor per step.
std::vector<int> reconstruct_path(const WorkGraph& g, int lo, int hi,
                                  const DijkstraBuf& to_hi,
                                  const std::uint8_t* blocked, int ex_a,
                                  int ex_b) {
  std::vector<int> path;
  path.push_back(lo);
  int cur = lo;
  while (cur != hi) {
    int next = -1;
    for (int w : g.neighbors(cur)) {
      if (blocked && blocked[w]) continue;
      if ((cur == ex_a && w == ex_b) || (cur == ex_b && w == ex_a)) continue;
      if (to_hi.delay[w] == kInf) continue;
      if (g.length(cur, w) + to_hi.delay[w] == to_hi.delay[cur] &&
          to_hi.hops[w] + 1 == to_hi.hops[cur]) {
        if (next < 0 || w < next) next = w;
      }
    }
    if (next < 0) throw std::logic_error("path reconstruction lost the trail");
    path.push_back(next);
    cur = next;
  }
  return path;
}

PairEntry eval_pair_with_primary_labels(const WorkGraph& g, int lo, int hi,
                                        const DijkstraBuf& from_hi,
                                        DijkstraBuf& scratch) {
  PairEntry entry;
  if (from_hi.delay[lo] == kInf) return entry;
  entry.prim_ok = true;
  entry.prim_delay = from_hi.delay[lo];
  entry.prim_nodes = reconstruct_path(g, lo, hi, from_hi, nullptr, -1, -1);

  scratch.blocked.assign(g.size(), 0);
  for (std::size_t i = 1; i + 1 < entry.prim_nodes.size(); ++i) {
    scratch.blocked[entry.prim_nodes[i]] = 1;
  }
  int ex_a = -1, ex_b = -1;
  if (entry.prim_nodes.size() == 2) {  // one-hop primary: bar its link too
    ex_a = lo;
    ex_b = hi;
  }
  run_dijkstra(g, hi, scratch.blocked.data(), ex_a, ex_b, scratch);
  if (scratch.delay[lo] == kInf) return entry;
  entry.sec_ok = true;
  entry.sec_delay = scratch.delay[lo];
  entry.sec_nodes =
      reconstruct_path(g, lo, hi, scratch, scratch.blocked.data(), ex_a, ex_b);
  return entry;
}

PathResult to_path_result(const WorkGraph& g, const std::vector<int>& nodes,
                          double delay, bool oriented_from_first) {
  PathResult out;
  out.exists = true;
  out.delay = delay;
  out.hops = static_cast<int>(nodes.size()) - 1;
  out.nodes.reserve(nodes.size());
  for (int idx : nodes) out.nodes.push_back(g.id_of(idx));
  if (!oriented_from_first) std::reverse(out.nodes.begin(), out.nodes.end());
  return out;
}

}  // namespace

WorkGraph WorkGraph::from_points(const std::vector<Point>& points) {
  WorkGraph g;
  g.n_ = static_cast<int>(points.size());
  std::vector<Point> sorted = points;
  std::sort(sorted.begin(), sorted.end(),
            [](const Point& a, const Point& b) { return a.id < b.id; });
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (sorted[i].id == sorted[i + 1].id) {
      throw std::invalid_argument("duplicate node id");
    }
  }
  g.ids_.reserve(g.n_);
  for (const Point& p : sorted) g.ids_.push_back(p.id);
  g.dist_.assign(static_cast<std::size_t>(g.n_) * g.n_, 0.0);
  g.adj_.assign(static_cast<std::size_t>(g.n_) * g.n_, 0);
  g.nbr_.assign(g.n_, {});
  for (int i = 0; i < g.n_; ++i) {
    for (int j = i + 1; j < g.n_; ++j) {
      double d = distance(sorted[i], sorted[j]);
      g.dist_[i * g.n_ + j] = d;
      g.dist_[j * g.n_ + i] = d;
    }
  }
  return g;
}

WorkGraph WorkGraph::from_network(const Network& net) {
  WorkGraph g;
  g.n_ = static_cast<int>(net.nodes.size());
  g.ids_ = net.nodes;  // already sorted
  g.dist_.assign(static_cast<std::size_t>(g.n_) * g.n_, kInf);
  g.adj_.assign(static_cast<std::size_t>(g.n_) * g.n_, 0);
  g.nbr_.assign(g.n_, {});
  for (const Link& l : net.links) {
    int i = g.index_of(l.a);
    int j = g.index_of(l.b);
    g.dist_[i * g.n_ + j] = l.length;
    g.dist_[j * g.n_ + i] = l.length;
    g.add_edge(i, j);
  }
  return g;
}

int WorkGraph::index_of(NodeId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) {
    throw std::invalid_argument("unknown node id: " + std::to_string(id));
  }
  return static_cast<int>(it - ids_.begin());
}

void WorkGraph::add_edge(int i, int j) {
  if (i == j || adj_[i * n_ + j]) {
    throw std::invalid_argument("bad edge insert");
  }
  adj_[i * n_ + j] = adj_[j * n_ + i] = 1;
  nbr_[i].insert(std::upper_bound(nbr_[i].begin(), nbr_[i].end(), j), j);
  nbr_[j].insert(std::upper_bound(nbr_[j].begin(), nbr_[j].end(), i), i);
  ++edge_count_;
}

void WorkGraph::remove_edge(int i, int j) {
  if (!adj_[i * n_ + j]) throw std::invalid_argument("removing absent edge");
  adj_[i * n_ + j] = adj_[j * n_ + i] = 0;
  nbr_[i].erase(std::lower_bound(nbr_[i].begin(), nbr_[i].end(), j));
  nbr_[j].erase(std::lower_bound(nbr_[j].begin(), nbr_[j].end(), i));
  --edge_count_;
}

std::vector<std::pair<int, int>> WorkGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (int i = 0; i < n_; ++i) {
    for (int j : nbr_[i]) {
      if (j > i) out.emplace_back(i, j);
    }
  }
  return out;
}

Network WorkGraph::to_network() const {
  Network net = Network::over(ids_);
  for (auto [i, j] : edges()) {
    net.add_link(Link(ids_[i], ids_[j], length(i, j)));
  }
  return net;
}

const char* to_string(ViolationReason reason) {
  switch (reason) {
    case ViolationReason::NoPrimary: return "no-primary";
    case ViolationReason::NoSecondary: return "no-secondary";
    case ViolationReason::PrimaryDelay: return "primary-delay";
    case ViolationReason::SecondaryDelay: return "secondary-delay";
  }
  return "?";
}

PairEntry eval_pair(const WorkGraph& g, int lo, int hi, DijkstraBuf& a,
                    DijkstraBuf& b) {
  run_dijkstra(g, hi, nullptr, -1, -1, a);
  return eval_pair_with_primary_labels(g, lo, hi, a, b);
}

void eval_secondary(const WorkGraph& g, int lo, int hi, PairEntry& entry,
                    DijkstraBuf& buf) {
  buf.blocked.assign(g.size(), 0);
  for (std::size_t i = 1; i + 1 < entry.prim_nodes.size(); ++i) {
    buf.blocked[entry.prim_nodes[i]] = 1;
  }
  int ex_a = -1, ex_b = -1;
  if (entry.prim_nodes.size() == 2) {
    ex_a = lo;
    ex_b = hi;
  }
  run_dijkstra(g, hi, buf.blocked.data(), ex_a, ex_b, buf);
  entry.sec_ok = buf.delay[lo] != kInf;
  entry.sec_nodes.clear();
  entry.sec_delay = 0.0;
  if (entry.sec_ok) {
    entry.sec_delay = buf.delay[lo];
    entry.sec_nodes =
        reconstruct_path(g, lo, hi, buf, buf.blocked.data(), ex_a, ex_b);
  }
}

PathResult primary_path(const Network& net, NodeId u, NodeId v) {
  if (u == v) throw std::invalid_argument("path endpoints must differ");
  WorkGraph g = WorkGraph::from_network(net);
  int iu = g.index_of(u);
  int iv = g.index_of(v);
  int lo = std::min(iu, iv), hi = std::max(iu, iv);
  DijkstraBuf buf;
  run_dijkstra(g, hi, nullptr, -1, -1, buf);
  if (buf.delay[lo] == kInf) return {};
  auto nodes = reconstruct_path(g, lo, hi, buf, nullptr, -1, -1);
  return to_path_result(g, nodes, buf.delay[lo], iu == lo);
}

PathResult secondary_path(const Network& net, NodeId u, NodeId v,
                          const PathResult& primary) {
  if (!primary.exists || primary.nodes.size() < 2) {
    throw std::invalid_argument("secondary needs a valid primary path");
  }
  WorkGraph g = WorkGraph::from_network(net);
  int iu = g.index_of(u);
  int iv = g.index_of(v);
  int lo = std::min(iu, iv), hi = std::max(iu, iv);
  DijkstraBuf buf;
  buf.blocked.assign(g.size(), 0);
  for (std::size_t i = 1; i + 1 < primary.nodes.size(); ++i) {
    buf.blocked[g.index_of(primary.nodes[i])] = 1;
  }
  int ex_a = -1, ex_b = -1;
  if (primary.nodes.size() == 2) {
    ex_a = lo;
    ex_b = hi;
  }
  run_dijkstra(g, hi, buf.blocked.data(), ex_a, ex_b, buf);
  if (buf.delay[lo] == kInf) return {};
  auto nodes =
      reconstruct_path(g, lo, hi, buf, buf.blocked.data(), ex_a, ex_b);
  return to_path_result(g, nodes, buf.delay[lo], iu == lo);
}

AcceptanceReport check_acceptable(const Network& net, double delay_bound) {
  if (net.nodes.size() < 2) {
    throw std::invalid_argument("acceptability needs >= 2 nodes");
  }
  WorkGraph g = WorkGraph::from_network(net);
  DijkstraBuf a, b;
  int n = g.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      PairEntry entry = eval_pair(g, i, j, a, b);
      Violation viol{g.id_of(i), g.id_of(j), ViolationReason::NoPrimary, 0.0,
                     delay_bound};
      if (!entry.prim_ok) {
        return {false, viol};
      }
      if (entry.prim_delay > delay_bound) {
        viol.reason = ViolationReason::PrimaryDelay;
        viol.delay = entry.prim_delay;
        return {false, viol};
      }
      if (!entry.sec_ok) {
        viol.reason = ViolationReason::NoSecondary;
        return {false, viol};
      }
      if (entry.sec_delay > delay_bound) {
        viol.reason = ViolationReason::SecondaryDelay;
        viol.delay = entry.sec_delay;
        return {false, viol};
      }
    }
  }
  return {true, std::nullopt};
}

std::size_t PairTable::pair_index(int n, int i, int j) {
  // lexicographic over (i, j), i < j
  return static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i + 1) / 2 +
         (j - i - 1);
}

const PairEntry& PairTable::at(int i, int j) const {
  return entries[pair_index(n, std::min(i, j), std::max(i, j))];
}

PairTable PairTable::build(const WorkGraph& g, bool with_secondaries,
                           Exec exec) {
  PairTable table;
  int n = g.size();
  table.n = n;
  table.entries.assign(static_cast<std::size_t>(n) * (n - 1) / 2, {});

  auto source_pass = [&](int hi, DijkstraBuf& a, DijkstraBuf& b) {
    run_dijkstra(g, hi, nullptr, -1, -1, a);
    for (int lo = 0; lo < hi; ++lo) {
      PairEntry& entry = table.entries[pair_index(n, lo, hi)];
      if (a.delay[lo] == kInf) continue;
      if (with_secondaries) {
        entry = eval_pair_with_primary_labels(g, lo, hi, a, b);
      } else {
        entry.prim_ok = true;
        entry.prim_delay = a.delay[lo];
        entry.prim_nodes = reconstruct_path(g, lo, hi, a, nullptr, -1, -1);
      }
    }
  };

#ifdef _OPENMP
  if (exec == Exec::Parallel) {
#pragma omp parallel
    {
      DijkstraBuf a, b;
#pragma omp for schedule(dynamic)
      for (int hi = 1; hi < n; ++hi) source_pass(hi, a, b);
    }
    return table;
  }
#else
  (void)exec;
#endif
  DijkstraBuf a, b;
  for (int hi = 1; hi < n; ++hi) source_pass(hi, a, b);
  return table;
}

}  // namespace evonet
