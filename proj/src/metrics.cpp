#include "evonet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evonet {

namespace {

double checked_ratio(double num, double den, const char* what) {
  if (den == 0.0) throw std::invalid_argument(std::string(what) + ": zero denominator");
  return num / den;
}

PairTable primaries_of(const Network& net) {
  WorkGraph g = WorkGraph::from_network(net);
  PairTable table = PairTable::build(g, /*with_secondaries=*/false);
  for (const PairEntry& e : table.entries) {
    if (!e.prim_ok) throw std::invalid_argument("network is disconnected");
  }
  return table;
}

double mean_primary_delay(const PairTable& table) {
  double total = 0.0;
  for (const PairEntry& e : table.entries) total += e.prim_delay;
  return total / static_cast<double>(table.entries.size());
}

}  // namespace

double cost_overhead(double c_evo, double c_opt) {
  return checked_ratio(c_evo, c_opt, "cost_overhead") - 1.0;
}

double evolvability(double c_mod, double c_opt) {
  return 1.0 - checked_ratio(c_mod, c_opt, "evolvability");
}

double inventory_overhead(double c_inv, double c_evo) {
  return checked_ratio(c_inv, c_evo, "inventory_overhead");
}

double topological_similarity(const Network& a, const Network& b) {
  if (a.nodes != b.nodes) {
    throw std::invalid_argument("topological similarity needs equal node sets");
  }
  std::vector<Link> inter, uni;
  std::set_intersection(a.links.begin(), a.links.end(), b.links.begin(),
                        b.links.end(), std::back_inserter(inter));
  std::set_union(a.links.begin(), a.links.end(), b.links.begin(),
                 b.links.end(), std::back_inserter(uni));
  if (uni.empty()) return 1.0;
  return static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

std::map<NodeId, double> node_betweenness(const Network& net) {
  WorkGraph g = WorkGraph::from_network(net);
  PairTable table = primaries_of(net);
  std::vector<double> counts(g.size(), 0.0);
  for (const PairEntry& e : table.entries) {
    for (std::size_t i = 1; i + 1 < e.prim_nodes.size(); ++i) {
      counts[e.prim_nodes[i]] += 1.0;
    }
  }
  double pairs = static_cast<double>(table.entries.size());
  std::map<NodeId, double> bc;
  for (int i = 0; i < g.size(); ++i) bc[g.id_of(i)] = counts[i] / pairs;
  return bc;
}

std::map<std::pair<NodeId, NodeId>, double> link_betweenness(const Network& net) {
  WorkGraph g = WorkGraph::from_network(net);
  PairTable table = primaries_of(net);
  std::map<std::pair<NodeId, NodeId>, double> bc;
  for (const Link& l : net.links) bc[{l.a, l.b}] = 0.0;
  double pairs = static_cast<double>(table.entries.size());
  for (const PairEntry& e : table.entries) {
    for (std::size_t i = 0; i + 1 < e.prim_nodes.size(); ++i) {
      NodeId a = g.id_of(e.prim_nodes[i]);
      NodeId b = g.id_of(e.prim_nodes[i + 1]);
      bc[{std::min(a, b), std::max(a, b)}] += 1.0 / pairs;
    }
  }
  return bc;
}

DegreeStatistics degree_statistics(const Network& net) {
  if (net.nodes.empty()) throw std::invalid_argument("empty network");
  std::map<NodeId, int> degree;
  for (NodeId id : net.nodes) degree[id] = 0;
  for (const Link& l : net.links) {
    ++degree[l.a];
    ++degree[l.b];
  }
  DegreeStatistics stats;
  int max_deg = 0;
  for (const auto& [id, d] : degree) max_deg = std::max(max_deg, d);
  stats.histogram.assign(max_deg + 1, 0);
  double n = static_cast<double>(net.nodes.size());
  double mean = 0.0;
  for (const auto& [id, d] : degree) {
    ++stats.histogram[d];
    mean += d;
    if (d >= 8) stats.fraction_degree_ge8 += 1.0 / n;
    if (d == 2) stats.fraction_degree_eq2 += 1.0 / n;
  }
  mean /= n;
  double m2 = 0.0, m3 = 0.0;
  for (const auto& [id, d] : degree) {
    double c = d - mean;
    m2 += c * c;
    m3 += c * c * c;
  }
  m2 /= n;
  m3 /= n;
  stats.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
  return stats;
}

double primary_delay_ratio(const Network& evo, const Network& opt) {
  if (evo.nodes != opt.nodes) {
    throw std::invalid_argument("delay ratio needs equal node sets");
  }
  return mean_primary_delay(primaries_of(evo)) /
         mean_primary_delay(primaries_of(opt));
}

double average_link_length(const Network& net) {
  if (net.links.empty()) throw std::invalid_argument("no links");
  return network_cost(net) / static_cast<double>(net.links.size());
}

MetricsRecord compare_networks(int k, const Network& opt, const Network& evo,
                               double c_mod, double c_inv) {
  MetricsRecord rec;
  rec.k = k;
  rec.n = static_cast<int>(opt.nodes.size());
  rec.c_opt = network_cost(opt);
  rec.c_evo = network_cost(evo);
  rec.c_mod = c_mod;
  rec.c_inv = c_inv;
  rec.v = cost_overhead(rec.c_evo, rec.c_opt);
  rec.e = evolvability(c_mod, rec.c_opt);
  rec.r = inventory_overhead(c_inv, rec.c_evo);
  rec.t = topological_similarity(opt, evo);
  rec.flagged = rec.v < -0.05;

  PairTable opt_tab = primaries_of(opt);
  PairTable evo_tab = primaries_of(evo);

  // Mean BC over nodes equals the mean interior-node count per primary path
  // divided by n; the analogous identity holds for links.
  auto mean_bc = [](const PairTable& tab, int n) {
    double interior = 0.0;
    for (const PairEntry& e : tab.entries) {
      interior += static_cast<double>(e.prim_nodes.size()) - 2.0;
    }
    return interior / static_cast<double>(tab.entries.size()) / n;
  };
  auto mean_link_bc = [](const PairTable& tab, int links) {
    if (links == 0) return 0.0;
    double hops = 0.0;
    for (const PairEntry& e : tab.entries) {
      hops += static_cast<double>(e.prim_nodes.size()) - 1.0;
    }
    return hops / static_cast<double>(tab.entries.size()) / links;
  };
  rec.mean_node_bc_opt = mean_bc(opt_tab, rec.n);
  rec.mean_node_bc_evo = mean_bc(evo_tab, rec.n);
  rec.mean_link_bc_opt = mean_link_bc(opt_tab, static_cast<int>(opt.links.size()));
  rec.mean_link_bc_evo = mean_link_bc(evo_tab, static_cast<int>(evo.links.size()));
  rec.delay_ratio = mean_primary_delay(evo_tab) / mean_primary_delay(opt_tab);
  rec.avg_len_opt = average_link_length(opt);
  rec.avg_len_evo = average_link_length(evo);
  rec.skew_opt = degree_statistics(opt).skewness;
  rec.skew_evo = degree_statistics(evo).skewness;
  return rec;
}

}  // namespace evonet
