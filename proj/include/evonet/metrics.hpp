#pragma once

#include <map>
#include <string>
#include <vector>

#include "evonet/geometry.hpp"
#include "evonet/paths.hpp"

namespace evonet {

double cost_overhead(double c_evo, double c_opt);      // c_evo/c_opt - 1
double evolvability(double c_mod, double c_opt);       // 1 - c_mod/c_opt
double inventory_overhead(double c_inv, double c_evo);

/// Jaccard coefficient of the two link sets. Requires identical node sets;
/// two empty link sets count as identical (1).
double topological_similarity(const Network& a, const Network& b);

/// Fraction of primary paths with the node strictly inside, over all
/// n(n-1)/2 pairs. Throws if the network is disconnected.
std::map<NodeId, double> node_betweenness(const Network& net);

std::map<std::pair<NodeId, NodeId>, double> link_betweenness(const Network& net);

struct DegreeStatistics {
  std::vector<int> histogram;  // index = degree
  double skewness = 0.0;       // m3 / m2^1.5, population moments; 0 if flat
  double fraction_degree_ge8 = 0.0;
  double fraction_degree_eq2 = 0.0;
};

DegreeStatistics degree_statistics(const Network& net);

/// Mean primary delay of `evo` over mean primary delay of `opt`, across
/// all unordered pairs. Node sets must match; both must be connected.
double primary_delay_ratio(const Network& evo, const Network& opt);

double average_link_length(const Network& net);

/// Per-environment comparison row. `flagged` records a cost overhead below
/// the heuristic slack -0.05, which is reported but not treated as an error.
struct MetricsRecord {
  int k = 0;
  int n = 0;
  double c_opt = 0.0;
  double c_evo = 0.0;
  double c_mod = 0.0;
  double c_inv = 0.0;
  double v = 0.0;
  double e = 0.0;
  double r = 0.0;
  double t = 0.0;
  double mean_node_bc_opt = 0.0;
  double mean_node_bc_evo = 0.0;
  double mean_link_bc_opt = 0.0;
  double mean_link_bc_evo = 0.0;
  double delay_ratio = 0.0;
  double avg_len_opt = 0.0;
  double avg_len_evo = 0.0;
  double skew_opt = 0.0;
  double skew_evo = 0.0;
  bool flagged = false;
};

/// Fills the comparison metrics for one environment from the two designs
/// and the cost ledger entries.
MetricsRecord compare_networks(int k, const Network& opt, const Network& evo,
                               double c_mod, double c_inv);

}  // namespace evonet
