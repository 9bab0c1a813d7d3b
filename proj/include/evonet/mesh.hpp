#pragma once

#include <stdexcept>
#include <vector>

#include "evonet/geometry.hpp"
#include "evonet/paths.hpp"
#include "evonet/rng.hpp"

namespace evonet {

struct DesignParams {
  double delay_bound = 0.0;  // D; callers usually set 1.3 x region diagonal
  double p_add = 0.9;
  double p_del = 0.9;
  int stall_window = 10;   // consecutive non-improving iterations before stop
  int max_iterations = 500;
  int tsp_restarts = 8;    // initial-ring heuristic budget

  void validate() const;
};

enum class InventoryPolicy { Inventory, Ownership, Leasing };

const char* to_string(InventoryPolicy policy);
InventoryPolicy inventory_policy_from_string(const std::string& name);

/// Primary path plus its node-disjoint secondary (absent when the graph
/// offers none).
struct PathPair {
  PathResult primary;
  PathResult secondary;
};

PathPair compute_path_pair(const Network& net, NodeId u, NodeId v);

AcceptanceReport is_acceptable(const Network& net, const DesignParams& params);

struct NoAcceptableNetworkError : std::runtime_error {
  NoAcceptableNetworkError(const std::string& what, Violation last_violation)
      : std::runtime_error(what), last(last_violation) {}
  Violation last;
};

struct OptIterationResult {
  Network network;
  bool found = false;
};

/// One probabilistic clean-slate pass: start from the heuristic ring, add
/// complement links in increasing length order (each with p_add) until the
/// network is acceptable, then sweep all links in decreasing length order
/// removing each with p_del when acceptability survives.
OptIterationResult opt_iteration(const std::vector<Point>& nodes,
                                 const DesignParams& params, Rng& rng);

struct OptDesignResult {
  Network network;
  std::vector<double> best_cost_history;  // best-so-far after each iteration
  int iterations = 0;
};

/// Repeats opt_iteration, keeping the cheapest acceptable network, until
/// stall_window consecutive iterations fail to improve it.
OptDesignResult opt_design(const std::vector<Point>& nodes,
                           const DesignParams& params, Rng& rng);

struct EvoIterationResult {
  Network network;
  Inventory inventory;
  bool found = false;
};

/// One incremental pass: seed with the previous network plus inventory
/// links, attach each new node to the endpoints of the existing link that
/// minimizes the two connection lengths (the displaced link's fate depends
/// on the policy), then the probabilistic add phase and two delete phases
/// (new links first, inherited links second; Ownership skips the second).
EvoIterationResult evo_iteration(const std::vector<Point>& prev_points,
                                 const Network& prev_net,
                                 const Inventory& prev_inv,
                                 const std::vector<Point>& new_nodes,
                                 const DesignParams& params,
                                 InventoryPolicy policy, Rng& rng);

struct EvoDesignResult {
  Network network;
  Inventory inventory;
  double mod_cost = 0.0;
  std::vector<double> best_mod_history;
  int iterations = 0;
};

/// Repeats evo_iteration keeping the candidate with minimal modification
/// cost (ties by total cost); the returned inventory is recomputed from
/// the winning network.
EvoDesignResult evo_design(const std::vector<Point>& prev_points,
                           const Network& prev_net, const Inventory& prev_inv,
                           const std::vector<Point>& new_nodes,
                           const DesignParams& params, InventoryPolicy policy,
                           Rng& rng);

}  // namespace evonet
