#pragma once

#include <utility>
#include <vector>

#include "evonet/geometry.hpp"
#include "evonet/rng.hpp"

namespace evonet {

/// Closed tour over >= 3 points. The stored order is canonical: it starts
/// at the smallest node id and proceeds toward the smaller of that node's
/// two neighbors, so equal rings compare equal.
struct Ring {
  std::vector<Point> tour;
  double cost = 0.0;

  static Ring from_tour(std::vector<Point> tour);
  Network to_network() const;
  bool contains(NodeId id) const;
};

/// Improvement threshold for 2-opt moves; also the bound checked by the
/// local-optimality property tests.
inline constexpr double kTwoOptEpsilon = 1e-9;

/// Tour construction: nearest-neighbor from every start node keeping the
/// best, then first-improvement 2-opt to a local optimum; repeated with
/// randomized start nodes `restarts` times in total. Best tour wins, ties
/// by canonical order.
Ring tsp_heuristic(const std::vector<Point>& points, Rng& rng, int restarts);

/// Exhaustive optimum for 3..10 points. Oracle-grade, factorial time.
Ring tsp_bruteforce(const std::vector<Point>& points);

/// Splices z between the adjacent ring pair (x, y) that minimizes
/// |z-x| + |z-y|; the displaced link (x, y) is dropped from the ring.
/// Returns the new ring and the purchased length |z-x| + |z-y|.
std::pair<Ring, double> insert_node(const Ring& ring, const Point& z);

/// Repeatedly inserts the pending node with the globally cheapest splice
/// until none remain. Returns the final ring and the summed purchase cost.
std::pair<Ring, double> insert_nodes_greedy(const Ring& ring,
                                            const std::vector<Point>& zs);

/// TSPLIB document for an instance (EUC_2D, 1-based node numbering).
std::string export_tsplib(const std::vector<Point>& points,
                          const std::string& name);

}  // namespace evonet
