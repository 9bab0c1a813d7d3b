#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace evonet {

using NodeId = std::int32_t;

/// Relative tolerance used for all cost comparisons in this project.
/// Lengths derive from coordinates, so exact ties are rare; tests that
/// construct ties compare exactly.
inline constexpr double kCostRelTol = 1e-9;

inline bool approx_equal(double a, double b, double rel = kCostRelTol) {
  double scale = std::fmax(1.0, std::fmax(std::fabs(a), std::fabs(b)));
  return std::fabs(a - b) <= rel * scale;
}

/// Strict improvement: a is lower than b beyond float noise.
inline bool strictly_less(double a, double b, double rel = kCostRelTol) {
  double scale = std::fmax(1.0, std::fmax(std::fabs(a), std::fabs(b)));
  return a < b - rel * scale;
}

struct Point {
  NodeId id = 0;
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point& p, const Point& q);

struct Region {
  double width = 0.0;
  double height = 0.0;

  double area() const { return width * height; }
  double diagonal() const { return std::sqrt(width * width + height * height); }
};

/// The fixed set of candidate node locations an experiment draws from.
struct LocationPool {
  Region region;
  std::vector<Point> points;  // unique ids, all inside region

  double density() const;
  const Point& by_id(NodeId id) const;  // throws if unknown
  bool contains(NodeId id) const;
};

/// A link is identified by its unordered endpoint pair; the Euclidean
/// length is cached at construction. Two links are the same design element
/// iff they join the same two sites.
struct Link {
  NodeId a = 0;  // smaller id
  NodeId b = 0;  // larger id
  double length = 0.0;

  Link() = default;
  Link(NodeId u, NodeId v, double len);
  static Link between(const Point& p, const Point& q);

  friend bool operator==(const Link& x, const Link& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend auto operator<=>(const Link& x, const Link& y) {
    return std::pair(x.a, x.b) <=> std::pair(y.a, y.b);
  }
};

/// Undirected network over a node-id set. Kept sorted so link sets compare
/// and serialize deterministically.
struct Network {
  std::vector<NodeId> nodes;  // sorted, unique
  std::vector<Link> links;    // sorted by (a, b), unique

  static Network over(std::vector<NodeId> node_ids);

  bool has_node(NodeId id) const;
  bool has_link(NodeId u, NodeId v) const;
  void add_link(Link link);     // throws on duplicate or foreign endpoint
  void remove_link(NodeId u, NodeId v);  // throws if absent
  double cost() const;          // sum of link lengths
};

double network_cost(const Network& net);

/// Previously purchased links currently out of service.
struct Inventory {
  std::vector<Link> links;  // sorted, unique

  double value() const;
  bool contains(const Link& link) const;
};

struct ModificationResult {
  std::vector<Link> mod_set;  // links purchased new
  double mod_cost = 0.0;
  Inventory new_inventory;    // elements parked after the change
};

/// Set accounting for one design step: what must be bought, and what moves
/// to the inventory. mod_set = new \ (prev ∪ inv); new_inv = (prev ∪ inv) \ new.
ModificationResult account_modification(const Network& prev_net,
                                        const Inventory& prev_inv,
                                        const Network& new_net);

/// Cost series over environments 0..K. mod[0] is 0 by convention and
/// inv[0] must be 0.
struct CostLedger {
  std::vector<double> evo;
  std::vector<double> mod;
  std::vector<double> inv;
  std::vector<double> opt;
};

struct LedgerCheck {
  bool ok = true;
  int first_bad_index = -1;
  std::string detail;
};

/// Checks the recursive identity evo[k] = evo[k-1] + mod[k] - (inv[k] -
/// inv[k-1]) at every k >= 1 and its telescoped form at the final index,
/// both to relative tolerance 1e-9.
LedgerCheck verify_ledger(const CostLedger& ledger);

}  // namespace evonet
