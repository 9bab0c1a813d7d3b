#include "evonet/mesh.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <tuple>

#include "evonet/ring.hpp"

namespace evonet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct EdgeCand {
  int i, j;
  double len;
};

bool asc_by_length(const EdgeCand& a, const EdgeCand& b) {
  if (a.len != b.len) return a.len < b.len;
  return std::pair(a.i, a.j) < std::pair(b.i, b.j);
}

bool desc_by_length(const EdgeCand& a, const EdgeCand& b) {
  if (a.len != b.len) return a.len > b.len;
  return std::pair(a.i, a.j) < std::pair(b.i, b.j);
}

bool pair_within_bound(const PairEntry& e, double bound) {
  return e.prim_ok && e.prim_delay <= bound && e.sec_ok && e.sec_delay <= bound;
}

Violation violation_for(const WorkGraph& g, int lo, int hi, const PairEntry& e,
                        double bound) {
  Violation v{g.id_of(lo), g.id_of(hi), ViolationReason::NoPrimary, 0.0, bound};
  if (!e.prim_ok) return v;
  if (e.prim_delay > bound) {
    v.reason = ViolationReason::PrimaryDelay;
    v.delay = e.prim_delay;
    return v;
  }
  if (!e.sec_ok) {
    v.reason = ViolationReason::NoSecondary;
    return v;
  }
  v.reason = ViolationReason::SecondaryDelay;
  v.delay = e.sec_delay;
  return v;
}

std::pair<int, int> unflatten_pair(int n, std::size_t idx) {
  std::size_t row_len = static_cast<std::size_t>(n) - 1;
  int i = 0;
  while (idx >= row_len) {
    idx -= row_len;
    --row_len;
    ++i;
  }
  return {i, i + 1 + static_cast<int>(idx)};
}

/// Incremental acceptability for the add phase. Pairs found OK stay behind
/// the scan cursor and are not re-examined; once the cursor clears every
/// pair, a confirmation pass re-checks the whole network, because a new
/// link can occasionally re-route a primary and spoil a pair that had
/// already passed. No randomness is consumed here, so the shortcutting
/// cannot change the design sequence, only the time it takes.
class AdditionScan {
 public:
  AdditionScan(const WorkGraph& g, double bound) : g_(g), bound_(bound) {
    npairs_ = static_cast<std::size_t>(g.size()) * (g.size() - 1) / 2;
  }

  bool check(std::optional<Violation>* last) {
    if (suspect_) {
      auto [i, j] = *suspect_;
      PairEntry e = eval_pair(g_, i, j, buf_a_, buf_b_);
      if (!pair_within_bound(e, bound_)) {
        if (last) *last = violation_for(g_, i, j, e, bound_);
        return false;
      }
      suspect_.reset();
    }
    while (cursor_ < npairs_) {
      auto [i, j] = unflatten_pair(g_.size(), cursor_);
      PairEntry e = eval_pair(g_, i, j, buf_a_, buf_b_);
      if (!pair_within_bound(e, bound_)) {
        suspect_ = {i, j};
        if (last) *last = violation_for(g_, i, j, e, bound_);
        return false;
      }
      ++cursor_;
    }
    for (std::size_t idx = 0; idx < npairs_; ++idx) {
      auto [i, j] = unflatten_pair(g_.size(), idx);
      PairEntry e = eval_pair(g_, i, j, buf_a_, buf_b_);
      if (!pair_within_bound(e, bound_)) {
        suspect_ = {i, j};
        cursor_ = 0;  // regression: restart the incremental sweep
        if (last) *last = violation_for(g_, i, j, e, bound_);
        return false;
      }
    }
    return true;
  }

 private:
  const WorkGraph& g_;
  double bound_;
  std::size_t npairs_;
  std::size_t cursor_ = 0;
  std::optional<std::pair<int, int>> suspect_;
  DijkstraBuf buf_a_, buf_b_;
};

bool path_uses_edge(const std::vector<int>& nodes, int a, int b) {
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if ((nodes[i] == a && nodes[i + 1] == b) ||
        (nodes[i] == b && nodes[i + 1] == a)) {
      return true;
    }
  }
  return false;
}

/// Shared by OPT's delete phase and EVO's two delete phases: walk the
/// candidates in decreasing length order, drop each with probability p_del
/// whenever acceptability survives the removal. Removing a link leaves
/// every pair whose chosen paths avoid it untouched, so only pairs routed
/// over the link are re-evaluated (against the table of chosen paths).
template <typename OnRemoved>
void deletion_sweep(WorkGraph& g, PairTable& table, std::vector<EdgeCand> order,
                    const DesignParams& params, Rng& rng,
                    OnRemoved on_removed) {
  std::sort(order.begin(), order.end(), desc_by_length);
  DijkstraBuf buf_a, buf_b;
  std::vector<std::size_t> affected;
  std::vector<PairEntry> updated;
  int n = g.size();
  for (const EdgeCand& cand : order) {
    affected.clear();
    updated.clear();
    for (std::size_t idx = 0; idx < table.entries.size(); ++idx) {
      const PairEntry& e = table.entries[idx];
      if (path_uses_edge(e.prim_nodes, cand.i, cand.j) ||
          path_uses_edge(e.sec_nodes, cand.i, cand.j)) {
        affected.push_back(idx);
      }
    }
    bool feasible = true;
    if (!affected.empty()) {
      g.remove_edge(cand.i, cand.j);
      for (std::size_t idx : affected) {
        auto [i, j] = unflatten_pair(n, idx);
        PairEntry fresh;
        if (!path_uses_edge(table.entries[idx].prim_nodes, cand.i, cand.j)) {
          fresh = table.entries[idx];  // primary survives, redo secondary
          eval_secondary(g, i, j, fresh, buf_b);
        } else {
          fresh = eval_pair(g, i, j, buf_a, buf_b);
        }
        if (!pair_within_bound(fresh, params.delay_bound)) {
          feasible = false;
          break;
        }
        updated.push_back(std::move(fresh));
      }
      g.add_edge(cand.i, cand.j);
      if (!feasible) continue;
    }
    if (rng.bernoulli(params.p_del)) {
      g.remove_edge(cand.i, cand.j);
      for (std::size_t k = 0; k < updated.size(); ++k) {
        table.entries[affected[k]] = std::move(updated[k]);
      }
      on_removed(cand);
    }
  }
}

std::vector<EdgeCand> complement_candidates(const WorkGraph& g) {
  std::vector<EdgeCand> out;
  int n = g.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!g.has_edge(i, j)) out.push_back({i, j, g.length(i, j)});
    }
  }
  std::sort(out.begin(), out.end(), asc_by_length);
  return out;
}

std::vector<EdgeCand> current_edges(const WorkGraph& g) {
  std::vector<EdgeCand> out;
  for (auto [i, j] : g.edges()) out.push_back({i, j, g.length(i, j)});
  return out;
}

bool addition_phase(WorkGraph& g, const std::vector<EdgeCand>& candidates,
                    const DesignParams& params, Rng& rng,
                    std::optional<Violation>* last) {
  AdditionScan scan(g, params.delay_bound);
  bool found = scan.check(last);
  for (const EdgeCand& cand : candidates) {
    if (found) break;
    if (!rng.bernoulli(params.p_add)) continue;  // skipped: verdict unchanged
    g.add_edge(cand.i, cand.j);
    found = scan.check(last);
  }
  return found;
}

/// Connect pending nodes one at a time: globally cheapest splice first
/// (sum of the two connection lengths, over all pending nodes x existing
/// links). Exact ties prefer the larger displaced link, then lower ids.
/// Under Ownership the displaced link stays in place.
void attach_new_nodes(WorkGraph& g, const std::vector<int>& new_indices,
                      InventoryPolicy policy) {
  std::vector<int> pending = new_indices;
  std::sort(pending.begin(), pending.end());
  while (!pending.empty()) {
    std::size_t best_zi = 0;
    int best_x = -1, best_y = -1;
    double best_sum = kInf, best_removed = 0.0;
    for (std::size_t zi = 0; zi < pending.size(); ++zi) {
      int z = pending[zi];
      for (auto [x, y] : g.edges()) {
        if (x == z || y == z) continue;
        double sum = g.length(z, x) + g.length(z, y);
        double removed = g.length(x, y);
        bool better =
            best_x < 0 || sum < best_sum ||
            (sum == best_sum && removed > best_removed) ||
            (sum == best_sum && removed == best_removed &&
             std::tuple(z, x, y) <
                 std::tuple(pending[best_zi], best_x, best_y));
        if (better) {
          best_zi = zi;
          best_x = x;
          best_y = y;
          best_sum = sum;
          best_removed = removed;
        }
      }
    }
    if (best_x < 0) throw std::logic_error("attachment found no link to splice");
    int z = pending[best_zi];
    g.add_edge(std::min(z, best_x), std::max(z, best_x));
    g.add_edge(std::min(z, best_y), std::max(z, best_y));
    if (policy != InventoryPolicy::Ownership) g.remove_edge(best_x, best_y);
    pending.erase(pending.begin() + best_zi);
  }
}

OptIterationResult opt_iteration_from(const WorkGraph& metric,
                                      const std::vector<std::pair<int, int>>& ring_edges,
                                      const DesignParams& params, Rng& rng,
                                      std::optional<Violation>* last) {
  WorkGraph g = metric;
  for (auto [i, j] : ring_edges) g.add_edge(i, j);
  std::vector<EdgeCand> candidates = complement_candidates(g);
  bool found = addition_phase(g, candidates, params, rng, last);
  if (!found) return {g.to_network(), false};

  PairTable table = PairTable::build(g, /*with_secondaries=*/true);
  deletion_sweep(g, table, current_edges(g), params, rng,
                 [](const EdgeCand&) {});
  return {g.to_network(), true};
}

std::vector<std::pair<int, int>> ring_edge_indices(const WorkGraph& g,
                                                   const Ring& ring) {
  std::vector<std::pair<int, int>> edges;
  std::size_t n = ring.tour.size();
  for (std::size_t i = 0; i < n; ++i) {
    int a = g.index_of(ring.tour[i].id);
    int b = g.index_of(ring.tour[(i + 1) % n].id);
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  return edges;
}

}  // namespace

void DesignParams::validate() const {
  if (delay_bound <= 0.0) throw std::invalid_argument("delay bound must be > 0");
  if (p_add <= 0.0 || p_add > 1.0 || p_del <= 0.0 || p_del > 1.0) {
    throw std::invalid_argument("probabilities must be in (0, 1]");
  }
  if (stall_window < 1) throw std::invalid_argument("stall window must be >= 1");
  if (max_iterations < 1) throw std::invalid_argument("max iterations must be >= 1");
  if (tsp_restarts < 1) throw std::invalid_argument("tsp restarts must be >= 1");
}

const char* to_string(InventoryPolicy policy) {
  switch (policy) {
    case InventoryPolicy::Inventory: return "inventory";
    case InventoryPolicy::Ownership: return "ownership";
    case InventoryPolicy::Leasing: return "leasing";
  }
  return "?";
}

InventoryPolicy inventory_policy_from_string(const std::string& name) {
  if (name == "inventory") return InventoryPolicy::Inventory;
  if (name == "ownership") return InventoryPolicy::Ownership;
  if (name == "leasing") return InventoryPolicy::Leasing;
  throw std::invalid_argument("unknown inventory policy: " + name);
}

PathPair compute_path_pair(const Network& net, NodeId u, NodeId v) {
  PathPair pair;
  pair.primary = primary_path(net, u, v);
  if (pair.primary.exists) {
    pair.secondary = secondary_path(net, u, v, pair.primary);
  }
  return pair;
}

AcceptanceReport is_acceptable(const Network& net, const DesignParams& params) {
  params.validate();
  return check_acceptable(net, params.delay_bound);
}

OptIterationResult opt_iteration(const std::vector<Point>& nodes,
                                 const DesignParams& params, Rng& rng) {
  params.validate();
  if (nodes.size() < 3) throw std::invalid_argument("design needs >= 3 nodes");
  WorkGraph metric = WorkGraph::from_points(nodes);
  Ring ring = tsp_heuristic(nodes, rng, params.tsp_restarts);
  return opt_iteration_from(metric, ring_edge_indices(metric, ring), params,
                            rng, nullptr);
}

OptDesignResult opt_design(const std::vector<Point>& nodes,
                           const DesignParams& params, Rng& rng) {
  params.validate();
  if (nodes.size() < 3) throw std::invalid_argument("design needs >= 3 nodes");
  WorkGraph metric = WorkGraph::from_points(nodes);
  // Same initial ring for every iteration: the start network is a function
  // of the node set, not of the iteration.
  Ring ring = tsp_heuristic(nodes, rng, params.tsp_restarts);
  std::vector<std::pair<int, int>> ring_edges = ring_edge_indices(metric, ring);

  OptDesignResult result;
  std::optional<Violation> last_violation;
  bool have_best = false;
  double best_cost = kInf;
  int stall = 0;
  while (result.iterations < params.max_iterations) {
    ++result.iterations;
    OptIterationResult iter =
        opt_iteration_from(metric, ring_edges, params, rng, &last_violation);
    bool improved = false;
    if (iter.found) {
      double c = network_cost(iter.network);
      if (!have_best || strictly_less(c, best_cost)) {
        have_best = true;
        best_cost = c;
        result.network = std::move(iter.network);
        improved = true;
      }
    }
    result.best_cost_history.push_back(have_best ? best_cost : kInf);
    stall = improved ? 0 : stall + 1;
    if (have_best && stall >= params.stall_window) break;
  }
  if (!have_best) {
    throw NoAcceptableNetworkError(
        "no acceptable network within iteration budget",
        last_violation.value_or(Violation{}));
  }
  return result;
}

namespace {

struct EvoSeed {
  WorkGraph graph;                      // after inventory merge + attachment
  std::vector<EdgeCand> add_candidates; // complement, increasing length
  std::vector<Link> inherited;          // prev ∪ inv, id space, sorted
};

EvoSeed prepare_evo_seed(const std::vector<Point>& prev_points,
                         const Network& prev_net, const Inventory& prev_inv,
                         const std::vector<Point>& new_nodes,
                         InventoryPolicy policy) {
  std::vector<Point> all_points = prev_points;
  all_points.insert(all_points.end(), new_nodes.begin(), new_nodes.end());

  EvoSeed seed;
  seed.graph = WorkGraph::from_points(all_points);
  std::set_union(prev_net.links.begin(), prev_net.links.end(),
                 prev_inv.links.begin(), prev_inv.links.end(),
                 std::back_inserter(seed.inherited));

  for (const Link& l : seed.inherited) {
    seed.graph.add_edge(seed.graph.index_of(l.a), seed.graph.index_of(l.b));
  }
  std::vector<int> new_indices;
  for (const Point& p : new_nodes) {
    new_indices.push_back(seed.graph.index_of(p.id));
  }
  attach_new_nodes(seed.graph, new_indices, policy);
  seed.add_candidates = complement_candidates(seed.graph);
  return seed;
}

bool link_in(const std::vector<Link>& sorted, NodeId a, NodeId b) {
  Link probe(a, b, 0.0);
  auto it = std::lower_bound(sorted.begin(), sorted.end(), probe);
  return it != sorted.end() && *it == probe;
}

EvoIterationResult evo_iteration_from(const EvoSeed& seed,
                                      const Network& prev_net,
                                      const Inventory& prev_inv,
                                      const DesignParams& params,
                                      InventoryPolicy policy, Rng& rng,
                                      std::optional<Violation>* last) {
  WorkGraph g = seed.graph;
  bool found = addition_phase(g, seed.add_candidates, params, rng, last);
  if (!found) return {g.to_network(), Inventory{}, false};

  PairTable table = PairTable::build(g, /*with_secondaries=*/true);
  auto is_inherited = [&](const EdgeCand& c) {
    return link_in(seed.inherited, g.id_of(c.i), g.id_of(c.j));
  };

  // Phase 1: links bought this environment.
  std::vector<EdgeCand> new_links;
  for (const EdgeCand& c : current_edges(g)) {
    if (!is_inherited(c)) new_links.push_back(c);
  }
  deletion_sweep(g, table, std::move(new_links), params, rng,
                 [](const EdgeCand&) {});

  // Phase 2: inherited links; their removal parks them (Inventory), drops
  // them (Leasing), or is skipped outright (Ownership).
  if (policy != InventoryPolicy::Ownership) {
    std::vector<EdgeCand> old_links;
    for (const EdgeCand& c : current_edges(g)) {
      if (is_inherited(c)) old_links.push_back(c);
    }
    deletion_sweep(g, table, std::move(old_links), params, rng,
                   [](const EdgeCand&) {});
  }

  Network net = g.to_network();
  Inventory inv;
  if (policy == InventoryPolicy::Inventory) {
    inv = account_modification(prev_net, prev_inv, net).new_inventory;
  }
  return {std::move(net), std::move(inv), true};
}

}  // namespace

EvoIterationResult evo_iteration(const std::vector<Point>& prev_points,
                                 const Network& prev_net,
                                 const Inventory& prev_inv,
                                 const std::vector<Point>& new_nodes,
                                 const DesignParams& params,
                                 InventoryPolicy policy, Rng& rng) {
  params.validate();
  EvoSeed seed =
      prepare_evo_seed(prev_points, prev_net, prev_inv, new_nodes, policy);
  return evo_iteration_from(seed, prev_net, prev_inv, params, policy, rng,
                            nullptr);
}

EvoDesignResult evo_design(const std::vector<Point>& prev_points,
                           const Network& prev_net, const Inventory& prev_inv,
                           const std::vector<Point>& new_nodes,
                           const DesignParams& params, InventoryPolicy policy,
                           Rng& rng) {
  params.validate();
  // Seeding and attachment consume no randomness, so they are computed once;
  // every iteration starts from an identical seed state.
  EvoSeed seed =
      prepare_evo_seed(prev_points, prev_net, prev_inv, new_nodes, policy);

  EvoDesignResult result;
  std::optional<Violation> last_violation;
  bool have_best = false;
  double best_mod = kInf;
  double best_total = kInf;
  int stall = 0;
  while (result.iterations < params.max_iterations) {
    ++result.iterations;
    EvoIterationResult iter = evo_iteration_from(seed, prev_net, prev_inv,
                                                 params, policy, rng,
                                                 &last_violation);
    bool improved = false;
    if (iter.found) {
      double mod = account_modification(prev_net, prev_inv, iter.network).mod_cost;
      double total = network_cost(iter.network);
      bool better = !have_best || strictly_less(mod, best_mod);
      // Equal modification cost: prefer the cheaper network, but only a
      // strictly lower modification cost counts as progress for the stall
      // rule.
      bool tie_better = have_best && approx_equal(mod, best_mod) &&
                        strictly_less(total, best_total);
      if (better || tie_better) {
        result.network = std::move(iter.network);
        result.inventory = std::move(iter.inventory);
        result.mod_cost = mod;
        best_total = total;
        if (better) {
          best_mod = mod;
          improved = true;
        }
        have_best = true;
      }
    }
    result.best_mod_history.push_back(have_best ? best_mod : kInf);
    stall = improved ? 0 : stall + 1;
    if (have_best && stall >= params.stall_window) break;
  }
  if (!have_best) {
    throw NoAcceptableNetworkError(
        "no acceptable evolved network within iteration budget",
        last_violation.value_or(Violation{}));
  }
  // The winning network fixes the final inventory.
  if (policy == InventoryPolicy::Inventory) {
    result.inventory =
        account_modification(prev_net, prev_inv, result.network).new_inventory;
  } else {
    result.inventory = Inventory{};
  }
  return result;
}

}  // namespace evonet
