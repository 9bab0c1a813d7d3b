#include "evonet/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace evonet {

double distance(const Point& p, const Point& q) {
  double dx = p.x - q.x;
  double dy = p.y - q.y;
  return std::sqrt(dx * dx + dy * dy);
}

double LocationPool::density() const {
  double a = region.area();
  if (a <= 0.0) throw std::invalid_argument("pool region has no area");
  return static_cast<double>(points.size()) / a;
}

const Point& LocationPool::by_id(NodeId id) const {
  for (const Point& p : points) {
    if (p.id == id) return p;
  }
  throw std::out_of_range("unknown node id in pool: " + std::to_string(id));
}

bool LocationPool::contains(NodeId id) const {
  for (const Point& p : points) {
    if (p.id == id) return true;
  }
  return false;
}

Link::Link(NodeId u, NodeId v, double len) {
  if (u == v) throw std::invalid_argument("link endpoints must differ");
  a = std::min(u, v);
  b = std::max(u, v);
  length = len;
}

Link Link::between(const Point& p, const Point& q) {
  return Link(p.id, q.id, distance(p, q));
}

Network Network::over(std::vector<NodeId> node_ids) {
  std::sort(node_ids.begin(), node_ids.end());
  if (std::adjacent_find(node_ids.begin(), node_ids.end()) != node_ids.end()) {
    throw std::invalid_argument("duplicate node ids");
  }
  Network net;
  net.nodes = std::move(node_ids);
  return net;
}

bool Network::has_node(NodeId id) const {
  return std::binary_search(nodes.begin(), nodes.end(), id);
}

bool Network::has_link(NodeId u, NodeId v) const {
  Link probe(u, v, 0.0);
  auto it = std::lower_bound(links.begin(), links.end(), probe);
  return it != links.end() && *it == probe;
}

void Network::add_link(Link link) {
  if (!has_node(link.a) || !has_node(link.b)) {
    throw std::invalid_argument("link endpoint not in node set");
  }
  auto it = std::lower_bound(links.begin(), links.end(), link);
  if (it != links.end() && *it == link) {
    throw std::invalid_argument("duplicate link");
  }
  links.insert(it, link);
}

void Network::remove_link(NodeId u, NodeId v) {
  Link probe(u, v, 0.0);
  auto it = std::lower_bound(links.begin(), links.end(), probe);
  if (it == links.end() || !(*it == probe)) {
    throw std::invalid_argument("removing absent link");
  }
  links.erase(it);
}

double Network::cost() const { return network_cost(*this); }

double network_cost(const Network& net) {
  double total = 0.0;
  for (const Link& l : net.links) total += l.length;
  return total;
}

double Inventory::value() const {
  double total = 0.0;
  for (const Link& l : links) total += l.length;
  return total;
}

bool Inventory::contains(const Link& link) const {
  auto it = std::lower_bound(links.begin(), links.end(), link);
  return it != links.end() && *it == link;
}

ModificationResult account_modification(const Network& prev_net,
                                        const Inventory& prev_inv,
                                        const Network& new_net) {
  std::vector<Link> available;  // prev ∪ inv
  std::set_union(prev_net.links.begin(), prev_net.links.end(),
                 prev_inv.links.begin(), prev_inv.links.end(),
                 std::back_inserter(available));

  ModificationResult result;
  std::set_difference(new_net.links.begin(), new_net.links.end(),
                      available.begin(), available.end(),
                      std::back_inserter(result.mod_set));
  std::set_difference(available.begin(), available.end(),
                      new_net.links.begin(), new_net.links.end(),
                      std::back_inserter(result.new_inventory.links));
  for (const Link& l : result.mod_set) result.mod_cost += l.length;
  return result;
}

LedgerCheck verify_ledger(const CostLedger& ledger) {
  LedgerCheck check;
  std::size_t k_max = ledger.evo.size();
  if (k_max < 2 || ledger.mod.size() != k_max || ledger.inv.size() != k_max) {
    return {false, 0, "ledger needs aligned evo/mod/inv series with k >= 1"};
  }
  if (ledger.inv[0] != 0.0) {
    return {false, 0, "initial inventory cost must be 0"};
  }
  for (std::size_t k = 1; k < k_max; ++k) {
    double expect = ledger.evo[k - 1] + ledger.mod[k] -
                    (ledger.inv[k] - ledger.inv[k - 1]);
    if (!approx_equal(ledger.evo[k], expect)) {
      return {false, static_cast<int>(k),
              "recursive cost identity violated at k=" + std::to_string(k)};
    }
  }
  double mod_sum = std::accumulate(ledger.mod.begin() + 1, ledger.mod.end(), 0.0);
  double closed = ledger.evo[0] + mod_sum - ledger.inv[k_max - 1];
  if (!approx_equal(ledger.evo[k_max - 1], closed)) {
    return {false, static_cast<int>(k_max - 1),
            "closed-form cost identity violated at final index"};
  }
  return check;
}

}  // namespace evonet
