#include "evonet/expansion.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace evonet {

const char* to_string(ExpansionModel model) {
  return model == ExpansionModel::Random ? "random" : "gradual";
}

ExpansionModel expansion_model_from_string(const std::string& name) {
  if (name == "random") return ExpansionModel::Random;
  if (name == "gradual") return ExpansionModel::Gradual;
  throw std::invalid_argument("unknown expansion model: " + name);
}

ExpansionFactor expansion_factor(int n, int m) {
  if (n < 1) throw std::invalid_argument("expansion factor needs n >= 1");
  if (m < 0) throw std::invalid_argument("expansion factor needs m >= 0");
  return ExpansionFactor{n, m};
}

namespace {

std::vector<NodeId> available_ids(const LocationPool& pool,
                                  const std::vector<NodeId>& current) {
  std::vector<NodeId> used = current;
  std::sort(used.begin(), used.end());
  std::vector<NodeId> avail;
  avail.reserve(pool.points.size());
  for (const Point& p : pool.points) {
    if (!std::binary_search(used.begin(), used.end(), p.id)) {
      avail.push_back(p.id);
    }
  }
  std::sort(avail.begin(), avail.end());
  return avail;
}

}  // namespace

std::vector<NodeId> random_step(const LocationPool& pool,
                                const std::vector<NodeId>& current, int count,
                                Rng& rng) {
  if (count < 0) throw std::invalid_argument("negative expansion count");
  std::vector<NodeId> avail = available_ids(pool, current);
  if (static_cast<std::size_t>(count) > avail.size()) {
    throw std::runtime_error("location pool exhausted: need " +
                             std::to_string(count) + ", have " +
                             std::to_string(avail.size()));
  }
  // Partial Fisher-Yates over the id-sorted candidate list: draw order is a
  // function of the rng stream alone.
  std::vector<NodeId> picks;
  picks.reserve(count);
  for (int i = 0; i < count; ++i) {
    std::size_t j = i + static_cast<std::size_t>(
                            rng.uniform_below(avail.size() - i));
    std::swap(avail[i], avail[j]);
    picks.push_back(avail[i]);
  }
  return picks;
}

std::vector<NodeId> gradual_step(const LocationPool& pool,
                                 const std::vector<NodeId>& current,
                                 int count) {
  if (count < 0) throw std::invalid_argument("negative expansion count");
  if (current.empty() && count > 0) {
    throw std::runtime_error("gradual expansion needs at least one anchor node");
  }
  std::vector<NodeId> avail = available_ids(pool, current);
  if (static_cast<std::size_t>(count) > avail.size()) {
    throw std::runtime_error("location pool exhausted");
  }

  std::vector<Point> cand(avail.size());
  for (std::size_t i = 0; i < avail.size(); ++i) cand[i] = pool.by_id(avail[i]);

  // min distance from each candidate to current ∪ picks, updated as picks land
  std::vector<double> min_dist(avail.size(),
                               std::numeric_limits<double>::infinity());
  for (NodeId id : current) {
    const Point& anchor = pool.by_id(id);
    for (std::size_t i = 0; i < avail.size(); ++i) {
      min_dist[i] = std::min(min_dist[i], distance(cand[i], anchor));
    }
  }

  std::vector<NodeId> picks;
  picks.reserve(count);
  std::vector<bool> taken(avail.size(), false);
  for (int step = 0; step < count; ++step) {
    int best = -1;
    for (std::size_t i = 0; i < avail.size(); ++i) {
      if (taken[i]) continue;
      if (best < 0 || min_dist[i] < min_dist[best] ||
          (min_dist[i] == min_dist[best] && avail[i] < avail[best])) {
        best = static_cast<int>(i);
      }
    }
    taken[best] = true;
    picks.push_back(avail[best]);
    const Point chosen = cand[best];
    for (std::size_t i = 0; i < avail.size(); ++i) {
      if (taken[i]) continue;
      min_dist[i] = std::min(min_dist[i], distance(cand[i], chosen));
    }
  }
  return picks;
}

}  // namespace evonet
