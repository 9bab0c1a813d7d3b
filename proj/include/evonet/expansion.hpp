#pragma once

#include <cstdint>
#include <vector>

#include "evonet/geometry.hpp"
#include "evonet/rng.hpp"

namespace evonet {

enum class ExpansionModel { Random, Gradual };

const char* to_string(ExpansionModel model);
ExpansionModel expansion_model_from_string(const std::string& name);

/// How a dynamic environment unfolds: which pool, how many nodes join at
/// each environment, and under which selection model.
struct ExpansionPlan {
  ExpansionModel model = ExpansionModel::Random;
  std::vector<int> step_counts;  // nodes added per environment, k = 1..
  const LocationPool* pool = nullptr;
  std::uint64_t seed = 0;
};

struct ExpansionFactor {
  int n = 1;  // prior size
  int m = 0;  // added count
  double rho() const { return static_cast<double>(n + m) / n; }
};

ExpansionFactor expansion_factor(int n, int m);

/// Draws `count` ids uniformly without replacement from pool \ current.
std::vector<NodeId> random_step(const LocationPool& pool,
                                const std::vector<NodeId>& current, int count,
                                Rng& rng);

/// Iteratively selects the unused pool location closest to the current
/// node set (including picks already made this step). Distance ties break
/// by smallest candidate id. Returns picks in selection order.
std::vector<NodeId> gradual_step(const LocationPool& pool,
                                 const std::vector<NodeId>& current,
                                 int count);

}  // namespace evonet
