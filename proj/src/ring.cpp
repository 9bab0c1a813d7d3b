#include "evonet/ring.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "evonet/io.hpp"

namespace evonet {

namespace {

double tour_cost(const std::vector<Point>& tour) {
  double total = 0.0;
  for (std::size_t i = 0; i < tour.size(); ++i) {
    total += distance(tour[i], tour[(i + 1) % tour.size()]);
  }
  return total;
}

std::vector<Point> canonicalize(std::vector<Point> tour) {
  std::size_t n = tour.size();
  std::size_t start = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (tour[i].id < tour[start].id) start = i;
  }
  std::rotate(tour.begin(), tour.begin() + start, tour.end());
  if (tour[n - 1].id < tour[1].id) {
    std::reverse(tour.begin() + 1, tour.end());
  }
  return tour;
}

std::vector<NodeId> tour_ids(const Ring& ring) {
  std::vector<NodeId> ids;
  ids.reserve(ring.tour.size());
  for (const Point& p : ring.tour) ids.push_back(p.id);
  return ids;
}

// Nearest-neighbor tour from a fixed start index; ties go to the smaller id.
std::vector<Point> nearest_neighbor_tour(const std::vector<Point>& points,
                                         std::size_t start) {
  std::size_t n = points.size();
  std::vector<bool> used(n, false);
  std::vector<Point> tour;
  tour.reserve(n);
  std::size_t cur = start;
  used[cur] = true;
  tour.push_back(points[cur]);
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t best = n;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      double d = distance(points[cur], points[j]);
      if (d < best_d || (d == best_d && points[j].id < points[best].id)) {
        best_d = d;
        best = j;
      }
    }
    used[best] = true;
    tour.push_back(points[best]);
    cur = best;
  }
  return tour;
}

// First-improvement 2-opt until no move shortens the tour by more than
// kTwoOptEpsilon.
void two_opt(std::vector<Point>& tour) {
  std::size_t n = tour.size();
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Point& a = tour[i - 1];
        const Point& b = tour[i];
        const Point& c = tour[j];
        const Point& d = tour[(j + 1) % n];
        double delta = distance(a, c) + distance(b, d) - distance(a, b) -
                       distance(c, d);
        if (delta < -kTwoOptEpsilon) {
          std::reverse(tour.begin() + i, tour.begin() + j + 1);
          improved = true;
        }
      }
    }
  }
}

bool tour_less(const Ring& lhs, const Ring& rhs) {
  if (lhs.cost != rhs.cost) return lhs.cost < rhs.cost;
  return tour_ids(lhs) < tour_ids(rhs);
}

}  // namespace

Ring Ring::from_tour(std::vector<Point> tour) {
  if (tour.size() < 3) throw std::invalid_argument("ring needs >= 3 nodes");
  std::vector<NodeId> ids;
  for (const Point& p : tour) ids.push_back(p.id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw std::invalid_argument("duplicate node in tour");
  }
  Ring ring;
  ring.tour = canonicalize(std::move(tour));
  ring.cost = tour_cost(ring.tour);
  return ring;
}

Network Ring::to_network() const {
  std::vector<NodeId> ids = tour_ids(*this);
  std::sort(ids.begin(), ids.end());
  Network net = Network::over(ids);
  for (std::size_t i = 0; i < tour.size(); ++i) {
    net.add_link(Link::between(tour[i], tour[(i + 1) % tour.size()]));
  }
  return net;
}

bool Ring::contains(NodeId id) const {
  for (const Point& p : tour) {
    if (p.id == id) return true;
  }
  return false;
}

Ring tsp_heuristic(const std::vector<Point>& points, Rng& rng, int restarts) {
  if (points.size() < 3) throw std::invalid_argument("tsp needs >= 3 points");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  std::size_t n = points.size();

  // Deterministic baseline: best nearest-neighbor tour over all starts.
  std::size_t best_start = 0;
  double best_nn_cost = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < n; ++s) {
    double c = tour_cost(nearest_neighbor_tour(points, s));
    if (c < best_nn_cost) {
      best_nn_cost = c;
      best_start = s;
    }
  }

  Ring best;
  bool have_best = false;
  for (int r = 0; r < restarts; ++r) {
    std::size_t start =
        r == 0 ? best_start : static_cast<std::size_t>(rng.uniform_below(n));
    std::vector<Point> tour = nearest_neighbor_tour(points, start);
    two_opt(tour);
    Ring candidate = Ring::from_tour(std::move(tour));
    if (!have_best || tour_less(candidate, best)) {
      best = std::move(candidate);
      have_best = true;
    }
  }
  return best;
}

Ring tsp_bruteforce(const std::vector<Point>& points) {
  std::size_t n = points.size();
  if (n < 3 || n > 10) {
    throw std::invalid_argument("tsp_bruteforce handles 3..10 points");
  }
  // Fix the first point and half the directions: (n-1)!/2 distinct tours.
  std::vector<std::size_t> perm(n - 1);
  std::iota(perm.begin(), perm.end(), 1);
  Ring best;
  bool have_best = false;
  do {
    if (perm.front() > perm.back()) continue;  // mirror tours skipped
    std::vector<Point> tour;
    tour.reserve(n);
    tour.push_back(points[0]);
    for (std::size_t idx : perm) tour.push_back(points[idx]);
    Ring candidate = Ring::from_tour(std::move(tour));
    if (!have_best || tour_less(candidate, best)) {
      best = std::move(candidate);
      have_best = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::pair<Ring, double> insert_node(const Ring& ring, const Point& z) {
  if (ring.contains(z.id)) {
    throw std::invalid_argument("node already in ring");
  }
  std::size_t n = ring.tour.size();
  std::size_t best_i = 0;
  double best_sum = std::numeric_limits<double>::infinity();
  double best_removed = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& x = ring.tour[i];
    const Point& y = ring.tour[(i + 1) % n];
    double sum = distance(z, x) + distance(z, y);
    double removed = distance(x, y);
    // Primary objective: purchased length. Exact ties prefer the cheaper
    // resulting ring (larger removed edge), then the smaller endpoint pair.
    bool better = sum < best_sum ||
                  (sum == best_sum && removed > best_removed) ||
                  (sum == best_sum && removed == best_removed &&
                   std::minmax(x.id, y.id) <
                       std::minmax(ring.tour[best_i].id,
                                   ring.tour[(best_i + 1) % n].id));
    if (better) {
      best_sum = sum;
      best_removed = removed;
      best_i = i;
    }
  }
  std::vector<Point> tour = ring.tour;
  tour.insert(tour.begin() + best_i + 1, z);
  return {Ring::from_tour(std::move(tour)), best_sum};
}

std::pair<Ring, double> insert_nodes_greedy(const Ring& ring,
                                            const std::vector<Point>& zs) {
  for (const Point& z : zs) {
    if (ring.contains(z.id)) throw std::invalid_argument("node already in ring");
  }
  Ring current = ring;
  std::vector<Point> pending = zs;
  std::sort(pending.begin(), pending.end(),
            [](const Point& a, const Point& b) { return a.id < b.id; });
  double total = 0.0;
  while (!pending.empty()) {
    std::size_t best_z = 0;
    double best_sum = std::numeric_limits<double>::infinity();
    std::size_t n = current.tour.size();
    for (std::size_t zi = 0; zi < pending.size(); ++zi) {
      for (std::size_t i = 0; i < n; ++i) {
        double sum = distance(pending[zi], current.tour[i]) +
                     distance(pending[zi], current.tour[(i + 1) % n]);
        if (sum < best_sum) {
          best_sum = sum;
          best_z = zi;
        }
      }
    }
    auto [next, mod] = insert_node(current, pending[best_z]);
    current = std::move(next);
    total += mod;
    pending.erase(pending.begin() + best_z);
  }
  return {current, total};
}

std::string export_tsplib(const std::vector<Point>& points,
                          const std::string& name) {
  std::ostringstream out;
  out << "NAME: " << name << "\n";
  out << "TYPE: TSP\n";
  out << "DIMENSION: " << points.size() << "\n";
  out << "EDGE_WEIGHT_TYPE: EUC_2D\n";
  out << "NODE_COORD_SECTION\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << (i + 1) << " " << format_double(points[i].x) << " "
        << format_double(points[i].y) << "\n";
  }
  out << "EOF\n";
  return out.str();
}

}  // namespace evonet
