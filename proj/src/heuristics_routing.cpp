#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cobench/error.hpp"
#include "cobench/rng.hpp"
#include "heuristics_impl.hpp"

namespace cobench {

namespace {

constexpr double kEps = 1e-10;
constexpr double kMinLeg = 1e-9;  // coincident nodes

using Matrix = std::vector<std::vector<double>>;

// Open 2-opt over the cyclic order `t` (no closing duplicate). Position 0 is
// never moved.
void two_opt_cyclic(const Matrix& d, std::vector<int>& t) {
  const int n = static_cast<int>(t.size());
  if (n < 4) return;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < n - 2; ++i) {
      for (int j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        const int a = t[i], b = t[i + 1], c = t[j], e = t[(j + 1) % n];
        const double delta = d[a][c] + d[b][e] - d[a][b] - d[c][e];
        if (delta < -kEps) {
          std::reverse(t.begin() + i + 1, t.begin() + j + 1);
          improved = true;
        }
      }
    }
  }
}

std::vector<int> close(std::vector<int> t) {
  t.push_back(t.front());
  return t;
}

// Sorted neighbor lists, nearest first, ties to the lower id.
std::vector<std::vector<int>> neighbor_order(const Matrix& d) {
  const int n = static_cast<int>(d.size());
  std::vector<std::vector<int>> out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j != i) out[i].push_back(j);
    }
    std::stable_sort(out[i].begin(), out[i].end(),
                     [&](int a, int b) { return d[i][a] < d[i][b]; });
  }
  return out;
}

}  // namespace

namespace detail {

Matrix distance_matrix(const RoutingInstance& r) {
  const int n = r.size();
  Matrix d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = euclid(r.coords, i, j);
  }
  return d;
}

std::vector<int> tsp_nearest_neighbor(const RoutingInstance& r) {
  const Matrix d = distance_matrix(r);
  const int n = r.size();
  std::vector<char> used(n, 0);
  std::vector<int> tour{r.depot};
  used[r.depot] = 1;
  for (int step = 1; step < n; ++step) {
    const int cur = tour.back();
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (!used[v] && (best < 0 || d[cur][v] < d[cur][best])) best = v;
    }
    used[best] = 1;
    tour.push_back(best);
  }
  return close(std::move(tour));
}

std::vector<int> tsp_farthest_insertion(const RoutingInstance& r) {
  const Matrix d = distance_matrix(r);
  const int n = r.size();
  std::vector<int> tour{r.depot};
  std::vector<char> used(n, 0);
  used[r.depot] = 1;
  std::vector<double> nearest(n);
  for (int v = 0; v < n; ++v) nearest[v] = d[r.depot][v];
  for (int step = 1; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (!used[v] && (pick < 0 || nearest[v] > nearest[pick])) pick = v;
    }
    const int m = static_cast<int>(tour.size());
    int pos = 1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const int a = tour[i], b = tour[(i + 1) % m];
      const double added = d[a][pick] + d[pick][b] - (m > 1 ? d[a][b] : 0.0);
      if (added < best - kEps) {
        best = added;
        pos = i + 1;
      }
    }
    tour.insert(tour.begin() + pos, pick);
    used[pick] = 1;
    for (int v = 0; v < n; ++v) nearest[v] = std::min(nearest[v], d[pick][v]);
  }
  two_opt_cyclic(d, tour);
  return close(std::move(tour));
}

std::vector<int> op_greedy(const RoutingInstance& r) {
  const Matrix d = distance_matrix(r);
  const int n = r.size();
  const double limit = *r.distance_limit;
  const auto& prize = *r.prizes;
  std::vector<char> used(n, 0);
  used[r.depot] = 1;
  std::vector<int> route{r.depot};
  double length = 0.0;
  while (true) {
    const int cur = route.back();
    int best = -1;
    double best_ratio = -1.0;
    for (int v = 0; v < n; ++v) {
      if (used[v] || length + d[cur][v] > limit) continue;
      const double ratio = prize[v] / std::max(d[cur][v], kMinLeg);
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = v;
      }
    }
    if (best < 0) break;
    length += d[cur][best];
    used[best] = 1;
    route.push_back(best);
  }
  return route;
}

std::vector<int> op_greedy_insertion(const RoutingInstance& r) {
  const Matrix d = distance_matrix(r);
  const int n = r.size();
  const double limit = *r.distance_limit;
  const auto& prize = *r.prizes;
  std::vector<char> used(n, 0);
  used[r.depot] = 1;
  std::vector<int> route{r.depot};
  double length = 0.0;
  while (true) {
    int best_v = -1;
    int best_pos = -1;
    double best_ratio = -1.0;
    double best_added = 0.0;
    const int m = static_cast<int>(route.size());
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      // Positions 1..m; position m appends to the open end.
      for (int pos = 1; pos <= m; ++pos) {
        const int a = route[pos - 1];
        const double added =
            pos == m ? d[a][v] : d[a][v] + d[v][route[pos]] - d[a][route[pos]];
        if (length + added > limit) continue;
        const double ratio = prize[v] / std::max(added, kMinLeg);
        if (ratio > best_ratio) {
          best_ratio = ratio;
          best_v = v;
          best_pos = pos;
          best_added = added;
        }
      }
    }
    if (best_v < 0) break;
    route.insert(route.begin() + best_pos, best_v);
    used[best_v] = 1;
    length += best_added;
  }
  return route;
}

std::vector<int> op_tsili(const RoutingInstance& r, int samples, std::uint64_t seed) {
  constexpr int kCandidates = 4;
  constexpr double kPower = 4.0;
  const Matrix d = distance_matrix(r);
  const auto order = neighbor_order(d);
  const int n = r.size();
  const double limit = *r.distance_limit;
  const auto& prize = *r.prizes;

  std::vector<int> best_route{r.depot};
  long long best_prize = 0;
  std::vector<char> used(n);
  std::vector<int> cand;
  std::vector<double> weight;
  for (int s = 0; s < samples; ++s) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(s)));
    std::fill(used.begin(), used.end(), 0);
    used[r.depot] = 1;
    std::vector<int> route{r.depot};
    double length = 0.0;
    long long collected = 0;
    while (true) {
      const int cur = route.back();
      cand.clear();
      weight.clear();
      for (int v : order[cur]) {
        if (used[v] || length + d[cur][v] > limit) continue;
        cand.push_back(v);
        weight.push_back(std::pow(prize[v] / std::max(d[cur][v], kMinLeg), kPower));
        if (static_cast<int>(cand.size()) == kCandidates) break;
      }
      if (cand.empty()) break;
      std::discrete_distribution<int> pick(weight.begin(), weight.end());
      const int v = cand[pick(rng)];
      length += d[cur][v];
      used[v] = 1;
      collected += prize[v];
      route.push_back(v);
    }
    if (collected > best_prize) {
      best_prize = collected;
      best_route = route;
    }
  }
  return best_route;
}

std::vector<std::vector<int>> cvrp_sweep(const RoutingInstance& r) {
  const Matrix d = distance_matrix(r);
  const int n = r.size();
  const Point o = r.coords[r.depot];
  std::vector<int> customers;
  std::vector<double> angle(n, 0.0);
  for (int v = 0; v < n; ++v) {
    if (v == r.depot) continue;
    customers.push_back(v);
    angle[v] = std::atan2(r.coords[v].y - o.y, r.coords[v].x - o.x);
  }
  std::stable_sort(customers.begin(), customers.end(),
                   [&](int a, int b) { return angle[a] < angle[b]; });
  std::vector<std::vector<int>> groups;
  int load = 0;
  for (int v : customers) {
    const int q = (*r.demands)[v];
    if (groups.empty() || load + q > *r.capacity) {
      groups.emplace_back();
      load = 0;
    }
    groups.back().push_back(v);
    load += q;
  }
  std::vector<std::vector<int>> routes;
  for (const auto& group : groups) {
    // Nearest-neighbor order from the depot, then 2-opt.
    std::vector<int> tour{r.depot};
    std::vector<int> left = group;
    while (!left.empty()) {
      const int cur = tour.back();
      auto it = std::min_element(left.begin(), left.end(), [&](int a, int b) {
        return d[cur][a] < d[cur][b] || (d[cur][a] == d[cur][b] && a < b);
      });
      tour.push_back(*it);
      left.erase(it);
    }
    two_opt_cyclic(d, tour);
    routes.push_back(close(std::move(tour)));
  }
  return routes;
}

std::vector<std::vector<int>> cvrp_savings(const RoutingInstance& r) {
  const Matrix d = distance_matrix(r);
  const int n = r.size();
  const int depot = r.depot;
  const auto& demand = *r.demands;
  std::vector<std::vector<int>> route;  // customer sequences
  std::vector<int> load;
  std::vector<int> owner(n, -1);
  for (int v = 0; v < n; ++v) {
    if (v == depot) continue;
    owner[v] = static_cast<int>(route.size());
    route.push_back({v});
    load.push_back(demand[v]);
  }
  struct Saving {
    double value;
    int i, j;
  };
  std::vector<Saving> savings;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (i == depot || j == depot) continue;
      const double s = d[depot][i] + d[depot][j] - d[i][j];
      if (s > kEps) savings.push_back({s, i, j});
    }
  }
  std::stable_sort(savings.begin(), savings.end(),
                   [](const Saving& a, const Saving& b) { return a.value > b.value; });
  for (const auto& s : savings) {
    const int ri = owner[s.i], rj = owner[s.j];
    if (ri == rj || load[ri] + load[rj] > *r.capacity) continue;
    auto& a = route[ri];
    auto& b = route[rj];
    const bool i_end = a.back() == s.i, i_front = a.front() == s.i;
    const bool j_end = b.back() == s.j, j_front = b.front() == s.j;
    if (!(i_end || i_front) || !(j_end || j_front)) continue;
    if (!i_end) std::reverse(a.begin(), a.end());
    if (!j_front) std::reverse(b.begin(), b.end());
    a.insert(a.end(), b.begin(), b.end());
    load[ri] += load[rj];
    for (int v : b) owner[v] = ri;
    b.clear();
    load[rj] = 0;
  }
  std::vector<std::vector<int>> out;
  for (const auto& seq : route) {
    if (seq.empty()) continue;
    std::vector<int> full{depot};
    full.insert(full.end(), seq.begin(), seq.end());
    full.push_back(depot);
    out.push_back(std::move(full));
  }
  return out;
}

}  // namespace detail

std::vector<int> two_opt(std::span<const Point> coords, std::vector<int> tour) {
  if (tour.size() >= 2 && tour.front() == tour.back()) tour.pop_back();
  RoutingInstance r;
  r.coords.assign(coords.begin(), coords.end());
  const Matrix d = detail::distance_matrix(r);
  for (int v : tour) {
    if (v < 0 || v >= r.size()) throw InvalidArgument("tour index out of range");
  }
  two_opt_cyclic(d, tour);
  return tour.empty() ? tour : close(std::move(tour));
}

}  // namespace cobench
