#include <algorithm>
#include <cmath>
#include <limits>

#include "cobench/error.hpp"
#include "cobench/rng.hpp"
#include "heuristics_impl.hpp"

namespace cobench {

namespace {

constexpr double kMinLeg = 1e-9;

using Matrix = std::vector<std::vector<double>>;

struct Colony {
  const RoutingInstance& r;
  const AcoConfig& cfg;
  ProblemKind kind;
  Matrix d;
  Matrix eta;
  Matrix tau;
  Matrix weight;
  int n;

  Colony(const RoutingInstance& inst, const AcoConfig& c, ProblemKind k)
      : r(inst), cfg(c), kind(k), d(detail::distance_matrix(inst)), n(inst.size()) {
    eta.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const double gain = kind == ProblemKind::OP ? (*r.prizes)[j] : 1.0;
        eta[i][j] = gain / std::max(d[i][j], kMinLeg);
      }
    }
    tau.assign(n, std::vector<double>(n, cfg.initial_pheromone));
    weight.assign(n, std::vector<double>(n, 0.0));
  }

  void refresh_weights() {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        weight[i][j] = std::pow(tau[i][j], cfg.alpha) * std::pow(eta[i][j], cfg.beta);
      }
    }
  }

  // Roulette over `cand`; falls back to the first candidate when all
  // weights underflow.
  int pick(int cur, const std::vector<int>& cand, Rng& rng) const {
    double total = 0.0;
    for (int v : cand) total += weight[cur][v];
    if (!(total > 0.0) || !std::isfinite(total)) return cand.front();
    double x = std::uniform_real_distribution<double>(0.0, total)(rng);
    for (int v : cand) {
      x -= weight[cur][v];
      if (x <= 0.0) return v;
    }
    return cand.back();
  }

  std::vector<int> build_tour(Rng& rng) const {
    std::vector<char> used(n, 0);
    std::vector<int> tour{r.depot};
    used[r.depot] = 1;
    std::vector<int> cand;
    for (int step = 1; step < n; ++step) {
      cand.clear();
      for (int v = 0; v < n; ++v) {
        if (!used[v]) cand.push_back(v);
      }
      const int v = pick(tour.back(), cand, rng);
      used[v] = 1;
      tour.push_back(v);
    }
    tour.push_back(r.depot);
    return tour;
  }

  std::vector<int> build_orienteering(Rng& rng) const {
    const double limit = *r.distance_limit;
    std::vector<char> used(n, 0);
    std::vector<int> route{r.depot};
    used[r.depot] = 1;
    double length = 0.0;
    std::vector<int> cand;
    while (true) {
      const int cur = route.back();
      cand.clear();
      for (int v = 0; v < n; ++v) {
        if (!used[v] && length + d[cur][v] <= limit) cand.push_back(v);
      }
      if (cand.empty()) break;
      const int v = pick(cur, cand, rng);
      length += d[cur][v];
      used[v] = 1;
      route.push_back(v);
    }
    return route;
  }

  std::vector<std::vector<int>> build_routes(Rng& rng) const {
    const auto& demand = *r.demands;
    std::vector<char> used(n, 0);
    used[r.depot] = 1;
    int left = n - 1;
    std::vector<std::vector<int>> routes;
    std::vector<int> cand;
    while (left > 0) {
      std::vector<int> route{r.depot};
      int load = 0;
      while (true) {
        cand.clear();
        for (int v = 0; v < n; ++v) {
          if (!used[v] && load + demand[v] <= *r.capacity) cand.push_back(v);
        }
        if (cand.empty()) break;
        const int v = pick(route.back(), cand, rng);
        used[v] = 1;
        load += demand[v];
        --left;
        route.push_back(v);
      }
      route.push_back(r.depot);
      routes.push_back(std::move(route));
    }
    return routes;
  }

  double length(const std::vector<int>& nodes) const {
    double total = 0.0;
    for (std::size_t i = 1; i < nodes.size(); ++i) total += d[nodes[i - 1]][nodes[i]];
    return total;
  }

  // Evaporate everywhere, then reinforce the best-so-far edges.
  void update(const std::vector<std::vector<int>>& paths, double amount) {
    const double rho = cfg.evaporation;
    for (auto& row : tau) {
      for (double& t : row) t *= 1.0 - rho;
    }
    for (const auto& p : paths) {
      for (std::size_t i = 1; i < p.size(); ++i) {
        tau[p[i - 1]][p[i]] += rho * amount;
        tau[p[i]][p[i - 1]] += rho * amount;
      }
    }
  }
};

void check_config(const AcoConfig& cfg) {
  if (cfg.ants < 1) throw InvalidArgument("aco: ants must be >= 1");
  if (cfg.iterations < 1) throw InvalidArgument("aco: iterations must be >= 1");
  if (!(cfg.evaporation > 0.0 && cfg.evaporation < 1.0)) {
    throw InvalidArgument("aco: evaporation must lie in (0, 1)");
  }
  if (!(cfg.alpha >= 0.0) || !(cfg.beta >= 0.0)) throw InvalidArgument("aco: alpha and beta must be >= 0");
  if (!(cfg.initial_pheromone > 0.0)) throw InvalidArgument("aco: initial pheromone must be > 0");
}

}  // namespace

Solution aco_solve(const Instance& inst, const AcoConfig& cfg) {
  check_config(cfg);
  if (!is_routing(inst.kind)) throw InvalidArgument("aco applies to routing problems only");
  validate(inst);
  Colony colony(inst.routing(), cfg, inst.kind);
  const bool maximize = inst.kind == ProblemKind::OP;

  std::vector<std::vector<int>> best;
  double best_score = maximize ? -1.0 : std::numeric_limits<double>::infinity();
  double first_score = 0.0;
  for (int it = 0; it < cfg.iterations; ++it) {
    colony.refresh_weights();
    const std::uint64_t iter_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(it));
    for (int a = 0; a < cfg.ants; ++a) {
      Rng rng(mix_seed(iter_seed, static_cast<std::uint64_t>(a)));
      std::vector<std::vector<int>> paths;
      double score = 0.0;
      if (inst.kind == ProblemKind::TSP) {
        paths.push_back(colony.build_tour(rng));
        score = colony.length(paths[0]);
      } else if (inst.kind == ProblemKind::OP) {
        paths.push_back(colony.build_orienteering(rng));
        for (int v : paths[0]) score += (*colony.r.prizes)[v];
      } else {
        paths = colony.build_routes(rng);
        for (const auto& p : paths) score += colony.length(p);
      }
      if (maximize ? score > best_score : score < best_score) {
        best_score = score;
        best = std::move(paths);
      }
    }
    if (it == 0) first_score = best_score;
    // Deposit is relative to the first iteration's best so that it is on
    // the scale of the initial pheromone.
    double amount = 1.0;
    if (maximize) {
      amount = first_score > 0.0 ? best_score / first_score : 1.0;
    } else if (best_score > 0.0) {
      amount = first_score / best_score;
    }
    colony.update(best, amount * cfg.initial_pheromone);
  }

  if (inst.kind == ProblemKind::CVRP) return RouteSet{best};
  return Route{best.front()};
}

}  // namespace cobench
