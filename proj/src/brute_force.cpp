#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

#include "cobench/error.hpp"
#include "heuristics_impl.hpp"

namespace cobench {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Matrix = std::vector<std::vector<double>>;

[[noreturn]] void refuse(ProblemKind kind, const std::string& what, int limit) {
  throw BudgetExceeded(std::string(kind_name(kind)) + " oracle refuses instances with more than " +
                       std::to_string(limit) + " " + what);
}

// Open paths that start at the depot: best[mask][j] is the shortest way to
// visit exactly the customers in `mask`, ending at customer j.
struct PathTable {
  std::vector<int> customers;
  std::vector<std::vector<double>> best;
  std::vector<std::vector<int>> prev;

  PathTable(const Matrix& d, int depot) {
    for (int v = 0; v < static_cast<int>(d.size()); ++v) {
      if (v != depot) customers.push_back(v);
    }
    const int m = static_cast<int>(customers.size());
    const int full = 1 << m;
    best.assign(full, std::vector<double>(m, kInf));
    prev.assign(full, std::vector<int>(m, -1));
    for (int j = 0; j < m; ++j) best[1 << j][j] = d[depot][customers[j]];
    for (int mask = 1; mask < full; ++mask) {
      for (int j = 0; j < m; ++j) {
        if (!(mask >> j & 1) || best[mask][j] == kInf) continue;
        for (int k = 0; k < m; ++k) {
          if (mask >> k & 1) continue;
          const int next = mask | (1 << k);
          const double len = best[mask][j] + d[customers[j]][customers[k]];
          if (len < best[next][k]) {
            best[next][k] = len;
            prev[next][k] = j;
          }
        }
      }
    }
  }

  std::vector<int> walk(int mask, int end) const {
    std::vector<int> seq;
    while (end >= 0) {
      seq.push_back(customers[end]);
      const int p = prev[mask][end];
      mask &= ~(1 << end);
      end = p;
    }
    std::reverse(seq.begin(), seq.end());
    return seq;
  }

  // Closed tour cost through `mask`, and the end customer achieving it.
  std::pair<double, int> closed(const Matrix& d, int depot, int mask) const {
    double cost = kInf;
    int end = -1;
    for (int j = 0; j < static_cast<int>(customers.size()); ++j) {
      if (!(mask >> j & 1)) continue;
      const double c = best[mask][j] + d[customers[j]][depot];
      if (c < cost) {
        cost = c;
        end = j;
      }
    }
    return {cost, end};
  }
};

Solution tsp_exact(const RoutingInstance& r) {
  const Matrix d = detail::distance_matrix(r);
  PathTable table(d, r.depot);
  const int full = (1 << static_cast<int>(table.customers.size())) - 1;
  const auto [cost, end] = table.closed(d, r.depot, full);
  std::vector<int> tour{r.depot};
  for (int v : table.walk(full, end)) tour.push_back(v);
  tour.push_back(r.depot);
  return Route{tour};
}

Solution op_exact(const RoutingInstance& r) {
  const Matrix d = detail::distance_matrix(r);
  PathTable table(d, r.depot);
  const int m = static_cast<int>(table.customers.size());
  const double limit = *r.distance_limit;
  int best_mask = 0, best_end = -1;
  long long best_prize = 0;
  double best_len = 0.0;
  for (int mask = 1; mask < (1 << m); ++mask) {
    long long prize = 0;
    for (int j = 0; j < m; ++j) {
      if (mask >> j & 1) prize += (*r.prizes)[table.customers[j]];
    }
    if (prize < best_prize) continue;
    for (int j = 0; j < m; ++j) {
      if (!(mask >> j & 1)) continue;
      const double len = table.best[mask][j];
      if (len > limit) continue;
      if (prize > best_prize || len < best_len) {
        best_prize = prize;
        best_len = len;
        best_mask = mask;
        best_end = j;
      }
    }
  }
  std::vector<int> route{r.depot};
  if (best_end >= 0) {
    for (int v : table.walk(best_mask, best_end)) route.push_back(v);
  }
  return Route{route};
}

Solution cvrp_exact(const RoutingInstance& r) {
  const Matrix d = detail::distance_matrix(r);
  PathTable table(d, r.depot);
  const int m = static_cast<int>(table.customers.size());
  const int full = 1 << m;
  std::vector<double> tour(full, kInf);
  std::vector<int> tour_end(full, -1);
  for (int mask = 1; mask < full; ++mask) {
    int load = 0;
    for (int j = 0; j < m; ++j) {
      if (mask >> j & 1) load += (*r.demands)[table.customers[j]];
    }
    if (load > *r.capacity) continue;
    std::tie(tour[mask], tour_end[mask]) = table.closed(d, r.depot, mask);
  }
  // Set partition over customer subsets; the block holding the lowest
  // remaining customer is chosen first so each partition is seen once.
  std::vector<double> part(full, kInf);
  std::vector<int> choice(full, 0);
  part[0] = 0.0;
  for (int mask = 1; mask < full; ++mask) {
    const int low = mask & -mask;
    for (int sub = mask; sub; sub = (sub - 1) & mask) {
      if (!(sub & low) || tour[sub] == kInf) continue;
      const double c = tour[sub] + part[mask ^ sub];
      if (c < part[mask]) {
        part[mask] = c;
        choice[mask] = sub;
      }
    }
  }
  std::vector<std::vector<int>> routes;
  for (int mask = full - 1; mask; mask ^= choice[mask]) {
    const int sub = choice[mask];
    std::vector<int> route{r.depot};
    for (int v : table.walk(sub, tour_end[sub])) route.push_back(v);
    route.push_back(r.depot);
    routes.push_back(std::move(route));
  }
  return RouteSet{routes};
}

Solution pfsp_exact(const SchedulingInstance& s) {
  std::vector<int> perm(s.jobs);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = perm;
  long long best_span = flowshop_makespan(s, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    const long long span = flowshop_makespan(s, perm);
    if (span < best_span) {
      best_span = span;
      best = perm;
    }
  }
  return JobOrder{best};
}

Solution jssp_exact(const SchedulingInstance& s) {
  std::vector<int> base(s.jobs);
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> rows(s.machines, base);
  std::vector<std::vector<int>> best;
  long long best_span = std::numeric_limits<long long>::max();
  // Odometer over one permutation per machine.
  while (true) {
    if (const auto span = jobshop_makespan(s, rows); span && *span < best_span) {
      best_span = *span;
      best = rows;
    }
    int m = 0;
    while (m < s.machines && !std::next_permutation(rows[m].begin(), rows[m].end())) ++m;
    if (m == s.machines) break;
  }
  return MachineSchedules{best};
}

}  // namespace

OracleResult brute_force(const Instance& inst, const BruteForceBudget& budget) {
  validate(inst);
  Solution sol;
  switch (inst.kind) {
    case ProblemKind::TSP:
      if (inst.size() > budget.tsp_nodes) refuse(inst.kind, "nodes", budget.tsp_nodes);
      sol = tsp_exact(inst.routing());
      break;
    case ProblemKind::OP:
      if (inst.size() > budget.op_nodes) refuse(inst.kind, "nodes", budget.op_nodes);
      sol = op_exact(inst.routing());
      break;
    case ProblemKind::CVRP:
      if (inst.size() - 1 > budget.cvrp_customers) {
        refuse(inst.kind, "customers", budget.cvrp_customers);
      }
      sol = cvrp_exact(inst.routing());
      break;
    case ProblemKind::MIS:
    case ProblemKind::MVC: {
      const auto& g = inst.graph();
      if (g.n > budget.graph_nodes) refuse(inst.kind, "nodes", budget.graph_nodes);
      auto set = exact_mis(g);
      if (inst.kind == ProblemKind::MVC) {
        std::vector<char> in(g.n, 0);
        for (int v : set) in[v] = 1;
        std::vector<int> cover;
        for (int v = 0; v < g.n; ++v) {
          if (!in[v]) cover.push_back(v);
        }
        set = std::move(cover);
      }
      sol = VertexSet{set};
      break;
    }
    case ProblemKind::PFSP:
      if (inst.scheduling().jobs > budget.pfsp_jobs) refuse(inst.kind, "jobs", budget.pfsp_jobs);
      sol = pfsp_exact(inst.scheduling());
      break;
    case ProblemKind::JSSP: {
      const auto& s = inst.scheduling();
      if (s.jobs > budget.jssp_jobs) refuse(inst.kind, "jobs", budget.jssp_jobs);
      if (s.machines > budget.jssp_machines) refuse(inst.kind, "machines", budget.jssp_machines);
      sol = jssp_exact(s);
      break;
    }
  }
  return {sol, objective(inst, sol)};
}

}  // namespace cobench
