#include "cobench/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "cobench/error.hpp"

namespace cobench {

namespace {

using Constraints = std::vector<std::pair<std::string, bool>>;

bool in_range(int v, int n) { return v >= 0 && v < n; }

bool all_in_range(const std::vector<int>& v, int n) {
  return std::all_of(v.begin(), v.end(), [n](int x) { return in_range(x, n); });
}

// Each value of [0, n) exactly once.
bool is_permutation_of(const std::vector<int>& v, int n) {
  if (static_cast<int>(v.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int x : v) {
    if (!in_range(x, n) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

bool distinct_in_range(const std::vector<int>& v, int n) {
  std::vector<char> seen(n, 0);
  for (int x : v) {
    if (!in_range(x, n) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

Constraints named(ProblemKind kind, std::initializer_list<bool> values) {
  const auto& names = constraint_names(kind);
  Constraints out;
  auto it = values.begin();
  for (const auto& name : names) out.emplace_back(name, *it++);
  return out;
}

FeasibilityReport finish(Constraints c, std::vector<std::pair<std::string, double>> margins = {}) {
  FeasibilityReport r;
  r.zeta = true;
  r.feasible = std::all_of(c.begin(), c.end(), [](const auto& p) { return p.second; });
  r.constraints = std::move(c);
  r.margins = std::move(margins);
  return r;
}

FeasibilityReport check_tsp(const RoutingInstance& r, const Route& route) {
  const auto& nodes = route.nodes;
  const int n = r.size();
  std::vector<int> open = nodes;
  if (open.size() >= 2 && open.front() == open.back()) open.pop_back();
  const bool visit_once = is_permutation_of(open, n);
  const bool returns = nodes.size() >= 2 && nodes.front() == r.depot && nodes.back() == nodes.front();
  return finish(named(ProblemKind::TSP, {visit_once, returns}));
}

FeasibilityReport check_op(const RoutingInstance& r, const Route& route) {
  const auto& nodes = route.nodes;
  const int n = r.size();
  const bool starts = !nodes.empty() && nodes.front() == r.depot;
  std::vector<int> open = nodes;
  if (open.size() >= 2 && open.back() == r.depot) open.pop_back();  // optional return leg
  const bool once = distinct_in_range(open, n);
  std::vector<std::pair<std::string, double>> margins;
  bool within = false;
  if (all_in_range(nodes, n)) {
    const double slack = *r.distance_limit - path_length(r.coords, nodes);
    within = slack >= -kFeasibilityTolerance;
    margins.emplace_back("distance_limit", slack);
  }
  return finish(named(ProblemKind::OP, {starts, once, within}), std::move(margins));
}

bool depot_only(const std::vector<int>& route, int depot) {
  return std::all_of(route.begin(), route.end(), [depot](int v) { return v == depot; });
}

FeasibilityReport check_cvrp(const RoutingInstance& r, const RouteSet& set) {
  const int n = r.size();
  const int q = *r.capacity;
  bool ends = true;
  bool indices_ok = true;
  std::vector<int> visits(n, 0);
  bool capacity_ok = true;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& route : set.routes) {
    if (depot_only(route, r.depot)) continue;
    if (route.size() < 2 || route.front() != r.depot || route.back() != r.depot) ends = false;
    long long load = 0;
    for (std::size_t i = 0; i < route.size(); ++i) {
      const int v = route[i];
      if (!in_range(v, n)) {
        indices_ok = false;
        continue;
      }
      if (v == r.depot) {
        if (i != 0 && i + 1 != route.size()) ends = false;
        continue;
      }
      ++visits[v];
      load += (*r.demands)[v];
    }
    if (load > q) capacity_ok = false;
    worst = std::min(worst, static_cast<double>(q - load));
  }
  bool each_once = indices_ok;
  for (int v = 0; v < n; ++v) {
    if (v != r.depot && visits[v] != 1) each_once = false;
  }
  if (std::isinf(worst)) worst = q;
  return finish(named(ProblemKind::CVRP, {ends, each_once, capacity_ok}),
                {{"capacity", worst}});
}

FeasibilityReport check_mis(const GraphInstance& g, const VertexSet& s) {
  bool ok = distinct_in_range(s.vertices, g.n);
  if (ok) {
    std::vector<char> in(g.n, 0);
    for (int v : s.vertices) in[v] = 1;
    for (const auto& [u, v] : g.edges) {
      if (in[u] && in[v]) ok = false;
    }
  }
  return finish(named(ProblemKind::MIS, {ok}));
}

FeasibilityReport check_mvc(const GraphInstance& g, const VertexSet& s) {
  bool ok = distinct_in_range(s.vertices, g.n);
  if (ok) {
    std::vector<char> in(g.n, 0);
    for (int v : s.vertices) in[v] = 1;
    for (const auto& [u, v] : g.edges) {
      if (!in[u] && !in[v]) ok = false;
    }
  }
  return finish(named(ProblemKind::MVC, {ok}));
}

FeasibilityReport check_pfsp(const SchedulingInstance& s, const JobOrder& order) {
  return finish(named(ProblemKind::PFSP, {is_permutation_of(order.jobs, s.jobs)}));
}

FeasibilityReport check_jssp(const SchedulingInstance& s, const MachineSchedules& sched) {
  const int jobs = s.jobs;
  const int machines = s.machines;
  const auto& rows = sched.machines;

  bool all_scheduled = static_cast<int>(rows.size()) >= machines;
  for (int m = 0; m < machines && all_scheduled; ++m) {
    std::vector<char> seen(jobs, 0);
    for (int j : rows[m]) {
      if (in_range(j, jobs)) seen[j] = 1;
    }
    all_scheduled = std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  }

  bool no_conflict = static_cast<int>(rows.size()) <= machines;
  for (const auto& row : rows) {
    if (!distinct_in_range(row, jobs)) no_conflict = false;
  }

  // Disjunctive graph over the valid entries only; a cycle is a deadlock.
  const auto& order = *s.machine_order;
  std::vector<std::vector<int>> op_of(jobs, std::vector<int>(machines, -1));
  for (int j = 0; j < jobs; ++j) {
    for (int o = 0; o < machines; ++o) op_of[j][order[j][o]] = o;
  }
  const int total = jobs * machines;
  std::vector<std::vector<int>> succ(total);
  std::vector<int> indeg(total, 0);
  auto add = [&](int a, int b) {
    succ[a].push_back(b);
    ++indeg[b];
  };
  for (int j = 0; j < jobs; ++j) {
    for (int o = 0; o + 1 < machines; ++o) add(j * machines + o, j * machines + o + 1);
  }
  const int usable = std::min<int>(machines, static_cast<int>(rows.size()));
  for (int m = 0; m < usable; ++m) {
    std::vector<char> seen(jobs, 0);
    int prev = -1;
    for (int j : rows[m]) {
      if (!in_range(j, jobs) || seen[j]) continue;
      seen[j] = 1;
      const int node = j * machines + op_of[j][m];
      if (prev >= 0) add(prev, node);
      prev = node;
    }
  }
  std::vector<int> stack;
  for (int v = 0; v < total; ++v) {
    if (indeg[v] == 0) stack.push_back(v);
  }
  int done = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++done;
    for (int w : succ[v]) {
      if (--indeg[w] == 0) stack.push_back(w);
    }
  }
  const bool acyclic = done == total;
  return finish(named(ProblemKind::JSSP, {all_scheduled, no_conflict, acyclic}));
}

void require_indices(const std::vector<int>& v, int n) {
  if (!all_in_range(v, n)) throw InvalidArgument("index out of range");
}

int distinct_count(const std::vector<int>& v, int n) {
  require_indices(v, n);
  return static_cast<int>(std::set<int>(v.begin(), v.end()).size());
}

}  // namespace

const std::vector<std::string>& constraint_names(ProblemKind kind) {
  static const std::vector<std::string> tsp{"visit_once", "returns_to_start"};
  static const std::vector<std::string> op{"starts_at_depot", "visit_at_most_once",
                                           "distance_limit"};
  static const std::vector<std::string> cvrp{"routes_start_end_depot", "all_customers_once",
                                             "capacity"};
  static const std::vector<std::string> mis{"independence"};
  static const std::vector<std::string> mvc{"coverage"};
  static const std::vector<std::string> pfsp{"permutation"};
  static const std::vector<std::string> jssp{"all_jobs_scheduled", "no_machine_conflict",
                                             "precedence"};
  switch (kind) {
    case ProblemKind::TSP:
      return tsp;
    case ProblemKind::OP:
      return op;
    case ProblemKind::CVRP:
      return cvrp;
    case ProblemKind::MIS:
      return mis;
    case ProblemKind::MVC:
      return mvc;
    case ProblemKind::PFSP:
      return pfsp;
    case ProblemKind::JSSP:
      return jssp;
  }
  return tsp;
}

FeasibilityReport format_failure(ProblemKind kind) {
  FeasibilityReport r;
  for (const auto& name : constraint_names(kind)) r.constraints.emplace_back(name, false);
  return r;
}

FeasibilityReport check(const Instance& inst, const Solution& sol) {
  if (!solution_matches(inst.kind, sol)) return format_failure(inst.kind);
  switch (inst.kind) {
    case ProblemKind::TSP:
      return check_tsp(inst.routing(), std::get<Route>(sol));
    case ProblemKind::OP:
      return check_op(inst.routing(), std::get<Route>(sol));
    case ProblemKind::CVRP:
      return check_cvrp(inst.routing(), std::get<RouteSet>(sol));
    case ProblemKind::MIS:
      return check_mis(inst.graph(), std::get<VertexSet>(sol));
    case ProblemKind::MVC:
      return check_mvc(inst.graph(), std::get<VertexSet>(sol));
    case ProblemKind::PFSP:
      return check_pfsp(inst.scheduling(), std::get<JobOrder>(sol));
    case ProblemKind::JSSP:
      return check_jssp(inst.scheduling(), std::get<MachineSchedules>(sol));
  }
  return format_failure(inst.kind);
}

double path_length(std::span<const Point> coords, const std::vector<int>& nodes) {
  double total = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) total += euclid(coords, nodes[i - 1], nodes[i]);
  return total;
}

long long flowshop_makespan(const SchedulingInstance& inst, const std::vector<int>& order) {
  std::vector<long long> done(inst.machines, 0);
  for (int j : order) {
    long long prev = 0;
    for (int m = 0; m < inst.machines; ++m) {
      done[m] = std::max(done[m], prev) + inst.ptimes[j][m];
      prev = done[m];
    }
  }
  return order.empty() ? 0 : done.back();
}

std::optional<long long> jobshop_makespan(const SchedulingInstance& inst,
                                          const std::vector<std::vector<int>>& machines) {
  const int jobs = inst.jobs;
  const int mcount = inst.machines;
  const auto& order = *inst.machine_order;
  std::vector<int> next_op(jobs, 0);       // next operation index per job
  std::vector<std::size_t> next_pos(mcount, 0);  // next slot per machine row
  std::vector<long long> job_free(jobs, 0);
  std::vector<long long> machine_free(mcount, 0);
  long long makespan = 0;
  int remaining = jobs * mcount;
  // Repeatedly schedule any operation that is next both in its job and on
  // its machine. Start times do not depend on the pick order.
  bool progress = true;
  while (remaining > 0 && progress) {
    progress = false;
    for (int m = 0; m < mcount; ++m) {
      while (next_pos[m] < machines[m].size()) {
        const int j = machines[m][next_pos[m]];
        if (next_op[j] >= mcount || order[j][next_op[j]] != m) break;
        const long long start = std::max(job_free[j], machine_free[m]);
        const long long end = start + inst.ptimes[j][next_op[j]];
        job_free[j] = machine_free[m] = end;
        makespan = std::max(makespan, end);
        ++next_op[j];
        ++next_pos[m];
        --remaining;
        progress = true;
      }
    }
  }
  if (remaining > 0) return std::nullopt;
  return makespan;
}

ObjectiveValue objective(const Instance& inst, const Solution& sol) {
  if (!solution_matches(inst.kind, sol)) throw InvalidArgument("solution does not match problem kind");
  ObjectiveValue out;
  out.sense = sense_of(inst.kind);
  switch (inst.kind) {
    case ProblemKind::TSP: {
      const auto& nodes = std::get<Route>(sol).nodes;
      require_indices(nodes, inst.routing().size());
      out.value = path_length(inst.routing().coords, nodes);
      break;
    }
    case ProblemKind::OP: {
      const auto& r = inst.routing();
      const auto& nodes = std::get<Route>(sol).nodes;
      require_indices(nodes, r.size());
      long long sum = 0;
      for (int v : std::set<int>(nodes.begin(), nodes.end())) sum += (*r.prizes)[v];
      out.value = static_cast<double>(sum);
      break;
    }
    case ProblemKind::CVRP: {
      const auto& r = inst.routing();
      double total = 0.0;
      for (const auto& route : std::get<RouteSet>(sol).routes) {
        require_indices(route, r.size());
        total += path_length(r.coords, route);
      }
      out.value = total;
      break;
    }
    case ProblemKind::MIS:
    case ProblemKind::MVC:
      out.value = distinct_count(std::get<VertexSet>(sol).vertices, inst.graph().n);
      break;
    case ProblemKind::PFSP: {
      const auto& s = inst.scheduling();
      const auto& jobs = std::get<JobOrder>(sol).jobs;
      require_indices(jobs, s.jobs);
      out.value = static_cast<double>(flowshop_makespan(s, jobs));
      break;
    }
    case ProblemKind::JSSP: {
      const auto& s = inst.scheduling();
      const auto& rows = std::get<MachineSchedules>(sol).machines;
      if (static_cast<int>(rows.size()) != s.machines) {
        throw InvalidArgument("schedule must have one row per machine");
      }
      for (const auto& row : rows) {
        if (!is_permutation_of(row, s.jobs)) {
          throw InvalidArgument("each machine row must list every job once");
        }
      }
      const auto span = jobshop_makespan(s, rows);
      if (!span) throw InvalidArgument("machine sequences deadlock");
      out.value = static_cast<double>(*span);
      break;
    }
  }
  return out;
}

std::vector<std::pair<std::string, double>> constraint_margin(const Instance& inst,
                                                              const Solution& sol) {
  if (inst.kind != ProblemKind::OP && inst.kind != ProblemKind::CVRP) {
    throw InvalidArgument("constraint margins exist only for op and cvrp");
  }
  if (!solution_matches(inst.kind, sol)) throw InvalidArgument("solution does not match problem kind");
  const auto& r = inst.routing();
  if (inst.kind == ProblemKind::OP) {
    const auto& nodes = std::get<Route>(sol).nodes;
    require_indices(nodes, r.size());
    return {{"distance_limit", *r.distance_limit - path_length(r.coords, nodes)}};
  }
  for (const auto& route : std::get<RouteSet>(sol).routes) require_indices(route, r.size());
  return check(inst, sol).margins;
}

}  // namespace cobench
