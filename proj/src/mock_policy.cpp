#include <algorithm>
#include <random>

#include "cobench/error.hpp"
#include "cobench/evalharness.hpp"
#include "cobench/rng.hpp"

namespace cobench {

namespace {

constexpr std::string_view kProse =
    "I am not able to produce a solution for this instance in the requested format.";

// FNV-1a; std::hash is not stable across standard libraries.
std::uint64_t stable_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

void swap_interior(std::vector<int>& seq, int first, int last, Rng& rng) {
  if (last - first < 1) return;
  const int a = uniform(rng, first, last);
  const int b = uniform(rng, first, last);
  std::swap(seq[a], seq[b]);
}

// One random edit that keeps the solution feasible; reverted when the
// verifier disagrees.
void perturb(const Instance& inst, Solution& sol, Rng& rng) {
  Solution before = sol;
  switch (inst.kind) {
    case ProblemKind::TSP:
    case ProblemKind::OP: {
      auto& nodes = std::get<Route>(sol).nodes;
      const int last = static_cast<int>(nodes.size()) - (inst.kind == ProblemKind::TSP ? 2 : 1);
      swap_interior(nodes, 1, last, rng);
      break;
    }
    case ProblemKind::CVRP: {
      auto& routes = std::get<RouteSet>(sol).routes;
      if (routes.empty()) return;
      auto& route = routes[uniform(rng, 0, static_cast<int>(routes.size()) - 1)];
      swap_interior(route, 1, static_cast<int>(route.size()) - 2, rng);
      break;
    }
    case ProblemKind::MIS: {
      auto& v = std::get<VertexSet>(sol).vertices;
      if (v.empty()) return;
      v.erase(v.begin() + uniform(rng, 0, static_cast<int>(v.size()) - 1));
      break;
    }
    case ProblemKind::MVC: {
      auto& v = std::get<VertexSet>(sol).vertices;
      const int n = inst.graph().n;
      std::vector<int> outside;
      for (int x = 0; x < n; ++x) {
        if (std::find(v.begin(), v.end(), x) == v.end()) outside.push_back(x);
      }
      if (outside.empty()) return;
      v.push_back(outside[uniform(rng, 0, static_cast<int>(outside.size()) - 1)]);
      std::sort(v.begin(), v.end());
      break;
    }
    case ProblemKind::PFSP: {
      auto& jobs = std::get<JobOrder>(sol).jobs;
      swap_interior(jobs, 0, static_cast<int>(jobs.size()) - 1, rng);
      break;
    }
    case ProblemKind::JSSP: {
      auto& rows = std::get<MachineSchedules>(sol).machines;
      if (rows.empty()) return;
      auto& row = rows[uniform(rng, 0, static_cast<int>(rows.size()) - 1)];
      if (row.size() < 2) return;
      const int i = uniform(rng, 0, static_cast<int>(row.size()) - 2);
      std::swap(row[i], row[i + 1]);
      break;
    }
  }
  if (!check(inst, sol).feasible) sol = std::move(before);
}

// An edit that is guaranteed to violate at least one constraint.
void corrupt(const Instance& inst, Solution& sol, Rng& rng) {
  switch (inst.kind) {
    case ProblemKind::TSP: {
      auto& nodes = std::get<Route>(sol).nodes;
      if (nodes.size() > 2) {
        nodes.erase(nodes.begin() + uniform(rng, 1, static_cast<int>(nodes.size()) - 2));
      } else {
        nodes.clear();
      }
      break;
    }
    case ProblemKind::OP: {
      auto& nodes = std::get<Route>(sol).nodes;
      const auto& r = inst.routing();
      int v = uniform(rng, 0, r.size() - 1);
      if (v == r.depot) v = (v + 1) % r.size();
      nodes.insert(nodes.begin(), v);
      break;
    }
    case ProblemKind::CVRP: {
      auto& routes = std::get<RouteSet>(sol).routes;
      const int depot = inst.routing().depot;
      std::vector<std::pair<int, int>> spots;
      for (int i = 0; i < static_cast<int>(routes.size()); ++i) {
        for (int j = 0; j < static_cast<int>(routes[i].size()); ++j) {
          if (routes[i][j] != depot) spots.emplace_back(i, j);
        }
      }
      if (spots.empty()) {
        routes.push_back({depot, inst.routing().size(), depot});
        break;
      }
      const auto [i, j] = spots[uniform(rng, 0, static_cast<int>(spots.size()) - 1)];
      routes[i].erase(routes[i].begin() + j);
      break;
    }
    case ProblemKind::MIS:
    case ProblemKind::MVC: {
      auto& v = std::get<VertexSet>(sol).vertices;
      const auto& g = inst.graph();
      if (g.edges.empty()) {
        v.push_back(g.n);
        break;
      }
      const auto [a, b] = g.edges[uniform(rng, 0, static_cast<int>(g.edges.size()) - 1)];
      std::erase(v, a);
      std::erase(v, b);
      if (inst.kind == ProblemKind::MIS) {
        v.push_back(a);
        v.push_back(b);
      }
      std::sort(v.begin(), v.end());
      break;
    }
    case ProblemKind::PFSP: {
      auto& jobs = std::get<JobOrder>(sol).jobs;
      if (jobs.size() >= 2) {
        const int i = uniform(rng, 0, static_cast<int>(jobs.size()) - 1);
        jobs[i] = jobs[(i + 1) % jobs.size()];
      } else {
        jobs.push_back(jobs.empty() ? 0 : jobs.front());
      }
      break;
    }
    case ProblemKind::JSSP: {
      auto& rows = std::get<MachineSchedules>(sol).machines;
      if (rows.empty() || rows[0].empty()) {
        rows.clear();
        break;
      }
      auto& row = rows[uniform(rng, 0, static_cast<int>(rows.size()) - 1)];
      row.erase(row.begin() + uniform(rng, 0, static_cast<int>(row.size()) - 1));
      break;
    }
  }
}

}  // namespace

void validate(const MockPolicyConfig& cfg) {
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob(cfg.infeasible_prob) || !prob(cfg.format_fail_prob)) {
    throw InvalidArgument("mock probabilities must lie in [0, 1]");
  }
  if (cfg.swaps < 0) throw InvalidArgument("mock swaps must be >= 0");
}

std::string mock_policy(const Instance& inst, const Solution& reference, const MockPolicyConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u_format = unit(rng);
  const double u_infeasible = unit(rng);
  if (u_format < cfg.format_fail_prob) return std::string(kProse);
  Solution sol = reference;
  if (u_infeasible < cfg.infeasible_prob) {
    corrupt(inst, sol, rng);
  } else {
    for (int i = 0; i < cfg.swaps; ++i) perturb(inst, sol, rng);
  }
  double value = 0.0;
  try {
    value = objective(inst, sol).value;
  } catch (const Error&) {
    // Corrupted beyond scoring; the stated objective is not trusted anyway.
  }
  return format_solution(sol, value, inst.kind);
}

MockClient::MockClient(MockPolicyConfig cfg, std::map<std::string, std::pair<Instance, Solution>> known)
    : cfg_(cfg), known_(std::move(known)) {
  validate(cfg_);
}

std::vector<std::string> MockClient::complete(const CompletionRequest& request) {
  const auto it = known_.find(request.instance_id);
  if (it == known_.end()) throw EndpointError("mock endpoint has no instance '" + request.instance_id + "'");
  const std::uint64_t id_hash = stable_hash(request.instance_id);
  const std::uint64_t base = mix_seed(mix_seed(cfg_.seed, request.seed), id_hash);
  std::vector<std::string> out;
  for (int i = 0; i < request.n; ++i) {
    MockPolicyConfig c = cfg_;
    c.seed = mix_seed(base, static_cast<std::uint64_t>(i));
    out.push_back(mock_policy(it->second.first, it->second.second, c));
  }
  return out;
}

}  // namespace cobench
