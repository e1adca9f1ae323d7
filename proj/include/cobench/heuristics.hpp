#pragma once

// Classical baselines and exact small-scale oracles.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cobench/problems.hpp"
#include "cobench/verify.hpp"

namespace cobench {

enum class Method {
  // TSP
  NN,
  FI,
  // OP
  Greedy,
  GreedyInsertion,
  Tsili,
  // CVRP
  Sweep,
  ParallelSavings,
  // TSP, OP, CVRP
  ACO,
  // MIS
  GreedyMinDegree,
  DegreeAdd,
  // MVC
  ApproxMatching,
  GreedyMaxDegree,
  DegreeRemoval,
  // PFSP
  Palmers,
  NEH,
  // JSSP
  SPT,
  FIFO,
  ATC,
};

std::string_view method_name(Method method);
/// Case-insensitive. Throws InvalidArgument.
Method parse_method(std::string_view name);
const std::vector<Method>& methods_for(ProblemKind kind);
bool method_valid(ProblemKind kind, Method method);

struct AcoConfig {
  int ants = 20;
  int iterations = 50;
  double alpha = 1.0;
  double beta = 2.0;
  double evaporation = 0.1;
  double initial_pheromone = 1.0;
  std::uint64_t seed = 0;
};

/// Default run sizes: TSP 100 ants x 500
/// iterations, OP and CVRP 50 x 100.
AcoConfig aco_defaults(ProblemKind kind);

struct SolveOptions {
  std::uint64_t seed = 0;
  int tsili_samples = 1280;
  std::optional<AcoConfig> aco;  // aco_defaults(kind) when absent; seed taken from here
};

/// Feasible by construction. Throws InvalidArgument when the method does not
/// apply to the instance kind or the options are invalid.
Solution solve(const Instance& inst, Method method, const SolveOptions& opts = {});

/// Throws InvalidArgument on a bad config or a non-routing instance.
Solution aco_solve(const Instance& inst, const AcoConfig& cfg);

struct BruteForceBudget {
  int tsp_nodes = 11;
  int op_nodes = 10;
  int cvrp_customers = 8;
  int graph_nodes = 24;
  int pfsp_jobs = 8;
  int jssp_jobs = 3;
  int jssp_machines = 3;
};

struct OracleResult {
  Solution solution;
  ObjectiveValue objective;
};

/// Provably optimal. Throws BudgetExceeded instead of falling back.
OracleResult brute_force(const Instance& inst, const BruteForceBudget& budget = {});

// Building blocks shared with tests.

/// Closed tour [start, ..., start] improved by first-improvement 2-opt.
std::vector<int> two_opt(std::span<const Point> coords, std::vector<int> tour);

/// Maximum independent set of a graph with at most 64 nodes (exact).
std::vector<int> exact_mis(const GraphInstance& g);

}  // namespace cobench
