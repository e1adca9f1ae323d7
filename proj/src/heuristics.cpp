#include "cobench/heuristics.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "cobench/error.hpp"
#include "heuristics_impl.hpp"

namespace cobench {

namespace {

struct MethodInfo {
  Method method;
  std::string_view name;
};

constexpr MethodInfo kMethods[] = {
    {Method::NN, "nn"},
    {Method::FI, "fi"},
    {Method::Greedy, "greedy"},
    {Method::GreedyInsertion, "greedy-insertion"},
    {Method::Tsili, "tsili"},
    {Method::Sweep, "sweep"},
    {Method::ParallelSavings, "parallel-savings"},
    {Method::ACO, "aco"},
    {Method::GreedyMinDegree, "greedy-min-degree"},
    {Method::DegreeAdd, "degree-add"},
    {Method::ApproxMatching, "approx-matching"},
    {Method::GreedyMaxDegree, "greedy-max-degree"},
    {Method::DegreeRemoval, "degree-removal"},
    {Method::Palmers, "palmers"},
    {Method::NEH, "neh"},
    {Method::SPT, "spt"},
    {Method::FIFO, "fifo"},
    {Method::ATC, "atc"},
};

}  // namespace

std::string_view method_name(Method method) {
  for (const auto& m : kMethods) {
    if (m.method == method) return m.name;
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  std::string key;
  for (char c : name) {
    key += c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  for (const auto& m : kMethods) {
    if (m.name == key) return m.method;
  }
  throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

const std::vector<Method>& methods_for(ProblemKind kind) {
  static const std::vector<Method> tsp{Method::NN, Method::FI, Method::ACO};
  static const std::vector<Method> op{Method::Greedy, Method::GreedyInsertion, Method::Tsili,
                                      Method::ACO};
  static const std::vector<Method> cvrp{Method::Sweep, Method::ParallelSavings, Method::ACO};
  static const std::vector<Method> mis{Method::GreedyMinDegree, Method::DegreeAdd};
  static const std::vector<Method> mvc{Method::ApproxMatching, Method::GreedyMaxDegree,
                                       Method::DegreeRemoval};
  static const std::vector<Method> pfsp{Method::Palmers, Method::NEH};
  static const std::vector<Method> jssp{Method::SPT, Method::FIFO, Method::ATC};
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

bool method_valid(ProblemKind kind, Method method) {
  const auto& ms = methods_for(kind);
  return std::find(ms.begin(), ms.end(), method) != ms.end();
}

AcoConfig aco_defaults(ProblemKind kind) {
  AcoConfig cfg;
  if (kind == ProblemKind::TSP) {
    cfg.ants = 100;
    cfg.iterations = 500;
  } else {
    cfg.ants = 50;
    cfg.iterations = 100;
  }
  return cfg;
}

Solution solve(const Instance& inst, Method method, const SolveOptions& opts) {
  if (!method_valid(inst.kind, method)) {
    throw InvalidArgument("method '" + std::string(method_name(method)) + "' does not apply to " +
                          std::string(kind_name(inst.kind)));
  }
  validate(inst);
  switch (method) {
    case Method::NN:
      return Route{detail::tsp_nearest_neighbor(inst.routing())};
    case Method::FI:
      return Route{detail::tsp_farthest_insertion(inst.routing())};
    case Method::Greedy:
      return Route{detail::op_greedy(inst.routing())};
    case Method::GreedyInsertion:
      return Route{detail::op_greedy_insertion(inst.routing())};
    case Method::Tsili:
      if (opts.tsili_samples < 1) throw InvalidArgument("tsili samples must be >= 1");
      return Route{detail::op_tsili(inst.routing(), opts.tsili_samples, opts.seed)};
    case Method::Sweep:
      return RouteSet{detail::cvrp_sweep(inst.routing())};
    case Method::ParallelSavings:
      return RouteSet{detail::cvrp_savings(inst.routing())};
    case Method::ACO: {
      AcoConfig cfg = opts.aco.value_or(aco_defaults(inst.kind));
      if (!opts.aco) cfg.seed = opts.seed;
      return aco_solve(inst, cfg);
    }
    case Method::GreedyMinDegree:
      return VertexSet{detail::mis_greedy_min_degree(inst.graph())};
    case Method::DegreeAdd:
      return VertexSet{detail::mis_degree_add(inst.graph())};
    case Method::ApproxMatching:
      return VertexSet{detail::mvc_matching(inst.graph())};
    case Method::GreedyMaxDegree:
      return VertexSet{detail::mvc_greedy_max_degree(inst.graph())};
    case Method::DegreeRemoval:
      return VertexSet{detail::mvc_degree_removal(inst.graph())};
    case Method::Palmers:
      return JobOrder{detail::pfsp_palmer(inst.scheduling())};
    case Method::NEH:
      return JobOrder{detail::pfsp_neh(inst.scheduling())};
    case Method::SPT:
    case Method::FIFO:
    case Method::ATC:
      return MachineSchedules{detail::jssp_dispatch(inst.scheduling(), method)};
  }
  throw InvalidArgument("unhandled method");
}

}  // namespace cobench
