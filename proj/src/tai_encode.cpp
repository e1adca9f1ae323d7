#include <algorithm>
#include <numeric>
#include <string>

#include "cobench/error.hpp"
#include "cobench/numfmt.hpp"
#include "cobench/tai.hpp"

namespace cobench {

namespace {

std::string routing_feature_clause(int k) {
  return "The input includes city coordinates, the " + std::to_string(k) +
         " nearest neighbors for each city, and their respective distances. ";
}

std::string neighbor_list(const std::vector<Feature>& features) {
  std::string out = "[";
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(features[i].id) + ": " + format_fixed(features[i].value, 1);
  }
  return out + "]";
}

std::string coordinate_pair(const Point& p) {
  return "[" + format_shortest(p.x) + ", " + format_shortest(p.y) + "]";
}

std::string int_list(const std::vector<int>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(values[i]);
  }
  return out + "]";
}

// "Node i, coordinates: [x, y], <extra>neighbors: [...]" joined by "; ".
std::string routing_input(const Instance& inst, int k) {
  const RoutingInstance& r = inst.routing();
  const FeatureTable features = nearest_neighbor_features(r.coords, k);
  std::string out;
  for (int i = 0; i < r.size(); ++i) {
    if (i) out += "; ";
    out += "Node " + std::to_string(i) + ", coordinates: " + coordinate_pair(r.coords[i]) + ", ";
    if (inst.kind == ProblemKind::OP) out += "prize: " + std::to_string((*r.prizes)[i]) + ", ";
    if (inst.kind == ProblemKind::CVRP) out += "demand: " + std::to_string((*r.demands)[i]) + ", ";
    out += "neighbors: " + neighbor_list(features[i]);
  }
  return out + ".";
}

TextAttributedInstance encode_tsp(const Instance& inst, int k) {
  const int n = inst.routing().size();
  TextAttributedInstance tai;
  tai.instruction =
      "Solve the Traveling Salesman Problem (TSP) for the given list of " + std::to_string(n) +
      " cities. Each city is represented as a node with coordinates (x, y). Identify the "
      "shortest route that visits every city exactly once and returns to the starting city. " +
      routing_feature_clause(k) +
      "Provide the solution in the following format: 1. Route: List the nodes in the order "
      "they are visited. 2. Objective: The objective value (total travel distance).";
  tai.input = routing_input(inst, k);
  tai.expected_output_grammar = OutputGrammar::Route;
  return tai;
}

TextAttributedInstance encode_op(const Instance& inst, int k) {
  const RoutingInstance& r = inst.routing();
  TextAttributedInstance tai;
  tai.instruction =
      "Solve the Orienteering Problem with " + std::to_string(r.size()) +
      " nodes. Each node has (x, y) coordinates and a prize for visiting it. You must plan a "
      "route that starts at depot " + std::to_string(r.depot) +
      ", collecting the maximum total prize possible, subject to a maximum route length T = " +
      format_fixed(*r.distance_limit, 1) +
      ". You may visit a subset of nodes, but the total distance traveled must not exceed T. " +
      routing_feature_clause(k) +
      "Provide the solution in the following format: 1. Route: The ordered list of visited "
      "nodes. 2. Objective: The objective value (summation of the collecting prizes).";
  tai.input = routing_input(inst, k);
  tai.expected_output_grammar = OutputGrammar::Route;
  return tai;
}

TextAttributedInstance encode_cvrp(const Instance& inst, int k) {
  const RoutingInstance& r = inst.routing();
  TextAttributedInstance tai;
  tai.instruction =
      "Solve the Capacitated Vehicle Routing Problem (CVRP) with " + std::to_string(r.size() - 1) +
      " customers and 1 depot (node " + std::to_string(r.depot) +
      "). Each customer node has a demand. All vehicles have the same capacity of " +
      std::to_string(*r.capacity) +
      ". You must assign each customer to exactly one route and ensure that the sum of demands "
      "on each route does not exceed the vehicle capacity. Minimize the total distance "
      "traveled. " +
      routing_feature_clause(k) +
      "Provide the solution in the following format: 1. Route: A list of routes, each route as "
      "an ordered list of visited nodes (start/end at the depot). 2. Objective: The total "
      "distance of all routes.";
  tai.input = routing_input(inst, k);
  tai.expected_output_grammar = OutputGrammar::Routes;
  return tai;
}

std::string graph_input(const GraphInstance& g, int k) {
  std::string out = "Edges: [";
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (i) out += ",";
    out += "(" + std::to_string(g.edges[i].first) + "," + std::to_string(g.edges[i].second) + ")";
  }
  out += "]\n\n";
  const FeatureTable features = degree_features(g, k);
  for (int v = 0; v < g.n; ++v) {
    if (v) out += "; ";
    out += "N" + std::to_string(v) + ":[";
    const auto& f = features[v];
    for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + std::to_string(f[i].id);
    for (const Feature& ft : f) out += ",#" + std::to_string(static_cast<int>(ft.value));
    out += "]";
  }
  return out;
}

std::string graph_format_clause(int k) {
  const std::string top = "top-" + std::to_string(k);
  return "The input includes the edges of the graph and the " + top +
         " neighbors for each node in the format N[a,b,#c,#d], where a and b are the " + top +
         " neighbors, #c is the degree of a, and #d is the degree of b. ";
}

TextAttributedInstance encode_mis(const Instance& inst, int k) {
  const GraphInstance& g = inst.graph();
  TextAttributedInstance tai;
  tai.instruction =
      "Given an undirected graph with " + std::to_string(g.n) + " nodes (0.." +
      std::to_string(g.n - 1) + ") and edges specified below. For each node, we also provide up to " +
      std::to_string(k) +
      " neighbors connected to it. Find a maximum independent set: the largest set of vertices "
      "where no two vertices share an edge. " +
      graph_format_clause(k) +
      "Output format: 1. Set: The list of vertices in the maximum independent set. 2. "
      "Objective: The size of that set.";
  tai.input = graph_input(g, k);
  tai.expected_output_grammar = OutputGrammar::Set;
  return tai;
}

TextAttributedInstance encode_mvc(const Instance& inst, int k) {
  const GraphInstance& g = inst.graph();
  TextAttributedInstance tai;
  tai.instruction =
      "Given an undirected graph with " + std::to_string(g.n) + " nodes (0.." +
      std::to_string(g.n - 1) + ") and edges specified below. For each node, we also provide up to " +
      std::to_string(k) +
      " neighbors with the largest degrees. Find a minimum vertex cover: a smallest set of "
      "vertices such that every edge has at least one endpoint in this set. " +
      graph_format_clause(k) +
      "Output format: 1. Set: The list of vertices in the minimum vertex cover. 2. Objective: "
      "The size of that set.";
  tai.input = graph_input(g, k);
  tai.expected_output_grammar = OutputGrammar::Set;
  return tai;
}

// Indices of the k smallest values, ascending, ties to the lower index.
std::vector<int> lowest(const std::vector<int>& values, int k) {
  std::vector<int> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return values[a] < values[b]; });
  idx.resize(std::min<std::size_t>(idx.size(), static_cast<std::size_t>(k)));
  return idx;
}

TextAttributedInstance encode_pfsp(const Instance& inst, int k) {
  const SchedulingInstance& s = inst.scheduling();
  TextAttributedInstance tai;
  tai.instruction =
      "Solve the Permutation Flowshop Scheduling Problem (PFSP) with " + std::to_string(s.jobs) +
      " jobs and " + std::to_string(s.machines) +
      " machines. Each machine can process only one job at a time, and each job can be processed "
      "by only one machine at a time. Jobs must be processed on each machine in the same order. "
      "Identify the job order that minimizes the maximum completing time. The input includes "
      "the processing times of each machine on every job, the jobs with the lowest processing "
      "time for each machine, and their respective processing times. Provide the solution in "
      "the following format: 1. Order: List the order that jobs are processed on each machine. "
      "2. Objective: The objective value (maximum completing time).";
  std::string input;
  for (int m = 0; m < s.machines; ++m) {
    std::vector<int> times(s.jobs);
    for (int j = 0; j < s.jobs; ++j) times[j] = s.ptimes[j][m];
    if (m) input += "; ";
    input += "Machine " + std::to_string(m) + ", processing times: " + int_list(times) +
             ", jobs with lowest processing time: [";
    const auto best = lowest(times, k);
    for (std::size_t i = 0; i < best.size(); ++i) {
      if (i) input += ", ";
      input += std::to_string(best[i]) + ": " + std::to_string(times[best[i]]);
    }
    input += "]";
  }
  tai.input = input + ".";
  tai.expected_output_grammar = OutputGrammar::Order;
  return tai;
}

TextAttributedInstance encode_jssp(const Instance& inst, int k) {
  const SchedulingInstance& s = inst.scheduling();
  const auto& order = *s.machine_order;
  TextAttributedInstance tai;
  tai.instruction =
      "Solve the Job Shop Scheduling Problem (JSSP) with " + std::to_string(s.jobs) +
      " jobs and " + std::to_string(s.machines) + " machines. Each job consists of " +
      std::to_string(s.machines) +
      " operations which need to be sequentially processed on specific machines. Each machine "
      "can process only one job at a time, and each job can be processed by only one machine at "
      "a time. Identify the schedule that minimizes the maximum completion time (makespan). The "
      "input includes the information of operations for each job, including their specific "
      "machine and processing time, as well as the operators with the lowest processing time "
      "and their respective machines and processing times. Provide the solution in the "
      "following format: 1. Schedule: List the order that jobs are processed on each machine. "
      "2. Objective: The makespan of the schedule.";
  auto op = [&](int j, int o) {
    return "(" + std::to_string(order[j][o]) + ", " + std::to_string(s.ptimes[j][o]) + ")";
  };
  std::string input;
  for (int j = 0; j < s.jobs; ++j) {
    if (j) input += "; ";
    input += "Job " + std::to_string(j) + ", machines and processing times for operations: [";
    for (int o = 0; o < s.machines; ++o) input += (o ? ", " : "") + op(j, o);
    input += "], operators with lowest processing time: [";
    const auto best = lowest(s.ptimes[j], k);
    for (std::size_t i = 0; i < best.size(); ++i) {
      if (i) input += ", ";
      input += std::to_string(best[i]) + ": " + op(j, best[i]);
    }
    input += "]";
  }
  tai.input = input + ".";
  tai.expected_output_grammar = OutputGrammar::Schedule;
  return tai;
}

}  // namespace

OutputGrammar grammar_for(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::TSP:
    case ProblemKind::OP:
      return OutputGrammar::Route;
    case ProblemKind::CVRP:
      return OutputGrammar::Routes;
    case ProblemKind::MIS:
    case ProblemKind::MVC:
      return OutputGrammar::Set;
    case ProblemKind::PFSP:
      return OutputGrammar::Order;
    case ProblemKind::JSSP:
      return OutputGrammar::Schedule;
  }
  return OutputGrammar::Route;
}

std::string_view grammar_label(OutputGrammar grammar) {
  switch (grammar) {
    case OutputGrammar::Route:
      return "Route";
    case OutputGrammar::Routes:
      return "Routes";
    case OutputGrammar::Set:
      return "Set";
    case OutputGrammar::Order:
      return "Order";
    case OutputGrammar::Schedule:
      return "Schedule";
  }
  return "Route";
}

TextAttributedInstance encode(const Instance& inst, int k) {
  if (k < 0) throw InvalidArgument("k must be non-negative");
  validate(inst);
  switch (inst.kind) {
    case ProblemKind::TSP:
      return encode_tsp(inst, k);
    case ProblemKind::OP:
      return encode_op(inst, k);
    case ProblemKind::CVRP:
      return encode_cvrp(inst, k);
    case ProblemKind::MIS:
      return encode_mis(inst, k);
    case ProblemKind::MVC:
      return encode_mvc(inst, k);
    case ProblemKind::PFSP:
      return encode_pfsp(inst, k);
    case ProblemKind::JSSP:
      return encode_jssp(inst, k);
  }
  throw InvalidArgument("unknown problem kind");
}

std::string render_prompt(const TextAttributedInstance& tai) {
  std::string out =
      "Below is an instruction describing a combinatorial optimization problem. It is paired "
      "with an input that provides the data of the instance.\n"
      "Your task is to produce a feasible solution that optimizes (minimizes or maximizes) the "
      "given objective.\n\n### Instruction:\n";
  out += tai.instruction;
  out += "\n\n### Input:\n";
  out += tai.input;
  out += "\n\n### Response:\n";
  return out;
}

}  // namespace cobench
