#pragma once

#include <cstdint>
#include <vector>

#include "cobench/heuristics.hpp"

namespace cobench::detail {

std::vector<int> tsp_nearest_neighbor(const RoutingInstance& r);
std::vector<int> tsp_farthest_insertion(const RoutingInstance& r);

std::vector<int> op_greedy(const RoutingInstance& r);
std::vector<int> op_greedy_insertion(const RoutingInstance& r);
std::vector<int> op_tsili(const RoutingInstance& r, int samples, std::uint64_t seed);

std::vector<std::vector<int>> cvrp_sweep(const RoutingInstance& r);
std::vector<std::vector<int>> cvrp_savings(const RoutingInstance& r);

std::vector<int> mis_greedy_min_degree(const GraphInstance& g);
std::vector<int> mis_degree_add(const GraphInstance& g);
std::vector<int> mvc_matching(const GraphInstance& g);
std::vector<int> mvc_greedy_max_degree(const GraphInstance& g);
std::vector<int> mvc_degree_removal(const GraphInstance& g);

std::vector<int> pfsp_palmer(const SchedulingInstance& s);
std::vector<int> pfsp_neh(const SchedulingInstance& s);
std::vector<std::vector<int>> jssp_dispatch(const SchedulingInstance& s, Method rule);

/// Dense symmetric distance matrix.
std::vector<std::vector<double>> distance_matrix(const RoutingInstance& r);

}  // namespace cobench::detail
