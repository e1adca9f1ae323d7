#pragma once

// Feasibility checks, objective evaluation and constraint margins.
//
// Constraint order per kind (it indexes the reward weights):
//   TSP   visit_once, returns_to_start
//   OP    starts_at_depot, visit_at_most_once, distance_limit
//   CVRP  routes_start_end_depot, all_customers_once, capacity
//   MIS   independence
//   MVC   coverage
//   PFSP  permutation
//   JSSP  all_jobs_scheduled, no_machine_conflict, precedence

#include <string>
#include <utility>
#include <vector>

#include "cobench/problems.hpp"

namespace cobench {

inline constexpr double kFeasibilityTolerance = 1e-6;

struct FeasibilityReport {
  bool zeta = false;
  std::vector<std::pair<std::string, bool>> constraints;
  bool feasible = false;
  std::vector<std::pair<std::string, double>> margins;
};

struct ObjectiveValue {
  double value = 0.0;
  Sense sense = Sense::Minimize;
};

const std::vector<std::string>& constraint_names(ProblemKind kind);

/// Never throws on bad indices; they fail the relevant constraint.
/// A solution of the wrong alternative yields zeta = false.
FeasibilityReport check(const Instance& inst, const Solution& sol);

/// Report for text that could not be parsed: zeta = false, all c_i = false.
FeasibilityReport format_failure(ProblemKind kind);

/// TSP/CVRP: length of the sequences as given. OP: prizes of distinct
/// visited nodes. MIS/MVC: distinct vertices. PFSP/JSSP: makespan.
/// Throws InvalidArgument on out-of-range indices, a mismatched alternative,
/// or (JSSP) a malformed or cyclic schedule.
ObjectiveValue objective(const Instance& inst, const Solution& sol);

/// OP: B - length. CVRP: min over routes of Q - load.
/// Throws InvalidArgument for other kinds or bad indices.
std::vector<std::pair<std::string, double>> constraint_margin(const Instance& inst,
                                                              const Solution& sol);

/// Sum of Euclidean legs along `nodes` (not closed).
double path_length(std::span<const Point> coords, const std::vector<int>& nodes);

/// PFSP makespan of a job permutation.
long long flowshop_makespan(const SchedulingInstance& inst, const std::vector<int>& order);

/// JSSP semi-active makespan for per-machine job sequences; nullopt when the
/// sequences deadlock. Rows must be valid permutations.
std::optional<long long> jobshop_makespan(const SchedulingInstance& inst,
                                          const std::vector<std::vector<int>>& machines);

}  // namespace cobench
