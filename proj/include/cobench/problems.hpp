#pragma once

// Domain types for the seven studied problems, seeded instance generation
// and benchmark-file readers.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cobench/rng.hpp"

namespace cobench {

enum class ProblemKind { TSP, OP, CVRP, MIS, MVC, PFSP, JSSP };

inline constexpr std::array<ProblemKind, 7> kAllKinds = {
    ProblemKind::TSP, ProblemKind::OP,   ProblemKind::CVRP, ProblemKind::MIS,
    ProblemKind::MVC, ProblemKind::PFSP, ProblemKind::JSSP};

/// Lower-case short name ("tsp", "op", ...).
std::string_view kind_name(ProblemKind kind);
/// Case-insensitive inverse of kind_name. Throws InvalidArgument.
ProblemKind parse_kind(std::string_view name);

enum class Sense { Minimize, Maximize };
Sense sense_of(ProblemKind kind);

bool is_routing(ProblemKind kind);
bool is_graph(ProblemKind kind);
bool is_scheduling(ProblemKind kind);

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// TSP, OP and CVRP share one payload. Generated coordinates are integral;
/// TSPLIB files may carry fractional ones.
struct RoutingInstance {
  std::vector<Point> coords;
  std::optional<std::vector<int>> prizes;   // OP only, prize[depot] == 0
  std::optional<std::vector<int>> demands;  // CVRP only, demand[depot] == 0
  std::optional<int> capacity;              // CVRP only
  std::optional<double> distance_limit;     // OP only
  int depot = 0;

  int size() const { return static_cast<int>(coords.size()); }
  friend bool operator==(const RoutingInstance&, const RoutingInstance&) = default;
};

using Edge = std::pair<int, int>;

/// Undirected simple graph. Edges are stored normalized (first < second)
/// and sorted.
struct GraphInstance {
  int n = 0;
  std::vector<Edge> edges;

  friend bool operator==(const GraphInstance&, const GraphInstance&) = default;
};

/// PFSP: ptimes[j][m] is the time of job j on machine m.
/// JSSP: ptimes[j][o] is the duration of job j's o-th operation, which runs
/// on machine machine_order[j][o].
struct SchedulingInstance {
  int jobs = 0;
  int machines = 0;
  std::vector<std::vector<int>> ptimes;
  std::optional<std::vector<std::vector<int>>> machine_order;

  friend bool operator==(const SchedulingInstance&, const SchedulingInstance&) = default;
};

using Payload = std::variant<RoutingInstance, GraphInstance, SchedulingInstance>;

struct Instance {
  ProblemKind kind = ProblemKind::TSP;
  Payload payload;
  std::string id;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::string> meta;

  // Typed accessors; throw InvalidArgument when the payload does not match.
  const RoutingInstance& routing() const;
  const GraphInstance& graph() const;
  const SchedulingInstance& scheduling() const;

  /// Node count for routing/graph kinds, job count for scheduling kinds.
  int size() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Checks every structural invariant of the instance. Throws InvalidArgument.
void validate(const Instance& inst);

// ---------------------------------------------------------------------------
// Solutions

struct Route {
  std::vector<int> nodes;
  friend bool operator==(const Route&, const Route&) = default;
};
struct RouteSet {
  std::vector<std::vector<int>> routes;
  friend bool operator==(const RouteSet&, const RouteSet&) = default;
};
struct VertexSet {
  std::vector<int> vertices;
  friend bool operator==(const VertexSet&, const VertexSet&) = default;
};
struct JobOrder {
  std::vector<int> jobs;
  friend bool operator==(const JobOrder&, const JobOrder&) = default;
};
/// machines[m] is the job sequence processed on machine m.
struct MachineSchedules {
  std::vector<std::vector<int>> machines;
  friend bool operator==(const MachineSchedules&, const MachineSchedules&) = default;
};

using Solution = std::variant<Route, RouteSet, VertexSet, JobOrder, MachineSchedules>;

/// True when the solution alternative is the one used by `kind`.
bool solution_matches(ProblemKind kind, const Solution& sol);

// ---------------------------------------------------------------------------
// Generation

struct IntRange {
  int lo = 0;
  int hi = 0;
};
struct RealRange {
  double lo = 0.0;
  double hi = 0.0;
};

enum class Distribution { Uniform, GaussianMixture, Clustered, Mixed };
enum class GraphFamily { Any, ErdosRenyi, BarabasiAlbert };

struct GenConfig {
  IntRange size_range{10, 100};  // node count (including depot) for node problems
  IntRange jobs_range{5, 20};
  IntRange machines_range{5, 20};
  Distribution distribution = Distribution::Uniform;
  int gm_clusters = 2;  // c
  int gm_scale = 5;     // l
  std::uint64_t seed = 0;
  GraphFamily graph_family = GraphFamily::Any;
  RealRange er_p{0.1, 0.4};
  IntRange ba_m{1, 4};
  std::optional<int> capacity;  // CVRP override
};

/// Deterministic for a given (kind, cfg). Throws InvalidArgument on a bad cfg.
Instance gen_instance(ProblemKind kind, const GenConfig& cfg);

inline constexpr int kCoordMin = 1;
inline constexpr int kCoordMax = 1000;
inline constexpr int kClusterCount = 7;
inline constexpr double kClusterSigma = 0.1;  // in unit-square coordinates

struct ClusteredSample {
  std::vector<Point> points;     // integral, in [1,1000]^2
  std::vector<Point> centroids;  // scaled to [1,1000]^2, not rounded
};

/// Seven centroids in the unit square, normal offsets with sigma 0.1,
/// clamped and scaled to [1,1000]^2.
ClusteredSample sample_clustered(int count, Rng& rng);

/// Repo convention: max(30, round(mean(customer demand) * customers / 4)).
int default_capacity(std::span<const int> demands, int depot = 0);

// ---------------------------------------------------------------------------
// Geometry

double euclid(std::span<const Point> coords, int i, int j);

/// Length of the closed nearest-neighbor tour starting at `start`;
/// ties go to the lower node id.
double nearest_neighbor_tour_length(std::span<const Point> coords, int start = 0);

/// u * L_T where L_T is the nearest-neighbor tour length from the depot.
double distance_limit_for_fraction(const RoutingInstance& inst, double u);

/// Samples u uniformly in [0.5, 0.7] and returns u * L_T.
double op_distance_limit(const RoutingInstance& inst, Rng& rng);

// ---------------------------------------------------------------------------
// Benchmark files

/// TSPLIB subset: symmetric EUC_2D with NODE_COORD_SECTION, 2..1000 nodes.
Instance parse_tsplib(std::string_view text);
std::string write_tsplib(const Instance& inst);

/// Taillard job-shop layout: "J M [seeds/bounds]" header, a Times block and
/// a Machines block. Machine ids are normalized to 0-based.
Instance parse_taillard(std::string_view text);
std::string write_taillard(const Instance& inst);

}  // namespace cobench
